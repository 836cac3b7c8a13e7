"""Decide when B and F spaces of generalised smoothness consist of regular distributions."""

from ._exact import INF
from .decide import (
    GEOMETRIC_N,
    InvalidSpec,
    RegularityVerdict,
    SpaceSpec,
    atom_requirements,
    bf_sandwich,
    bfb_sharp,
    classical_regularity,
    embedding_B,
    embedding_F,
    embeds_in_target,
    regularity,
    regularity_B,
    regularity_F,
)
from .grammar import SequenceSyntaxError, format_sequence, parse_sequence
from .lr import InvalidQuery, Membership, conjugate, interp_index, lr_membership, reverse_holder_witness
from .seqcore import ParamSequence, SampledSequence, admissibility_bounds, boyd_indices, kappa0, kappa1
from .standardize import build_map, lr_transfer_check

__all__ = [
    "GEOMETRIC_N",
    "INF",
    "InvalidQuery",
    "InvalidSpec",
    "Membership",
    "ParamSequence",
    "RegularityVerdict",
    "SampledSequence",
    "SequenceSyntaxError",
    "SpaceSpec",
    "admissibility_bounds",
    "atom_requirements",
    "bf_sandwich",
    "bfb_sharp",
    "boyd_indices",
    "build_map",
    "classical_regularity",
    "conjugate",
    "embedding_B",
    "embedding_F",
    "embeds_in_target",
    "format_sequence",
    "interp_index",
    "kappa0",
    "kappa1",
    "lr_membership",
    "lr_transfer_check",
    "parse_sequence",
    "regularity",
    "regularity_B",
    "regularity_F",
    "reverse_holder_witness",
]
