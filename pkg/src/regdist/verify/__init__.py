"""Numerical evidence for the necessity arguments (all one-dimensional)."""

from .basic import BasicFunction, MomentSystemError, build_basic_function
from .case3 import Case3Report, case3_series
from .extremal import (
    ExtremalReport,
    GridTooCoarse,
    doubling_schedule,
    extremal_integral,
    extremal_series,
    passage,
    witness_series,
)
from .lacunary import LacunaryReport, lacunary_L1

__all__ = [
    "BasicFunction",
    "Case3Report",
    "ExtremalReport",
    "GridTooCoarse",
    "LacunaryReport",
    "MomentSystemError",
    "build_basic_function",
    "case3_series",
    "doubling_schedule",
    "extremal_integral",
    "extremal_series",
    "lacunary_L1",
    "passage",
    "witness_series",
]
