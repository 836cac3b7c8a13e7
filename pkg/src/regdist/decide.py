"""Decision tables for B^{sigma,N}_{p,q} and F^{sigma,N}_{p,q} inside L_1^loc.

Every table works on exact exponents.  The regular-distribution verdicts are
characterisations (necessary and sufficient); the embedding helpers are
sufficient conditions only and never answer "no".
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from fractions import Fraction
from typing import Optional

from ._exact import INF, Exact, as_fraction, fmt, is_inf, positive_part, recip
from .grammar import format_sequence
from .lr import (
    InvalidQuery,
    MembershipVerdict,
    b_minus_2,
    b_minus_p,
    conjugate,
    lr_index,
    lr_membership,
    qstar,
)
from .seqcore import ParamSequence, assumption_N_check, boyd_indices

GEOMETRIC_N = ParamSequence(1, 1, 0, 0)


class InvalidSpec(InvalidQuery):
    """A SpaceSpec invariant does not hold."""


def _family(family: str) -> str:
    fam = str(family).upper()
    if fam not in ("B", "F"):
        raise InvalidSpec(f"family must be B or F, got {family!r}")
    return fam


@dataclass(frozen=True)
class SpaceSpec:
    """The query object (family, n, p, q, sigma, N)."""

    family: str
    n: int
    p: Exact
    q: Exact
    sigma: ParamSequence
    N: ParamSequence = GEOMETRIC_N

    def __post_init__(self):
        fam = _family(self.family)
        object.__setattr__(self, "family", fam)
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise InvalidSpec(f"dimension n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", lr_index(self.p))
        object.__setattr__(self, "q", lr_index(self.q))
        if fam == "F" and is_inf(self.p):
            raise InvalidSpec("F requires p < inf")
        if not isinstance(self.sigma, ParamSequence) or not isinstance(self.N, ParamSequence):
            raise InvalidSpec("sigma and N must be parametric sequences")
        rep = assumption_N_check(self.N)
        if not rep.satisfies_assumption_N:
            raise InvalidSpec(
                f"N violates the Assumption on N: lambda0 = {rep.lambda0:.6g} is not > 1"
            )

    def with_q(self, q) -> "SpaceSpec":
        return replace(self, q=q)

    def as_family(self, family: str) -> "SpaceSpec":
        return replace(self, family=family)


@dataclass(frozen=True)
class RegularityVerdict:
    contained: bool
    case_id: str
    tested_sequence: ParamSequence
    tested_index: Exact
    membership: MembershipVerdict
    spec: SpaceSpec = field(repr=False, compare=False)

    @cached_property
    def explanation(self) -> str:
        return _explain(self.case_id, self.spec, self.tested_sequence, self.tested_index, self.membership)

    def to_dict(self, spec: Optional[SpaceSpec] = None) -> dict:
        spec = self.spec if spec is None else spec
        seq = self.tested_sequence
        return {
            "family": spec.family,
            "n": spec.n,
            "p": fmt(spec.p),
            "q": fmt(spec.q),
            "sigma": format_sequence(spec.sigma),
            "N": format_sequence(spec.N),
            "case_id": self.case_id,
            "condition": {"s": fmt(seq.s), "b": fmt(seq.b), "c": fmt(seq.c), "C": fmt(seq.C)},
            "index_r": fmt(self.tested_index),
            "contained": "yes" if self.contained else "no",
            "explanation": self.explanation,
        }


@dataclass(frozen=True)
class EmbeddingVerdict:
    holds: str  # "yes" | "unknown"
    condition: ParamSequence
    index: Exact
    membership: MembershipVerdict
    sufficient_only: bool = True


def classical_regularity(family: str, s, p, q, n: int) -> bool:
    """The classical table for B^s_{p,q} and F^s_{p,q} inside L_1^loc."""
    fam = _family(family)
    s, p, q = as_fraction(s), lr_index(p), lr_index(q)
    if fam == "F":
        if is_inf(p):
            raise InvalidSpec("F requires p < inf")
        if p < 1:
            return s >= n * (1 / p - 1)
        return s > 0 or (s == 0 and q <= 2)
    crit = n * positive_part(recip(p) - 1)
    if s > crit:
        return True
    if p <= 1 and s == n * (1 / p - 1) and q <= 1:
        return True
    return p > 1 and s == 0 and q <= min(p, Fraction(2))


def _low_p_sequence(spec: SpaceSpec) -> ParamSequence:
    # sigma_j^{-1} N_j^{n(1/p - 1)}
    return spec.sigma.inverse() * spec.N ** (spec.n * (recip(spec.p) - 1))


def case_id(spec: SpaceSpec) -> str:
    p, q = spec.p, spec.q
    if spec.family == "B":
        if p <= 1:
            return "B1"
        if q <= min(p, Fraction(2)):
            return "B2"
        return "B3" if p <= 2 else "B4"
    if p < 1:
        return "F1"
    return "F2" if q <= 2 else "F3"


def _case_condition(spec: SpaceSpec) -> tuple[str, ParamSequence, Exact]:
    cid = case_id(spec)
    if cid == "B1":
        return cid, _low_p_sequence(spec), conjugate(spec.q)
    if cid == "F1":
        return cid, _low_p_sequence(spec), INF
    inv = spec.sigma.inverse()
    if cid in ("B2", "F2"):
        return cid, inv, INF
    if cid == "B3":
        return cid, inv, b_minus_p(spec.p, spec.q)
    return cid, inv, b_minus_2(spec.q)


_CASE_TEXT = {
    "B1": "0<p<=1: (sigma_j^-1 N_j^(n(1/p-1))) in l_q'",
    "B2": "1<p<=inf, q<=min(p,2): (sigma_j^-1) in l_inf",
    "B3": "1<p<=2, q>p: (sigma_j^-1) in l_(pq/(q-p))",
    "B4": "2<p<=inf, q>2: (sigma_j^-1) in l_(2q/(q-2))",
    "F1": "0<p<1: (sigma_j^-1 N_j^(n(1/p-1))) in l_inf",
    "F2": "1<=p<inf, q<=2: (sigma_j^-1) in l_inf",
    "F3": "1<=p<inf, q>2: (sigma_j^-1) in l_(2q/(q-2))",
}

_THRESHOLD_TEXT = {"B1": "(q-1)/q", "B3": "(q-p)/(pq)", "B4": "(q-2)/(2q)", "F3": "(q-2)/(2q)"}


def _explain(cid: str, spec: SpaceSpec, cond: ParamSequence, r: Exact, mv: MembershipVerdict) -> str:
    parts = [f"case {cid}: {_CASE_TEXT[cid]}", f"condition {format_sequence(cond)} in l_{fmt(r)}"]
    # threshold form when the rate is critical, N is dyadic and no log factor is present
    if cond.s == 0 and spec.N.exponents == (1, 0, 0) and spec.sigma.c == 0 and cid in _THRESHOLD_TEXT:
        if not is_inf(r):
            thr = recip(r)
            parts.append(f"contained iff b > {_THRESHOLD_TEXT[cid]} = {fmt(thr)} (b = {fmt(spec.sigma.b)})")
    parts.append(mv.reason)
    return "; ".join(parts)


def _verdict(spec: SpaceSpec) -> RegularityVerdict:
    cid, cond, r = _case_condition(spec)
    mv = lr_membership(cond, r)
    return RegularityVerdict(mv.is_member, cid, cond, r, mv, spec)


def regularity_B(spec: SpaceSpec) -> RegularityVerdict:
    """Characterise B^{sigma,N}_{p,q} inside L_1^loc."""
    if spec.family != "B":
        raise InvalidSpec("regularity_B needs a B spec")
    return _verdict(spec)


def regularity_F(spec: SpaceSpec) -> RegularityVerdict:
    """Characterise F^{sigma,N}_{p,q} inside L_1^loc (p < inf)."""
    if spec.family != "F":
        raise InvalidSpec("regularity_F needs an F spec")
    return _verdict(spec)


def regularity(spec: SpaceSpec) -> RegularityVerdict:
    return _verdict(spec)


def embedding_B(sigma, tau, N, p1, p2, q1, q2, n: int = 1) -> EmbeddingVerdict:
    """Sufficient condition for B^{sigma,N}_{p1,q1} -> B^{tau,N}_{p2,q2}."""
    p1, p2 = lr_index(p1), lr_index(p2)
    if p1 > p2:
        raise InvalidQuery(f"need p1 <= p2, got p1 = {fmt(p1)}, p2 = {fmt(p2)}")
    cond = sigma.inverse() * tau * N ** (n * (recip(p1) - recip(p2)))
    r = qstar(q1, q2)
    mv = lr_membership(cond, r)
    return EmbeddingVerdict("yes" if mv.is_member else "unknown", cond, r, mv)


def embedding_F(sigma, tau, N, p, q1, q2) -> EmbeddingVerdict:
    """Sufficient condition for F^{sigma,N}_{p,q1} -> F^{tau,N}_{p,q2}."""
    p = lr_index(p)
    if is_inf(p):
        raise InvalidQuery("F requires p < inf")
    cond = sigma.inverse() * tau
    r = qstar(q1, q2)
    mv = lr_membership(cond, r)
    return EmbeddingVerdict("yes" if mv.is_member else "unknown", cond, r, mv)


def besov_lebesgue_condition(spec: SpaceSpec) -> MembershipVerdict:
    """(sigma_j^-1 N_j^(n(1/p-1)_+)) in l_q', sufficient for B -> L_max{1,p}."""
    cond = spec.sigma.inverse() * spec.N ** (spec.n * positive_part(recip(spec.p) - 1))
    return lr_membership(cond, conjugate(spec.q))


def triebel_local_condition(spec: SpaceSpec) -> tuple[MembershipVerdict, Optional[Fraction]]:
    """Sufficient condition for F^{sigma,N}_{p,q} inside L_1^loc.

    For p >= 1 it asks for some delta > 0 with (sigma_j^-1 N_j^delta) in l_p'.
    Membership only gets harder as delta grows, so within the family a
    witness exists iff one exists for arbitrarily small delta; the returned
    delta is such a witness (or None).
    """
    p = spec.p
    if p < 1:
        cond = _low_p_sequence(spec)
        return lr_membership(cond, INF), None
    rc = conjugate(p)
    if spec.sigma.s > 0:
        delta = spec.sigma.s / (2 * spec.N.s)
        mv = lr_membership(spec.sigma.inverse() * spec.N**delta, rc)
        return mv, delta
    # any delta > 0 leaves a nonnegative geometric rate
    delta = Fraction(1, 10**6)
    mv = lr_membership(spec.sigma.inverse() * spec.N**delta, rc)
    return mv, (delta if mv.is_member else None)


@dataclass(frozen=True)
class TargetVerdict:
    target: str
    holds: bool
    verdict: RegularityVerdict


def embeds_in_target(spec: SpaceSpec) -> TargetVerdict:
    """Name the space that L_1^loc-containment upgrades to, and whether it holds.

    bmo for B with p = inf, h1 for p <= 1, otherwise L_max{1,p}.  The labels
    are opaque; the answer is the regularity verdict itself.
    """
    v = _verdict(spec)
    if spec.family == "B" and is_inf(spec.p):
        target = "bmo"
    elif spec.p <= 1:
        target = "h1"
    else:
        target = f"L_{fmt(max(Fraction(1), spec.p))}"
    return TargetVerdict(target, v.contained, v)


def bf_sandwich(spec: SpaceSpec) -> tuple[SpaceSpec, SpaceSpec]:
    """(B_{p,min(p,q)}, B_{p,max(p,q)}) around an F spec."""
    if spec.family != "F":
        raise InvalidSpec("bf_sandwich needs an F spec")
    b = spec.as_family("B")
    return b.with_q(min(spec.p, spec.q)), b.with_q(max(spec.p, spec.q))


@dataclass(frozen=True)
class BFBResult:
    holds: bool
    sigma_prime: ParamSequence
    sigma_double_prime: ParamSequence


def bfb_sharp(p1, p, p2, u, v, sigma: ParamSequence, N: ParamSequence, n: int = 1) -> BFBResult:
    """B^{sigma',N}_{p1,u} -> F^{sigma,N}_{p,q} -> B^{sigma'',N}_{p2,v} iff u <= p <= v."""
    p1, p, p2, u, v = (lr_index(x) for x in (p1, p, p2, u, v))
    if not (p1 < p < p2):
        raise InvalidQuery(f"need 0 < p1 < p < p2 <= inf, got {fmt(p1)}, {fmt(p)}, {fmt(p2)}")
    if is_inf(p):
        raise InvalidQuery("F requires p < inf")
    s1 = N ** (n * (recip(p1) - recip(p))) * sigma
    s2 = N ** (n * (recip(p2) - recip(p))) * sigma
    return BFBResult(u <= p <= v, s1, s2)


@dataclass(frozen=True)
class AtomRequirements:
    M_min: int
    L_min: int
    M_bound: Fraction
    L_bound: Fraction

    @property
    def moment_conditions(self) -> bool:
        return self.L_min >= 0


def atom_requirements(sigma: ParamSequence, N: ParamSequence, p, q, family: str, n: int = 1) -> AtomRequirements:
    """Smallest smoothness order M and moment order L for N-atoms.

    M > alpha_sigma/beta_N and
    L > -1 + n(alpha_N/beta_N / min(1, p[, q]) - 1) - beta_sigma/beta_N,
    with q entering only for F.  L = -1 means no moment conditions.
    """
    fam = _family(family)
    p, q = lr_index(p), lr_index(q)
    bs, bn = boyd_indices(sigma), boyd_indices(N)
    if not bn.beta > 0:
        raise InvalidQuery(f"need beta_N > 0, got {fmt(bn.beta)}")
    floor_ = min(Fraction(1), p, q) if fam == "F" else min(Fraction(1), p)
    M_bound = Fraction(bs.alpha) / bn.beta
    L_bound = -1 + n * (Fraction(bn.alpha) / bn.beta / floor_ - 1) - Fraction(bs.beta) / bn.beta
    M_min = max(0, M_bound.__floor__() + 1)
    L_min = max(-1, L_bound.__floor__() + 1)
    return AtomRequirements(M_min, L_min, M_bound, L_bound)
