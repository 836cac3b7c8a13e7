"""Extended exponents, l_r membership and reverse-Hoelder witnesses.

Exponents live in (0, inf]: finite values are Fractions, infinity is
``math.inf``.  Membership of the family u_j = C 2^(t j) (1+j)^beta ln(e+j)^gamma
in l_r follows the Bertrand hierarchy (geometric rate, then power of j, then
one power of log); for finite prefixes nothing is claimed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from ._exact import Exact, as_extended, fmt, from_recip, is_inf, positive_part, recip
from .seqcore import ParamSequence, SampledSequence


class InvalidQuery(ValueError):
    """A precondition on the inputs failed; the message names the inequality."""


def lr_index(r) -> Exact:
    """Validate and normalise an exponent in (0, inf]."""
    if type(r) is not Fraction:
        r = as_extended(r)
    if not is_inf(r) and r <= 0:
        raise InvalidQuery(f"exponent must satisfy 0 < r, got r = {fmt(r)}")
    return r


def conjugate(r) -> Exact:
    """r' with 1/r' = (1 - 1/r)_+, so every r <= 1 maps to infinity."""
    r = lr_index(r)
    return from_recip(positive_part(1 - recip(r)))


def b_minus_p(p, q) -> Exact:
    """pq/(q-p), read as p when q = inf.  Requires q > p."""
    p, q = lr_index(p), lr_index(q)
    if not q > p:
        raise InvalidQuery(f"need q > p, got p = {fmt(p)}, q = {fmt(q)}")
    if is_inf(q):
        return p
    return from_recip(recip(p) - recip(q))


def b_minus_2(q) -> Exact:
    """2q/(q-2), read as 2 when q = inf.  Requires q > 2."""
    return b_minus_p(Fraction(2), q)


def qstar(q1, q2) -> Exact:
    """q* with 1/q* = (1/q2 - 1/q1)_+; infinite whenever q2 >= q1."""
    q1, q2 = lr_index(q1), lr_index(q2)
    return from_recip(positive_part(recip(q2) - recip(q1)))


def interp_index(kind: str, *args) -> Exact:
    """Dispatch on ``"BminusP"`` (p, q), ``"Bminus2"`` (q) or ``"qstar"`` (q1, q2)."""
    table = {"BminusP": b_minus_p, "Bminus2": b_minus_2, "qstar": qstar}
    try:
        fn = table[kind]
    except KeyError:
        raise InvalidQuery(f"unknown index kind {kind!r}") from None
    return fn(*args)


class Membership(enum.Enum):
    MEMBER = "Member"
    NOT_MEMBER = "NotMember"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class MembershipVerdict:
    status: Membership
    reason: str
    partial_sums: Optional[tuple] = None

    @property
    def is_member(self) -> bool:
        return self.status is Membership.MEMBER


def _family_member(t: Fraction, beta: Fraction, gamma: Fraction, r: Exact) -> tuple[bool, str]:
    if t != 0:
        return t < 0, "geometric rate 2^(%s j) decides" % fmt(t)
    if is_inf(r):
        if beta != 0:
            return beta < 0, "bounded iff power of (1+j) is <= 0: beta = %s" % fmt(beta)
        return gamma <= 0, "bounded iff log power <= 0: gamma = %s" % fmt(gamma)
    br, gr = beta * r, gamma * r
    if br != -1:
        return br < -1, "sum (1+j)^(%s) converges iff beta*r < -1" % fmt(br)
    return gr < -1, "beta*r = -1, sum ln(e+j)^(%s)/(1+j) converges iff gamma*r < -1" % fmt(gr)


def lr_membership(u, r) -> MembershipVerdict:
    """Decide u in l_r exactly for the parametric family.

    Sampled prefixes are delegated to :func:`lr_membership_sampled` over
    their whole length and are always inconclusive.
    """
    r = lr_index(r)
    if isinstance(u, SampledSequence):
        return lr_membership_sampled(u, r, len(u) - 1)
    member, why = _family_member(u.s, u.b, u.c, r)
    status = Membership.MEMBER if member else Membership.NOT_MEMBER
    return MembershipVerdict(status, f"l_{fmt(r)}: {why}")


def lr_membership_sampled(u: SampledSequence, r, budget: int) -> MembershipVerdict:
    """Partial-sum trace of u^r (running sup when r = inf) up to ``budget``.

    Finite data never settles membership, so the status is always
    ``Inconclusive``.
    """
    r = lr_index(r)
    if budget < 0 or budget >= len(u):
        raise InvalidQuery(f"need 0 <= budget <= J - 1 = {len(u) - 1}, got budget = {budget}")
    logs = np.asarray(u.log_values[: budget + 1])
    with np.errstate(over="ignore"):
        if is_inf(r):
            trace = np.exp(np.maximum.accumulate(logs))
            what = "running sup"
        else:
            trace = np.exp(np.logaddexp.accumulate(float(r) * logs))
            what = f"partial sums of u^{fmt(r)}"
    return MembershipVerdict(
        Membership.INCONCLUSIVE,
        f"finite prefix of {budget + 1} terms; {what} reported, no verdict",
        tuple(float(x) for x in trace),
    )


@dataclass
class HolderWitness:
    """A prefix of b in l_r with sum_j |a_j| b_j growing along a doubling schedule.

    ``table`` rows are ``(K, S_K, ||b_{<=K}||_r)``; ``log_table`` keeps the
    natural logs of S_K so that overflowing sums stay comparable.
    ``norm_bound`` is an a-priori bound on the full ||b||_r.
    """

    r: Exact
    b: np.ndarray = field(repr=False)
    log_b: np.ndarray = field(repr=False)
    table: list
    log_table: list
    norm_bound: float
    construction: str

    @property
    def increasing(self) -> bool:
        logs = [row[1] for row in self.log_table]
        return all(y > x for x, y in zip(logs, logs[1:]))

    def growth_ratios(self) -> list[float]:
        logs = [row[1] for row in self.log_table]
        return [math.exp(y - x) for x, y in zip(logs, logs[1:])]


def _spike_witness(la: np.ndarray, r: Fraction) -> tuple[np.ndarray, float]:
    # 0 < r <= 1: pick j_l > j_{l-1} with a_{j_l} >= l^(1/r + 1), put l^(-1/r - 1) there.
    # Off the spikes a filler (1+j)^(-2/r) keeps every partial sum strictly increasing.
    rf = float(r)
    expo = 1 / rf + 1
    lb = -2 / rf * np.log1p(np.arange(len(la), dtype=float))
    l = 1
    for j in range(len(la)):
        if la[j] >= expo * math.log(l):
            lb[j] = -expo * math.log(l)
            l += 1
    # spikes: sum_l l^(-(1 + r)) <= zeta(1 + r) <= 1 + 1/r; filler: sum (1+j)^-2 = pi^2/6
    bound = (1 + 1 / rf + math.pi**2 / 6) ** (1 / rf)
    return lb, bound


def _block_witness(a, r: Fraction, K: int) -> tuple[np.ndarray, float]:
    # 1 < r < inf: on dyadic blocks D_m = {j : 2^m <= j+1 < 2^(m+1)} use the
    # Hoelder extremiser |a_j|^(r'-1), weighted so that
    # ||b|D_m||_r^r = c_m / T_m^(1+eps) with c_m = ||a|D_m||_{r'}^{r'}, T_m = sum_{i<=m} c_i.
    rf = float(r)
    rc = rf / (rf - 1)
    eps = (rf - 1) / 2
    m_top = int(math.floor(math.log2(K + 1)))
    jmax = 2 ** (m_top + 1) - 1
    la = np.asarray(a.log(np.arange(jmax)), dtype=float)
    lb = np.empty(jmax)
    log_T = -np.inf
    log_c0 = None
    for m in range(m_top + 1):
        lo, hi = 2**m - 1, 2 ** (m + 1) - 1
        seg = la[lo:hi]
        log_c = np.logaddexp.reduce(rc * seg)
        if log_c0 is None:
            log_c0 = log_c
        log_T = np.logaddexp(log_T, log_c)
        log_w = (log_c - (1 + eps) * log_T) / rf
        lb[lo:hi] = log_w + (rc - 1) * (seg - log_c / rc)
    # sum_m c_m / T_m^(1+eps) <= T_0^(-eps) (1 + 1/eps)
    bound = math.exp((-eps * log_c0 + math.log1p(1 / eps)) / rf)
    return lb[: K + 1], bound


def reverse_holder_witness(a, r, K: int, doublings: int = 2) -> HolderWitness:
    """Build b in l_r with sum |a_j| b_j unbounded, for a not in l_{r'}.

    The prefix has length ``K * 2**doublings + 1`` and the growth table is
    reported at K, 2K, ..., K * 2**doublings.  Growth over a finite schedule
    is evidence of divergence, not a proof.
    """
    r = lr_index(r)
    rc = conjugate(r)
    if not isinstance(a, ParamSequence):
        raise InvalidQuery("witness needs a parametric sequence; sampled membership is inconclusive")
    verdict = lr_membership(a, rc)
    if verdict.status is not Membership.NOT_MEMBER:
        raise InvalidQuery(f"need a not in l_{fmt(rc)}, but the verdict is {verdict.status.value}")
    if K < 1:
        raise InvalidQuery(f"need K >= 1, got K = {K}")
    top = K * 2**doublings
    la = np.asarray(a.log(np.arange(top + 1)), dtype=float)
    if is_inf(r):
        lb = np.zeros(top + 1)
        bound, how = 1.0, "b_j = 1 for all j"
    elif r <= 1:
        lb, bound = _spike_witness(la, r)
        how = "spikes l^(-1/r-1) at indices where a_j >= l^(1/r+1), filler (1+j)^(-2/r) elsewhere"
    else:
        lb, bound = _block_witness(a, r, top)
        how = "dyadic-block Hoelder extremiser with T_m^(-(1+eps)/r) weights"
    log_terms = la + lb
    log_S = np.logaddexp.accumulate(log_terms)
    with np.errstate(over="ignore", divide="ignore"):
        b = np.exp(lb)
        if is_inf(r):
            norms = np.ones(top + 1)
        else:
            norms = np.exp(np.logaddexp.accumulate(float(r) * lb) / float(r))
    table, log_table = [], []
    for i in range(doublings + 1):
        k = K * 2**i
        table.append((k, float(np.exp(log_S[k])) if log_S[k] < 700 else math.inf, float(norms[k])))
        log_table.append((k, float(log_S[k])))
    return HolderWitness(r, b, lb, table, log_table, bound, how)
