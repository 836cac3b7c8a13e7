"""Extremal series and the passage decomposition of the extremal function.

The series is S_K = sum_{m=1..K} |rho_m| sigma_m^-1 N_m^(n(1/p-1)).  When the
decision table says "not contained", a reverse-Hoelder witness rho in l_q
makes S_K grow; the growth is reported along a doubling schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .._exact import fmt, from_recip, recip
from ..decide import SpaceSpec, regularity, regularity_B
from ..lr import InvalidQuery, lr_index, lr_membership, reverse_holder_witness
from ..seqcore import ParamSequence, SampledSequence, assumption_N_check
from .basic import BasicFunction


class GridTooCoarse(ValueError):
    def __init__(self, required: int, given: int):
        self.required = required
        super().__init__(f"grid of {given} cells cannot resolve the smallest passage; need at least {required}")


@dataclass
class ExtremalReport:
    partial_sums: list  # (K, S_K)
    passage_integrals: Optional[list] = None  # (m, I_m)
    verdict_evidence: list = field(default_factory=list)  # (K, S_2K / S_K)
    log_partial_sums: list = field(default_factory=list, repr=False)  # (K, ln S_K)
    lower_bounds: Optional[list] = None  # (m, C2 * sum_{j<=m} coef_j * |P_m|)
    total_integral: Optional[float] = None
    total_lower_bound: Optional[float] = None
    witness: str = ""

    @property
    def monotone(self) -> bool:
        logs = [v for _, v in self.log_partial_sums]
        return all(b >= a for a, b in zip(logs, logs[1:]))

    def growth_ratios(self) -> list:
        return [g for _, g in self.verdict_evidence]

    def increments(self) -> list:
        """|S_2K - S_K| along the schedule."""
        s = [v for _, v in self.partial_sums]
        return [b - a for a, b in zip(s, s[1:])]


def doubling_schedule(K_min: int, K_max: int) -> list:
    out, k = [], K_min
    while k <= K_max:
        out.append(k)
        k *= 2
    return out


def _log_abs(rho, top: int) -> np.ndarray:
    if isinstance(rho, ParamSequence):
        return np.asarray(rho.log(np.arange(top + 1)), dtype=float)
    if isinstance(rho, SampledSequence):
        arr = np.asarray(rho.log_values, dtype=float)
    else:
        with np.errstate(divide="ignore"):
            arr = np.log(np.abs(np.asarray(rho, dtype=float)))
    if len(arr) < top + 1:
        raise InvalidQuery(f"rho has {len(arr)} terms, need {top + 1}")
    return arr[: top + 1]


def _condition_log(sigma: ParamSequence, N: ParamSequence, p, n: int, top: int) -> np.ndarray:
    j = np.arange(top + 1)
    expo = n * float(recip(p) - 1)
    return -np.asarray(sigma.log(j), dtype=float) + expo * np.asarray(N.log(j), dtype=float)


def _ratio(log_a: float, log_b: float) -> float:
    if log_a == -math.inf:
        return 1.0 if log_b == -math.inf else math.inf
    d = log_b - log_a
    return math.exp(d) if d < 700 else math.inf


def _report(log_terms: np.ndarray, schedule: list, how: str) -> ExtremalReport:
    # summation starts at m = 1
    log_terms = log_terms.copy()
    log_terms[0] = -math.inf
    log_S = np.logaddexp.accumulate(log_terms)
    logs = [(k, float(log_S[k])) for k in schedule]
    sums = [(k, math.exp(v) if v < 700 else math.inf) for k, v in logs]
    growth = [(a[0], _ratio(a[1], b[1])) for a, b in zip(logs, logs[1:])]
    return ExtremalReport(sums, verdict_evidence=growth, log_partial_sums=logs, witness=how)


def extremal_series(
    sigma: ParamSequence,
    N: ParamSequence,
    p,
    n: int,
    rho=None,
    K: int = 2**14,
    q=None,
    K_min: int = 16,
) -> ExtremalReport:
    """Partial sums of sum_m |rho_m| sigma_m^-1 N_m^(n(1/p-1)) on K_min, 2 K_min, ..., K.

    With ``rho=None`` the witness is built from the reverse-Hoelder
    construction for the condition sequence in l_q; this needs ``q`` and a
    spec outside L1_loc for the B scale with p <= 1.
    """
    p = lr_index(p)
    schedule = doubling_schedule(K_min, K)
    la = _condition_log(sigma, N, p, n, schedule[-1])
    if rho is None:
        if q is None:
            raise InvalidQuery("automatic witness needs q")
        q = lr_index(q)
        if recip(p) < 1:
            raise InvalidQuery("the series witness covers p <= 1; use witness_series for p > 1")
        verdict = regularity_B(SpaceSpec("B", n, p, q, sigma, N))
        if verdict.contained:
            raise InvalidQuery("spec is contained in L1_loc; no divergent witness exists")
        cond = sigma.inverse() * N ** (n * (recip(p) - 1))
        w = reverse_holder_witness(cond, q, K_min, doublings=len(schedule) - 1)
        return _report(la + w.log_b, schedule, w.construction)
    if isinstance(rho, ParamSequence) and q is not None:
        if not lr_membership(rho, q).is_member:
            raise InvalidQuery(f"rho is not in l_{fmt(lr_index(q))}")
    return _report(la + _log_abs(rho, schedule[-1]), schedule, "user-supplied rho")


def witness_series(spec: SpaceSpec, K: int = 2**14, K_min: int = 16) -> ExtremalReport:
    """Growth of the series that drives necessity, for any "not contained" spec.

    B1 (and F1/F2 through the smaller B space): sum rho_m sigma_m^-1 N_m^(n(1/p-1)), rho in l_q.
    B2/B3: sum beta_m sigma_m^-1, beta in l_r with 1/r = 1 - 1/p + 1/q.
    B4 and F3: sum beta_m sigma_m^-2, beta in l_(q/2).
    """
    verdict = regularity(spec)
    if verdict.contained:
        raise InvalidQuery("spec is contained in L1_loc; no divergent witness exists")
    case = verdict.case_id
    p, q, n, sigma, N = spec.p, spec.q, spec.n, spec.sigma, spec.N
    if case in ("F1", "F2"):
        q = min(p, q)
        case = "B1" if recip(p) >= 1 else "B2"
    schedule = doubling_schedule(K_min, K)
    top = schedule[-1]
    if case == "B1":
        cond = sigma.inverse() * N ** (n * (recip(p) - 1))
        r = q
    elif case in ("B2", "B3"):
        cond = sigma.inverse()
        r = from_recip(1 - recip(p) + recip(q))
    else:  # B4, F3
        cond = sigma.inverse() ** 2
        r = from_recip(recip(q) * 2)
    w = reverse_holder_witness(cond, r, K_min, doublings=len(schedule) - 1)
    la = np.asarray(cond.log(np.arange(top + 1)), dtype=float)
    rep = _report(la + w.log_b, schedule, f"{case}: {w.construction}, b in l_{fmt(r)}")
    return rep


def passage(phi: BasicFunction, N_m: float) -> tuple:
    """(inner, outer) radii of P_m = {C3/(lambda0 N_m) <= |x| <= C1/N_m}."""
    return phi.C3 / (phi.lambda0 * N_m), phi.C1 / N_m


def extremal_integral(
    phi: BasicFunction,
    sigma: ParamSequence,
    N: ParamSequence,
    p,
    rho,
    K: int,
    points: int = 256,
    grid: int = 2**16,
) -> ExtremalReport:
    """Integrate f(x) = sum_{j<=K} |rho_j| sigma_j^-1 N_j^(1/p) Phi(N_j x) over each passage (n = 1).

    Checks, for m = 1..K, that Phi(N_j x) vanishes on P_m when j > m, that
    the passages are nonempty and pairwise disjoint, and that
    I_m >= C2 * sum_{j<=m} coef_j * |P_m|.  The union of the passages is
    also integrated on a uniform midpoint grid of ``grid`` cells over
    [0, C1/N_1] and compared with 2 (C1 - C3/lambda0) C2 * S_K.
    """
    p = lr_index(p)
    lamN = assumption_N_check(N).lambda0
    if phi.lambda0 > lamN * (1 + 1e-12):
        raise InvalidQuery(f"Phi built for lambda0 = {phi.lambda0:g} > lambda0(N) = {lamN:g}")
    if not phi.C3 / phi.lambda0 < phi.C1 < phi.C3:
        raise InvalidQuery("need C3/lambda0 < C1 < C3")
    j = np.arange(1, K + 1)
    Nj = np.exp(np.asarray(N.log(j), dtype=float))
    coef = np.exp(_log_abs(rho, K)[1:] - np.asarray(sigma.log(j), dtype=float) + float(recip(p)) * np.log(Nj))
    passages = [passage(phi, v) for v in Nj]
    for m in range(K - 1):
        # P_{m+1} lies strictly inside the inner radius of P_m
        if not passages[m + 1][1] < passages[m][0]:
            raise AssertionError(f"passages {m + 1} and {m + 2} overlap")
    rows, bounds = [], []
    for m in range(1, K + 1):
        lo, hi = passages[m - 1]
        h = (hi - lo) / points
        x = lo + h * (np.arange(points) + 0.5)
        vals = phi(np.outer(Nj, x))  # (K, points)
        if np.any(vals[m:] != 0):
            raise AssertionError(f"Phi(N_j x) is nonzero on P_{m} for some j > {m}")
        if np.any(vals[:m] < phi.C2 - 1e-12):
            raise AssertionError(f"Phi(N_j x) < C2 on P_{m} for some j <= {m}")
        f = coef[:m] @ vals[:m]
        I_m = 2 * float(np.sum(np.abs(f))) * h
        lb = phi.C2 * float(coef[:m].sum()) * 2 * (hi - lo)
        if I_m < lb * (1 - 1e-12):
            raise AssertionError(f"I_{m} = {I_m:.6g} below the lower bound {lb:.6g}")
        rows.append((m, I_m))
        bounds.append((m, lb))
    # uniform grid over [0, C1/N_1], restricted to the union of passages
    top = phi.C1 / Nj[0]
    smallest = passages[-1][1] - passages[-1][0]
    need = int(math.ceil(4 * top / smallest))
    if grid < need:
        raise GridTooCoarse(need, grid)
    h = top / grid
    x = h * (np.arange(grid) + 0.5)
    inside = np.zeros(grid, dtype=bool)
    for lo, hi in passages:
        inside |= (x >= lo) & (x <= hi)
    xs = x[inside]
    f = np.zeros(len(xs))
    for c, v in zip(coef, Nj):
        f += c * phi(v * xs)
    total = 2 * float(np.sum(np.abs(f))) * h
    S = np.cumsum(coef / Nj)
    c_chain = 2 * (phi.C1 - phi.C3 / phi.lambda0) * phi.C2
    # f >= C2 * sum_{j<=m} coef_j on P_m, and the midpoint rule sees at least width - h of it
    widths = np.array([hi - lo for lo, hi in passages])
    total_lb = 2 * phi.C2 * float(np.sum(np.cumsum(coef) * np.maximum(widths - h, 0.0)))
    if total < total_lb * (1 - 1e-12):
        raise AssertionError(f"total integral {total:.6g} below c * S_K = {total_lb:.6g}")
    sums = [(m, float(S[m - 1])) for m in range(1, K + 1)]
    logs = [(m, math.log(v)) if v > 0 else (m, -math.inf) for m, v in sums]
    return ExtremalReport(
        sums,
        passage_integrals=rows,
        log_partial_sums=logs,
        lower_bounds=bounds,
        total_integral=total,
        total_lower_bound=c_chain * float(S[-1]),
        witness="user-supplied rho",
    )
