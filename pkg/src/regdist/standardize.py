"""Standardisation: replace (sigma, N) by (beta, 2^j) with beta_j = sigma_{k(j)}.

k(j) = min{k >= 0 : 2^(j-1) <= N_{k + kappa0}} is built by a forward scan.
The map's structural properties are proven facts, so a violation raises
:class:`StandardizationError` (it can only mean a bug or a bad input).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from ._exact import Exact, fmt, is_inf
from .lr import InvalidQuery, MembershipVerdict, lr_index, lr_membership
from .seqcore import (
    ParamSequence,
    SampledSequence,
    admissibility_bounds,
    assumption_N_check,
    kappa0,
    kappa1,
)

# relative slack for floating comparisons of quantities that are equal in theory
REL_TOL = 1e-9


class StandardizationError(RuntimeError):
    pass


@dataclass(frozen=True)
class StandardizationMap:
    kappa0: int
    kappa1: int
    j0: int
    c0: int
    k: tuple = field(repr=False)
    mu0: float
    mu1: float
    lambda0: float
    lambda1: float

    @property
    def J(self) -> int:
        return len(self.k) - 1

    def __call__(self, j: int) -> int:
        return self.k[j]


def _first_j0(N: ParamSequence, k0: int, lambda1: float) -> int:
    # least j0 >= 0 with 2^(j0 - 1) > lambda1^kappa0 * N_0
    ex = N.log2_exact(0)
    if N.is_geometric and ex is not None:
        rhs = k0 * N.s + ex
        j0 = math.floor(rhs) + 2  # j0 - 1 > rhs
    else:
        rhs = k0 * math.log2(lambda1) + float(N.log2(0))
        j0 = math.floor(rhs) + 2
    return max(0, j0)


def _covers(N: ParamSequence, m: int, j: int) -> bool:
    # 2^(j-1) <= N_m
    ex = N.log2_exact(m)
    if ex is not None:
        return j - 1 <= ex
    v = float(N.log2(m))
    if abs(v - (j - 1)) > 1e-9 * max(1.0, abs(v)):
        return j - 1 <= v
    # near a tie: settle it exactly when the terms allow
    sign = N.cmp_pow2(m, Fraction(j - 1))
    return j - 1 <= v if sign is None else sign >= 0


def build_map(sigma: ParamSequence, N: ParamSequence, J: int) -> StandardizationMap:
    """Tabulate k(j) for j <= J together with kappa0, kappa1, j0, c0, mu0, mu1."""
    if J < 1:
        raise InvalidQuery(f"need J >= 1, got J = {J}")
    repN = assumption_N_check(N)
    if not repN.satisfies_assumption_N:
        raise InvalidQuery(f"N violates the Assumption on N (lambda0 = {repN.lambda0:.6g})")
    k0 = kappa0(N)
    k1 = kappa1(N)
    j0 = _first_j0(N, k0, repN.lambda1)
    c0 = k1 + j0
    table = []
    k = 0
    for j in range(J + 1):
        while not _covers(N, k + k0, j):
            k += 1
        table.append(k)
    reps = admissibility_bounds(sigma)
    mu0 = min(1.0, reps.d0**k0)
    mu1 = max(1.0, reps.d1**k0)
    smap = StandardizationMap(k0, k1, j0, c0, tuple(table), mu0, mu1, repN.lambda0, repN.lambda1)
    check_map(smap)
    return smap


def check_map(smap: StandardizationMap) -> None:
    """Assert monotonicity, k(j+1) <= k(j) + kappa0 and k(j+c0) > k(j)."""
    k = np.asarray(smap.k)
    steps = np.diff(k)
    if np.any(steps < 0):
        j = int(np.argmax(steps < 0))
        raise StandardizationError(f"k is not nondecreasing at j = {j}")
    if np.any(steps > smap.kappa0):
        j = int(np.argmax(steps > smap.kappa0))
        raise StandardizationError(f"k({j + 1}) > k({j}) + kappa0")
    c0 = smap.c0
    if len(k) > c0:
        bad = k[c0:] <= k[:-c0]
        if np.any(bad):
            j = int(np.argmax(bad))
            raise StandardizationError(f"k({j} + c0) <= k({j}) with c0 = {c0}")


def beta_sequence(smap: StandardizationMap, sigma: ParamSequence, J: Optional[int] = None) -> SampledSequence:
    """beta_j = sigma_{k(j)} for j <= J, with the ratio bounds [mu0, mu1] checked."""
    J = smap.J if J is None else J
    if J > smap.J:
        raise InvalidQuery(f"map only built to J = {smap.J}, asked for {J}")
    ks = np.asarray(smap.k[: J + 1])
    logs = np.asarray(sigma.log(ks), dtype=float)
    ratios = np.diff(logs)
    lo, hi = math.log(smap.mu0), math.log(smap.mu1)
    slack = REL_TOL * max(1.0, float(np.abs(logs).max()))
    if np.any(ratios < lo - slack) or np.any(ratios > hi + slack):
        j = int(np.argmax((ratios < lo - slack) | (ratios > hi + slack)))
        raise StandardizationError(f"beta_{j + 1}/beta_{j} outside [mu0, mu1]")
    return SampledSequence(tuple(logs))


def dump_csv(smap: StandardizationMap, sigma: ParamSequence, out=None) -> str:
    """CSV rows (j, k(j), beta_j); returns the text and writes it to ``out`` if given."""
    beta = beta_sequence(smap, sigma)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["j", "k", "beta"])
    for j, (kj, val) in enumerate(zip(smap.k, beta.values)):
        w.writerow([j, kj, f"{val:.17g}"])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


@dataclass(frozen=True)
class TransferReport:
    r: Exact
    J: int
    A: float  # sum_{j<=J} sigma_{k(j)}^-r, or the sup for r = inf
    B: float  # sum_{j<=J} sigma_j^-r
    upper_sum: float  # over l <= k(J)
    lower_sum: float  # over k(0) <= l <= k(J)
    c0: int
    kappa0: int
    c_lower: float
    upper_ok: bool
    lower_ok: bool
    symbolic: MembershipVerdict
    trace_beta: tuple = field(repr=False)
    trace_sigma: tuple = field(repr=False)


def _lse(x: np.ndarray) -> float:
    return float(np.logaddexp.reduce(x)) if len(x) else -math.inf


def lr_transfer_check(sigma: ParamSequence, N: ParamSequence, r, J: int) -> TransferReport:
    """Finite-J evidence that sigma^-1 and (sigma_{k(j)}^-1) share l_r membership.

    Checks A_J <= c0 * sum_{l <= k(J)} sigma_l^-r and
    kappa0 * A_J >= c * sum_{k(0) <= l <= k(J)} sigma_l^-r, where
    c = min(1, d0)^((kappa0 - 1) r).  For r = inf the sums become sups and
    the constants lose the factors c0 and kappa0.
    """
    r = lr_index(r)
    smap = build_map(sigma, N, J)
    ks = np.asarray(smap.k)
    d0 = admissibility_bounds(sigma).d0
    top = int(ks[-1])
    ls_all = -np.asarray(sigma.log(np.arange(max(J, top) + 1)), dtype=float)  # ln sigma_l^-1
    lb = ls_all[ks]
    log_d = math.log(min(1.0, d0))
    if is_inf(r):
        logA = np.maximum.accumulate(lb)
        logB = np.maximum.accumulate(ls_all[: J + 1])
        log_up = float(ls_all[: top + 1].max())
        log_low = float(ls_all[ks[0] : top + 1].max())
        log_c = (smap.kappa0 - 1) * log_d
        up_rhs, low_lhs = log_up, float(logA[-1])
    else:
        rf = float(r)
        logA = np.logaddexp.accumulate(rf * lb)
        logB = np.logaddexp.accumulate(rf * ls_all[: J + 1])
        log_up = _lse(rf * ls_all[: top + 1])
        log_low = _lse(rf * ls_all[ks[0] : top + 1])
        log_c = (smap.kappa0 - 1) * rf * log_d
        up_rhs = math.log(smap.c0) + log_up
        low_lhs = math.log(smap.kappa0) + float(logA[-1])
    tol = REL_TOL * max(1.0, abs(up_rhs), abs(low_lhs))
    upper_ok = float(logA[-1]) <= up_rhs + tol
    lower_ok = low_lhs + tol >= log_c + log_low
    report = TransferReport(
        r,
        J,
        math.exp(min(float(logA[-1]), 700)),
        math.exp(min(float(logB[-1]), 700)),
        math.exp(min(log_up, 700)),
        math.exp(min(log_low, 700)),
        smap.c0,
        smap.kappa0,
        math.exp(log_c),
        upper_ok,
        lower_ok,
        lr_membership(sigma.inverse(), r),
        tuple(np.exp(np.minimum(logA, 700))),
        tuple(np.exp(np.minimum(logB, 700))),
    )
    if not (upper_ok and lower_ok):
        side = "A_J <= c0 * sum" if not upper_ok else "kappa0 * A_J >= c * sum"
        raise StandardizationError(f"transfer inequality violated: {side} (r = {fmt(r)}, J = {J})")
    return report
