"""Rectangle construction behind necessity for 1 < p (cases B2 and B3).

Given gamma in l_1, the floored sequence gt_j = max(|gamma_j|, 1e3 / (N_0 lambda0^j))
sets the widths of consecutive slabs; slab j holds M_j cubes of side 1/N_j.
With rho_j^q = sigma_j^-q gt_j^(1 - q/p) the B-norm proxy equals
||gt||_1^(1/q) while the integral proxy is sum_j sigma_j^-1 gt_j^(1 - 1/p + 1/q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .._exact import fmt, from_recip, is_inf, recip
from ..decide import GEOMETRIC_N, SpaceSpec, regularity_B
from ..lr import InvalidQuery, lr_index, lr_membership, reverse_holder_witness
from ..seqcore import ParamSequence, SampledSequence, assumption_N_check
from .extremal import doubling_schedule

FLOOR = 1e3
# floors below this are treated as exact integers when computing M_j
_EXACT_FLOOR_LIMIT = 2.0**52


@dataclass
class Case3Report:
    K: int
    log_gamma_tilde: np.ndarray = field(repr=False)
    kappa: np.ndarray = field(repr=False)  # kappa_j = sum_{l=1..j} gt_l
    log_M_exact: np.ndarray = field(repr=False)
    log_M_asym: np.ndarray = field(repr=False)
    norm_proxy: float  # with the exact cube counts
    norm_proxy_asym: float  # = ||gt||_1^(1/q)
    l1_gamma_tilde: float
    integral_proxy: list  # (K, partial sum) on the doubling schedule
    log_integral_proxy: list = field(repr=False)
    condition_fails: bool = False
    diverging: Optional[bool] = None
    witness: str = ""

    def count_ratio(self) -> np.ndarray:
        """M_exact / M_asym for j = 1..K."""
        return np.exp(self.log_M_exact - self.log_M_asym)

    def growth_ratios(self) -> list:
        logs = [v for _, v in self.log_integral_proxy]
        return [math.exp(b - a) for a, b in zip(logs, logs[1:])]


def _log_floor(log_x: np.ndarray) -> np.ndarray:
    # log floor(x) for x >= 1; beyond 2^52 floor(x) and x agree to double precision
    out = log_x.copy()
    small = log_x < math.log(_EXACT_FLOOR_LIMIT)
    x = np.exp(log_x[small])
    # exp(log(1000)) may land just under 1000; snap values within rounding of an integer
    near = np.round(x)
    tol = 8 * np.finfo(float).eps * x * np.maximum(1.0, log_x[small])
    x = np.where(np.abs(x - near) <= tol, near, np.floor(x))
    out[small] = np.log(x)
    return out


def case3_series(
    sigma: ParamSequence,
    gamma,
    p,
    q,
    n: int = 1,
    K: int = 10_000,
    N: ParamSequence = GEOMETRIC_N,
    K_min: int = 16,
) -> Case3Report:
    """Slab counts, norm proxy and integral proxy of the rectangle construction.

    ``gamma`` is a parametric sequence in l_1, an array, or ``None``; with
    ``None`` it is taken as beta^r where beta is the reverse-Hoelder witness
    for sigma^-1 and 1/r = 1 - 1/p + 1/q, so the integral proxy diverges
    whenever the B2/B3 condition fails.
    """
    p, q = lr_index(p), lr_index(q)
    if recip(p) >= 1:
        raise InvalidQuery(f"need 1 < p, got p = {fmt(p)}")
    inv_p, inv_q = float(recip(p)), float(recip(q))
    repN = assumption_N_check(N)
    if not repN.satisfies_assumption_N:
        raise InvalidQuery("N violates the Assumption on N")
    lam = repN.lambda0
    schedule = [k for k in doubling_schedule(K_min, K)]
    if not schedule or schedule[-1] != K:
        schedule.append(K)
    j = np.arange(K + 1)
    spec_fails = not regularity_B(SpaceSpec("B", n, p, q, sigma, N)).contained
    if gamma is None:
        r = from_recip(1 - recip(p) + recip(q))
        if is_inf(r):
            raise InvalidQuery("1 - 1/p + 1/q = 0 has no l_1 witness")
        if not spec_fails:
            raise InvalidQuery("spec is contained in L1_loc; no divergent witness exists")
        w = reverse_holder_witness(sigma.inverse(), r, K_min, doublings=len(schedule) - 1)
        top = len(w.log_b) - 1
        if top < K:
            raise InvalidQuery(f"witness prefix {top} shorter than K = {K}")
        log_g = float(r) * w.log_b[: K + 1]
        how = f"gamma = b^{fmt(r)} with b the witness for sigma^-1 in l_{fmt(r)}"
    elif isinstance(gamma, ParamSequence):
        if not lr_membership(gamma, 1).is_member:
            raise InvalidQuery("gamma must be in l_1")
        log_g = np.asarray(gamma.log(j), dtype=float)
        how = f"gamma = {gamma}"
    else:
        arr = np.asarray(gamma.log_values if isinstance(gamma, SampledSequence) else gamma, dtype=float)
        if len(arr) < K + 1:
            raise InvalidQuery(f"gamma has {len(arr)} terms, need {K + 1}")
        if isinstance(gamma, SampledSequence):
            log_g = arr[: K + 1]
        else:
            with np.errstate(divide="ignore"):
                log_g = np.log(np.abs(arr[: K + 1]))
        how = "user-supplied gamma"
    log_N = np.asarray(N.log(j), dtype=float)
    log_fl = math.log(FLOOR) - log_N[0] - j * math.log(lam)
    log_gt = np.maximum(log_g, log_fl)
    log_gt[0] = -math.inf  # slabs start at j = 1
    gt = np.exp(log_gt)
    kappa = np.cumsum(gt)
    # M_j = floor(N_j (kappa_j - kappa_{j-1})) * floor(N_j)^(n-1) = floor(N_j gt_j) * floor(N_j)^(n-1)
    log_M_exact = _log_floor(log_N[1:] + log_gt[1:]) + (n - 1) * _log_floor(log_N[1:])
    log_M_asym = n * log_N[1:] + log_gt[1:]
    log_sigma = np.asarray(sigma.log(j[1:]), dtype=float)
    # log rho_j = -log sigma_j + (1/q - 1/p) log gt_j
    log_rho = -log_sigma + (inv_q - inv_p) * log_gt[1:]
    # block term: rho_j sigma_j N_j^(-n/p) M_j^(1/p)
    log_block = log_rho + log_sigma - n * inv_p * log_N[1:] + inv_p * log_M_exact
    l1 = float(kappa[-1])
    if is_inf(q):
        norm_exact = math.exp(float(log_block.max()))
        norm_asym = 1.0
    else:
        qf = float(q)
        norm_exact = math.exp(float(np.logaddexp.reduce(qf * log_block)) / qf)
        norm_asym = l1 ** (1 / qf)
    if norm_exact > norm_asym * (1 + 1e-9):
        raise AssertionError(f"norm proxy {norm_exact:.6g} exceeds ||gt||_1^(1/q) = {norm_asym:.6g}")
    expo = 1 - inv_p + inv_q
    log_terms = np.concatenate(([-math.inf], -log_sigma + expo * log_gt[1:]))
    log_I = np.logaddexp.accumulate(log_terms)
    logs = [(k, float(log_I[k])) for k in schedule]
    sums = [(k, math.exp(v) if v < 700 else math.inf) for k, v in logs]
    diverging = None
    if spec_fails:
        diverging = all(b > a for (_, a), (_, b) in zip(logs, logs[1:]))
    return Case3Report(
        K,
        log_gt,
        kappa,
        log_M_exact,
        log_M_asym,
        norm_exact,
        norm_asym,
        l1,
        sums,
        logs,
        spec_fails,
        diverging,
        how,
    )
