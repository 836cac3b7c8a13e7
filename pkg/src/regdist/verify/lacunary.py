"""L1 norms of lacunary trigonometric sums w_K(t) = sum_{j=1..K} b_j e^(i 2^j t)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..lr import InvalidQuery
from ..seqcore import ParamSequence


@dataclass
class LacunaryReport:
    K: int
    grid_size: int
    l1_norms: list  # (K, ||w_K||_L1[0, 2pi])
    l2_partial: list  # (K, sum_{j<=K} |b_j|^2)
    coefficients: tuple = field(default=(), repr=False)

    def trace(self) -> list:
        return [v for _, v in self.l1_norms]


def _coefficients(b, K: int) -> np.ndarray:
    if isinstance(b, ParamSequence):
        return b.values(K)
    if callable(b):
        return np.array([b(j) for j in range(K + 1)], dtype=complex)
    arr = np.asarray(b)
    if len(arr) < K + 1:
        raise InvalidQuery(f"need coefficients b_0..b_{K}, got {len(arr)}")
    return arr[: K + 1]


def lacunary_L1(b, K: int, grid: int = 2**16) -> LacunaryReport:
    """Midpoint-rule L1 norms of w_1, ..., w_K and the matching l2 partial sums.

    ``b`` is a ParamSequence, a callable j -> b_j, or an array indexed from
    j = 0 (b_0 is ignored).  The phase 2^j t at node t_i = (i + 1/2) 2pi/grid
    is reduced modulo 2pi in integer arithmetic, so high frequencies carry
    no rounding drift.
    """
    if K < 1:
        raise InvalidQuery(f"need K >= 1, got K = {K}")
    if grid < 4 * 2**K:
        raise InvalidQuery(f"grid below Nyquist: need grid >= 4 * 2^K = {4 * 2**K}, got {grid}")
    coef = _coefficients(b, K)
    odd = 2 * np.arange(grid, dtype=np.int64) + 1
    w = np.zeros(grid, dtype=complex)
    h = 2 * math.pi / grid
    l1, l2 = [], []
    acc = 0.0
    for j in range(1, K + 1):
        # 2^j t_i = pi * (2^j (2i + 1) mod 2 grid) / grid
        idx = (odd * (2**j % (2 * grid))) % (2 * grid)
        w += coef[j] * np.exp(1j * math.pi * idx / grid)
        acc += abs(coef[j]) ** 2
        norm = float(np.abs(w).sum() * h)
        bound = 2 * math.pi * float(np.abs(coef[1 : j + 1]).sum())
        if norm > bound * (1 + 1e-12):
            raise AssertionError(f"||w_{j}||_1 = {norm:.6g} exceeds the triangle bound {bound:.6g}")
        l1.append((j, norm))
        l2.append((j, acc))
    return LacunaryReport(K, grid, l1, l2, tuple(coef))
