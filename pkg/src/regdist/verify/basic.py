"""A compactly supported basic function with vanishing moments (1-D).

Phi = theta + rho * P(x^2), where theta is a smooth plateau equal to 1 on
[-C1, C1] and rho is a smooth even bump living on the ring C1 < |x| < C3.
The even polynomial P is fixed by a linear moment solve, so Phi keeps the
value 1 on [-C1, C1] exactly and all moments of order <= L vanish (odd
ones by symmetry).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate


class MomentSystemError(RuntimeError):
    pass


def _psi(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smooth_step(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1."""
    a = _psi(t)
    return a / (a + _psi(1.0 - np.asarray(t, dtype=float)))


def bump(u):
    """exp(-1/(1-u^2)) on (-1, 1), zero elsewhere."""
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    inside = np.abs(u) < 1
    out[inside] = np.exp(-1.0 / (1.0 - u[inside] ** 2))
    return out


@dataclass(frozen=True)
class BasicFunction:
    L: int
    lambda0: float
    C1: float
    C2: float
    C3: float
    Cm: float
    coeffs: tuple = field(repr=False)

    def plateau(self, x):
        ax = np.abs(np.asarray(x, dtype=float))
        return 1.0 - smooth_step((ax - self.C1) / (self.Cm - self.C1))

    def ring(self, x):
        ax = np.abs(np.asarray(x, dtype=float))
        centre = 0.5 * (self.C1 + self.C3)
        half = 0.5 * (self.C3 - self.C1)
        return bump((ax - centre) / half)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        poly = np.zeros_like(x)
        x2 = x * x
        for i, a in enumerate(self.coeffs):
            poly = poly + a * x2**i
        return self.plateau(x) + self.ring(x) * poly

    def moment(self, gamma: int, step: float) -> float:
        """Composite midpoint value of the integral of x^gamma Phi over [-C3, C3]."""
        n = int(round(2 * self.C3 / step))
        h = 2 * self.C3 / n
        x = -self.C3 + h * (np.arange(n) + 0.5)
        return float(np.sum(x**gamma * self(x)) * h)


def _half_moment(fn, gamma: int, lo: float, hi: float) -> float:
    val, _ = integrate.quad(lambda x: x**gamma * float(fn(np.array([x]))[0]), lo, hi, epsabs=1e-15, epsrel=1e-13, limit=200)
    return val


def build_basic_function(L: int, lambda0: float) -> BasicFunction:
    """Phi with moments of order 0..L vanishing, Phi = 1 on [-C1, C1], supp in [-C3, C3].

    C3 = 1 and C1 = (1 + 1/lambda0)/2 is the midpoint of (C3/lambda0, C3),
    so C1 < C3 < lambda0 * C1.  L = -1 (no moment conditions) gives the bare
    plateau.
    """
    if L < -1:
        raise ValueError(f"need L >= -1, got {L}")
    if not lambda0 > 1:
        raise ValueError(f"need lambda0 > 1, got {lambda0}")
    C3 = 1.0
    C1 = 0.5 * (1.0 + 1.0 / lambda0) * C3
    Cm = 0.5 * (C1 + C3)
    m = L // 2 + 1 if L >= 0 else 0
    proto = BasicFunction(L, float(lambda0), C1, 1.0, C3, Cm, ())
    if m == 0:
        return proto
    # even moments 0, 2, ..., 2(m-1) of the plateau and of x^(2i) * ring, on x >= 0
    plateau_m = np.array(
        [C1 ** (2 * k + 1) / (2 * k + 1) + _half_moment(proto.plateau, 2 * k, C1, Cm) for k in range(m)]
    )
    G = np.array(
        [[_half_moment(proto.ring, 2 * (k + i), C1, C3) for i in range(m)] for k in range(m)]
    )
    if np.linalg.cond(G) > 1e12:
        raise MomentSystemError(f"moment system is ill-conditioned (cond = {np.linalg.cond(G):.3g})")
    coeffs = np.linalg.solve(G, -plateau_m)
    return BasicFunction(L, float(lambda0), C1, 1.0, C3, Cm, tuple(float(a) for a in coeffs))
