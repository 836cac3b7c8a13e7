"""Admissible sequences of the form C * 2^(s j) * (1+j)^b * ln(e+j)^c.

The parametric family is closed under inversion, products and real powers,
which is all the decision tables need.  Finite prefixes of arbitrary positive
sequences are carried by :class:`SampledSequence`; for those the questions
that depend on the whole tail are answered with ``None`` (inconclusive).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from ._exact import Exact, as_fraction, exact_log2

LN2 = math.log(2.0)

# integer scan window for the consecutive-ratio extremisation
RATIO_WINDOW = 10_000
# geometric continuation of the scan, up to x = 1e300
_GEOM_GRID = np.logspace(4, 300, 3000)


def _coerce_scale(C) -> Exact:
    if isinstance(C, float):
        if not math.isfinite(C) or C <= 0:
            raise ValueError(f"scale C must be a positive finite number, got {C!r}")
        return C
    C = as_fraction(C)
    if C <= 0:
        raise ValueError(f"scale C must be positive, got {C}")
    return C


@dataclass(frozen=True)
class ParamSequence:
    """sigma_j = C * 2^(s j) * (1+j)^b * ln(e+j)^c for j >= 0.

    ``s``, ``b`` and ``c`` are stored as Fractions.  ``C`` stays a Fraction
    unless an operation (a non-integer power) forces it to a float.
    """

    C: Exact = Fraction(1)
    s: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __hash__(self):
        # Fraction hashing is slow and these objects key several caches
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.C, self.s, self.b, self.c))
            object.__setattr__(self, "_hash", h)
        return h

    @classmethod
    def _raw(cls, C, s: Fraction, b: Fraction, c: Fraction) -> "ParamSequence":
        # skips validation; callers pass an already-coerced scale and Fractions
        obj = object.__new__(cls)
        for name, val in (("C", C), ("s", s), ("b", b), ("c", c)):
            object.__setattr__(obj, name, val)
        return obj

    def __post_init__(self):
        object.__setattr__(self, "C", _coerce_scale(self.C))
        for name in ("s", "b", "c"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    @property
    def exponents(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.s, self.b, self.c)

    @property
    def is_geometric(self) -> bool:
        return self.b == 0 and self.c == 0

    def log(self, j):
        """Natural log of the terms; accepts scalars or integer arrays."""
        j = np.asarray(j, dtype=float)
        out = math.log(self.C) + float(self.s) * LN2 * j
        if self.b:
            out = out + float(self.b) * np.log1p(j)
        if self.c:
            out = out + float(self.c) * np.log(np.log(math.e + j))
        return out

    def log2(self, j):
        return self.log(j) / LN2

    def log2_exact(self, j: int) -> Optional[Fraction]:
        """Exact log2 of term j when it is a power of two with rational exponent."""
        if not self.is_geometric:
            return None
        base = exact_log2(self.C)
        if base is None:
            return None
        return base + self.s * j

    def cmp_pow2(self, j: int, e: Fraction) -> Optional[int]:
        """Exact sign of term_j - 2^e, or None when a log factor or float scale is present."""
        if self.c != 0 or not isinstance(self.C, Fraction):
            return None
        # C (1+j)^b against 2^(e - s j), raised to a common denominator
        t = Fraction(e) - self.s * j
        D = math.lcm(self.b.denominator, t.denominator)
        lhs = self.C**D * Fraction(1 + j) ** int(self.b * D)
        rhs = Fraction(2) ** int(t * D)
        return (lhs > rhs) - (lhs < rhs)

    def values(self, J: int) -> np.ndarray:
        """Terms sigma_0 .. sigma_J (may overflow to inf for fast growth)."""
        with np.errstate(over="ignore"):
            return np.exp(self.log(np.arange(J + 1)))

    def __call__(self, j: int) -> float:
        return eval_term(self, j)

    def inverse(self) -> "ParamSequence":
        C = 1 / self.C if isinstance(self.C, Fraction) else 1.0 / self.C
        return ParamSequence._raw(C, -self.s, -self.b, -self.c)

    def __mul__(self, other: "ParamSequence") -> "ParamSequence":
        if not isinstance(other, ParamSequence):
            return NotImplemented
        C = self.C * other.C
        if isinstance(C, float):
            C = _coerce_scale(C)
        return ParamSequence._raw(C, self.s + other.s, self.b + other.b, self.c + other.c)

    def __pow__(self, e) -> "ParamSequence":
        e = as_fraction(e)
        if isinstance(self.C, Fraction) and e.denominator == 1:
            C = self.C ** int(e)
        elif self.C == 1:
            C = Fraction(1)
        else:
            C = _coerce_scale(float(self.C) ** float(e))
        return ParamSequence._raw(C, self.s * e, self.b * e, self.c * e)

    def scaled(self, factor) -> "ParamSequence":
        return ParamSequence(self.C * as_fraction(factor), self.s, self.b, self.c)

    def __str__(self) -> str:
        from .grammar import format_sequence

        return format_sequence(self)


@dataclass(frozen=True)
class SampledSequence:
    """A finite positive prefix sigma_0..sigma_{J-1}, stored as natural logs."""

    log_values: tuple = field(repr=False)

    def __post_init__(self):
        logs = tuple(float(v) for v in self.log_values)
        if len(logs) < 2:
            raise ValueError("a sampled sequence needs at least two terms")
        if any(math.isnan(v) or v == math.inf for v in logs):
            raise ValueError("sampled values must be positive and finite")
        object.__setattr__(self, "log_values", logs)

    @classmethod
    def from_values(cls, values) -> "SampledSequence":
        arr = np.asarray(values, dtype=float)
        if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
            raise ValueError("sampled values must be positive and finite")
        return cls(tuple(np.log(arr)))

    @property
    def J(self) -> int:
        return len(self.log_values)

    def __len__(self) -> int:
        return len(self.log_values)

    def log(self, j):
        return np.asarray(self.log_values)[j]

    @property
    def values(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(np.asarray(self.log_values))


Sequence_ = Union[ParamSequence, SampledSequence]


@dataclass(frozen=True)
class AdmissibilityReport:
    d0: float
    d1: float
    lambda0: float
    lambda1: float
    is_admissible: Optional[bool]
    satisfies_assumption_N: Optional[bool]
    # True when the scan saw the ratio settle into monotone approach to its limit
    certified: bool = True


@dataclass(frozen=True)
class BoydIndices:
    alpha: Exact
    beta: Exact
    exact: bool = True


def eval_term(seq: ParamSequence, j: int) -> float:
    """C * 2^(s j) * (1+j)^b * ln(e+j)^c."""
    if j < 0:
        raise ValueError("index j must be nonnegative")
    val = float(seq.C) * 2.0 ** (float(seq.s) * j)
    if seq.b:
        val *= (1.0 + j) ** float(seq.b)
    if seq.c:
        val *= math.log(math.e + j) ** float(seq.c)
    return val


def _log_ratio_excess(b: float, c: float, x: np.ndarray) -> np.ndarray:
    # ln(sigma_{x+1}/sigma_x) - s ln 2, written to avoid cancellation at large x
    out = np.zeros_like(x)
    if b:
        out = out + b * np.log1p(1.0 / (1.0 + x))
    if c:
        out = out + c * np.log1p(np.log1p(1.0 / (math.e + x)) / np.log(math.e + x))
    return out


@lru_cache(maxsize=1024)
def _param_bounds(seq: ParamSequence) -> AdmissibilityReport:
    base = 2.0 ** float(seq.s)
    if seq.is_geometric:
        return AdmissibilityReport(base, base, base, base, True, base > 1)
    b, c = float(seq.b), float(seq.c)
    window = _log_ratio_excess(b, c, np.arange(RATIO_WINDOW + 1, dtype=float))
    tail = _log_ratio_excess(b, c, _GEOM_GRID)
    # the limit of the excess is 0
    lo = min(window.min(), tail.min(), 0.0)
    hi = max(window.max(), tail.max(), 0.0)
    steps = np.sign(np.diff(tail[-200:]))
    certified = bool(np.all(steps == steps[0]) or np.all(steps == 0))
    d0 = base * math.exp(lo)
    d1 = base * math.exp(hi)
    return AdmissibilityReport(d0, d1, d0, d1, True, d0 > 1, certified)


def admissibility_bounds(seq: Sequence_) -> AdmissibilityReport:
    """Best constants d0 <= sigma_{j+1}/sigma_j <= d1 over all j >= 0.

    For the parametric family the consecutive ratio tends to 2^s and is
    eventually monotone, so the infimum and supremum are found on an integer
    window plus a geometric continuation together with the limit.  Sampled
    prefixes report the observed extremes and leave admissibility undecided.
    """
    if isinstance(seq, SampledSequence):
        diffs = np.diff(np.asarray(seq.log_values))
        d0, d1 = float(np.exp(diffs.min())), float(np.exp(diffs.max()))
        return AdmissibilityReport(d0, d1, d0, d1, None, None, False)
    return _param_bounds(seq)


def assumption_N_check(seq: Sequence_) -> AdmissibilityReport:
    """Check lambda0 N_j <= N_{j+1} <= lambda1 N_j with lambda0 > 1."""
    return admissibility_bounds(seq)


def _least_k_with(k_log2: Fraction | float, target: int = 1) -> int:
    # least natural k >= 1 with k * k_log2 >= target
    if isinstance(k_log2, Fraction):
        k = math.ceil(target / k_log2)
    else:
        k = max(1, math.ceil(target / k_log2 - 1e-9))
        while k * k_log2 < target - 1e-12:
            k += 1
    return max(1, k)


def kappa0(N) -> int:
    """Least natural kappa0 with lambda0 ** kappa0 >= 2.

    ``N`` may be a :class:`ParamSequence` satisfying the Assumption on N, or
    the number lambda0 itself.  Geometric sequences and rational lambda0 are
    handled exactly.
    """
    if isinstance(N, ParamSequence):
        rep = assumption_N_check(N)
        if not rep.satisfies_assumption_N:
            raise ValueError(f"lambda0 = {rep.lambda0!r} <= 1: N is not strongly increasing")
        if N.is_geometric:
            return _least_k_with(N.s)
        return _least_k_with(math.log2(rep.lambda0))
    if isinstance(N, (Fraction, int)) and not isinstance(N, bool):
        lam = Fraction(N)
        if lam <= 1:
            raise ValueError(f"lambda0 = {lam} <= 1")
        k = 1
        while lam**k < 2:
            k += 1
        return k
    lam = float(N)
    if lam <= 1:
        raise ValueError(f"lambda0 = {lam!r} <= 1")
    return _least_k_with(math.log2(lam))


def kappa1(N: ParamSequence) -> int:
    """Least natural kappa1 with lambda1 <= 2 ** kappa1."""
    if N.is_geometric:
        return max(1, math.ceil(N.s))
    lam1 = assumption_N_check(N).lambda1
    k = max(1, math.ceil(math.log2(lam1) - 1e-12))
    return k


def boyd_indices(seq: Sequence_) -> BoydIndices:
    """Upper and lower Boyd indices.

    Sub-exponential factors do not move the indices, so for the family both
    equal ``s``.  For sampled prefixes a finite-window estimate is returned
    with ``exact=False``.
    """
    if isinstance(seq, ParamSequence):
        return BoydIndices(seq.s, seq.s)
    logs = np.asarray(seq.log_values)
    j = len(logs) // 2
    shifted = logs[j:] - logs[: len(logs) - j]
    return BoydIndices(
        float(shifted.max() / (j * LN2)), float(shifted.min() / (j * LN2)), exact=False
    )


def equivalent(a: Sequence_, b: Sequence_) -> Optional[bool]:
    """Whether sigma_j / tau_j stays between two positive constants.

    Within the family this holds exactly when (s, b, c) coincide; the scale
    C is irrelevant.  Sampled prefixes cannot decide it.
    """
    if isinstance(a, ParamSequence) and isinstance(b, ParamSequence):
        return a.exponents == b.exponents
    return None
