"""Exact-number helpers shared across the package.

Exponents (p, q, r, smoothness rates) are kept as :class:`fractions.Fraction`
so that knife-edge case boundaries such as ``q == min(p, 2)`` compare
exactly.  The extended value infinity is represented by ``math.inf``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational, Real
from typing import Union

INF = math.inf

Exact = Union[Fraction, float]


def as_fraction(x) -> Fraction:
    """Convert ints, Fractions, decimal strings and floats to a Fraction.

    Floats go through ``repr`` so that ``0.1`` becomes ``1/10`` rather than
    its binary expansion.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"expected a finite number, got {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Real):
        return as_fraction(float(x))
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x) and x > 0


def as_extended(x) -> Exact:
    """Parse a positive extended real: a rational, or infinity.

    Accepts ``"inf"``, ``"infinity"``, ``"∞"``, ``math.inf`` and anything
    :func:`as_fraction` accepts.
    """
    if isinstance(x, str) and x.strip().lower() in {"inf", "+inf", "infinity", "∞"}:
        return INF
    if isinstance(x, float) and math.isinf(x):
        if x < 0:
            raise ValueError("negative infinity is not an admissible exponent")
        return INF
    return as_fraction(x)


def recip(r: Exact) -> Fraction:
    """1/r with 1/∞ = 0."""
    if is_inf(r):
        return Fraction(0)
    return 1 / Fraction(r)


def from_recip(x: Fraction) -> Exact:
    """Inverse of :func:`recip`; a zero reciprocal means ∞."""
    if x == 0:
        return INF
    return 1 / Fraction(x)


def positive_part(x: Fraction) -> Fraction:
    return x if x > 0 else Fraction(0)


def fmt(x) -> str:
    """Canonical short text for exact values (``1/2``, ``3``, ``inf``)."""
    if is_inf(x):
        return "inf"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def exact_log2(x) -> Fraction | None:
    """Return log2(x) when x is an exact (rational) power of two, else None."""
    if not isinstance(x, Fraction) or x <= 0:
        return None
    num, den = x.numerator, x.denominator
    if num & (num - 1) == 0 and den & (den - 1) == 0:
        return Fraction(num.bit_length() - den.bit_length())
    return None
