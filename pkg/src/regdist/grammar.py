"""Text form of parametric sequences.

    seq := [C] ['*'] ['2^(' s '*j)'] ['*'] ['(1+j)^' b] ['*'] ['ln(e+j)^' c]

Factors are joined by ``*``, each appears at most once and in this order,
and every part is optional (defaults C=1, s=b=c=0).  Numbers are decimals or
rationals ``p/q`` with an optional sign; the exponents b and c may also be
wrapped in parentheses.  Examples::

    2^(0.5*j)*(1+j)^-1
    3*(1+j)^-1/2*ln(e+j)^2
    1
"""

from __future__ import annotations

import re
from fractions import Fraction

from ._exact import fmt
from .seqcore import ParamSequence

_NUMBER = re.compile(r"[+-]?(?:\d+/\d+|\d+\.\d*|\.\d+|\d+)")


class SequenceSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self, literal: str) -> bool:
        self.skip_ws()
        return self.text.startswith(literal, self.pos)

    def expect(self, literal: str):
        if not self.peek(literal):
            raise SequenceSyntaxError(f"expected {literal!r}", self.text, self.pos)
        self.pos += len(literal)

    def number(self) -> Fraction:
        self.skip_ws()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            raise SequenceSyntaxError("expected a number", self.text, self.pos)
        self.pos = m.end()
        try:
            return Fraction(m.group(0))
        except ZeroDivisionError:
            raise SequenceSyntaxError("zero denominator", self.text, m.start()) from None

    def exponent(self) -> Fraction:
        if self.peek("("):
            self.expect("(")
            val = self.number()
            self.expect(")")
            return val
        return self.number()


# factor order: C, 2^(..), (1+j)^.., ln(e+j)^..
_FACTORS = ("2^(", "(1+j)^", "ln(e+j)^")


def parse_sequence(text: str) -> ParamSequence:
    """Parse a sequence literal into a :class:`ParamSequence`.

    Raises :class:`SequenceSyntaxError` (a ``ValueError``) with the failing
    position, and ``ValueError`` for a non-positive scale.
    """
    r = _Reader(text)
    if r.at_end():
        raise SequenceSyntaxError("empty sequence literal", text, 0)
    C, s, b, c = Fraction(1), Fraction(0), Fraction(0), Fraction(0)
    seen = -1
    first = True
    while not r.at_end():
        if not first:
            r.expect("*")
        start = r.pos
        r.skip_ws()
        if r.peek("2^("):
            idx = 0
        elif r.peek("(1+j)^"):
            idx = 1
        elif r.peek("ln(e+j)^"):
            idx = 2
        elif first:
            idx = -1
        else:
            raise SequenceSyntaxError("expected a factor", text, r.pos)
        if idx >= 0 and idx <= seen:
            raise SequenceSyntaxError("factor repeated or out of order", text, start)
        if idx == -1:
            C = r.number()
            if C <= 0:
                raise ValueError(f"scale C must be positive, got {fmt(C)}")
        elif idx == 0:
            r.expect("2^(")
            s = r.number()
            r.expect("*")
            r.expect("j")
            r.expect(")")
        elif idx == 1:
            r.expect("(1+j)^")
            b = r.exponent()
        else:
            r.expect("ln(e+j)^")
            c = r.exponent()
        seen = max(seen, idx)
        first = False
    return ParamSequence(C, s, b, c)


def format_sequence(seq: ParamSequence) -> str:
    """Canonical literal; ``parse_sequence(format_sequence(x)) == x``."""
    parts = []
    if seq.C != 1:
        parts.append(fmt(seq.C))
    if seq.s != 0:
        parts.append(f"2^({fmt(seq.s)}*j)")
    if seq.b != 0:
        parts.append(f"(1+j)^{fmt(seq.b)}")
    if seq.c != 0:
        parts.append(f"ln(e+j)^{fmt(seq.c)}")
    return "*".join(parts) if parts else "1"
