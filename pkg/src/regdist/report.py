"""Markdown tables regenerated from the decision engine.

``classical`` sweeps B^s_{p,q} and F^s_{p,q} over a grid and locates the
critical smoothness and the boundary q-range by bisection.  ``example48``
locates the boundary power b of sigma_j = 2^(sj) (1+j)^b at the critical s
and compares it with the closed-form thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._exact import INF, fmt, is_inf, positive_part, recip
from .decide import GEOMETRIC_N, SpaceSpec, classical_regularity, regularity
from .seqcore import ParamSequence

P_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2), Fraction(3), INF)
Q_GRID = P_GRID


def bisect_boundary(contained, lo: Fraction, hi: Fraction, steps: int = 60, max_den: int = 1000) -> Fraction:
    """Rational boundary x* of a monotone predicate (False below, True above).

    Bisects on exact rationals, snaps the midpoint to the simplest nearby
    fraction and confirms it brackets the switch.
    """
    if contained(lo) or not contained(hi):
        raise ValueError("predicate must be False at lo and True at hi")
    for _ in range(steps):
        mid = (lo + hi) / 2
        if contained(mid):
            hi = mid
        else:
            lo = mid
    x = ((lo + hi) / 2).limit_denominator(max_den)
    eps = Fraction(1, 10**12)
    if contained(x - eps) or not contained(x + eps):
        raise ValueError(f"snapped boundary {x} does not bracket the switch")
    return x


def _low_p(family: str, p) -> bool:
    # the critical smoothness is n(1/p - 1) on these p (B: p <= 1, F: p < 1)
    return p <= 1 if family == "B" else p < 1


def _q_bound_label(family: str, p, qs: list) -> str:
    if not qs:
        return "none"
    if len(qs) == len(Q_GRID):
        return "all q"
    if family == "F":
        label, val = "2", Fraction(2)
    elif p <= 1:
        label, val = "1", Fraction(1)
    else:
        label, val = "min(p,2)", min(p, Fraction(2))
    if qs == [q for q in Q_GRID if q <= val]:
        return f"0<q<={label}"
    return "q in {" + ", ".join(fmt(q) for q in qs) + "}"


@dataclass(frozen=True)
class ClassicalRow:
    family: str
    p: object
    s_crit: Fraction
    at_crit: str  # q-range contained at s = s_crit

    @property
    def s_label(self) -> str:
        return "n(1/p-1)" if _low_p(self.family, self.p) else "0"


def classical_sweep(n: int = 1) -> list:
    """Critical s and the q-range contained at it, for each grid p."""
    rows = []
    for fam in ("F", "B"):
        for p in P_GRID:
            if fam == "F" and is_inf(p):
                continue

            def all_q(s, fam=fam, p=p):
                return all(classical_regularity(fam, s, p, q, n) for q in Q_GRID)

            # above the critical value every q is inside; at it only some may be
            s_crit = bisect_boundary(lambda s: all_q(s) and all_q(s + Fraction(1, 10**9)), Fraction(-8), Fraction(4 * n + 8))
            qs = [q for q in Q_GRID if classical_regularity(fam, s_crit, p, q, n)]
            rows.append(ClassicalRow(fam, p, s_crit, _q_bound_label(fam, p, qs)))
    return rows


def classical_markdown(n: int = 1) -> str:
    rows = classical_sweep(n)
    out = [f"# Classical spaces inside L1_loc (n = {n})", ""]
    for fam in ("F", "B"):
        mine = [r for r in rows if r.family == fam]
        out += [f"## {fam}^s_(p,q)", "", "| p | critical s | s > critical | s = critical |", "|---|---|---|---|"]
        for r in mine:
            out.append(f"| {fmt(r.p)} | {fmt(r.s_crit)} | all q | {r.at_crit} |")
        out += ["", "| p | critical s | s = critical |", "|---|---|---|"]
        groups: dict = {}
        for r in mine:
            groups.setdefault((r.s_label, r.at_crit), []).append(r.p)
        for (s_label, at), ps in groups.items():
            out.append("| {" + ", ".join(fmt(p) for p in ps) + f"}} | {s_label} | {at} |")
        out.append("")
    return "\n".join(out)


@dataclass(frozen=True)
class ThresholdProbe:
    region: str
    family: str
    p: object
    q: object
    s: Fraction
    formula: str
    expected: Fraction
    found: Fraction
    contained_at_threshold: bool

    @property
    def ok(self) -> bool:
        return self.found == self.expected and not self.contained_at_threshold


_FORMULAS = {
    "(q-1)/q": lambda p, q: 1 - recip(q),
    "(q-p)/(pq)": lambda p, q: recip(p) - recip(q),
    "(q-2)/(2q)": lambda p, q: Fraction(1, 2) - recip(q),
}

EXAMPLE48_PROBES = (
    ("i", "B", Fraction(1, 2), Fraction(2), "(q-1)/q"),
    ("i", "B", Fraction(1), Fraction(4), "(q-1)/q"),
    ("i", "B", Fraction(1, 4), INF, "(q-1)/q"),
    ("ii", "B", Fraction(3, 2), Fraction(3), "(q-p)/(pq)"),
    ("ii", "B", Fraction(2), Fraction(4), "(q-p)/(pq)"),
    ("ii", "B", Fraction(3, 2), INF, "(q-p)/(pq)"),
    ("iii", "B", Fraction(3), Fraction(4), "(q-2)/(2q)"),
    ("iii", "B", INF, Fraction(3), "(q-2)/(2q)"),
    ("iii", "B", Fraction(4), INF, "(q-2)/(2q)"),
    ("iv", "F", Fraction(1), Fraction(3), "(q-2)/(2q)"),
    ("iv", "F", Fraction(2), INF, "(q-2)/(2q)"),
    ("iv", "F", Fraction(3, 2), Fraction(4), "(q-2)/(2q)"),
)

REGION_TEXT = {
    "i": "0<p<=1, 1<q<=inf, s = n(1/p-1)",
    "ii": "1<p<=2, min(p,2)<q<=inf, s = 0",
    "iii": "2<p<=inf, min(p,2)<q<=inf, s = 0",
    "iv": "F: 1<=p<inf, 2<q<=inf, s = 0",
}


def example48_probe(region, family, p, q, formula, n: int = 1) -> ThresholdProbe:
    s = n * positive_part(recip(p) - 1) if region == "i" else Fraction(0)

    def contained(b):
        sigma = ParamSequence(1, s, b, 0)
        return regularity(SpaceSpec(family, n, p, q, sigma, GEOMETRIC_N)).contained

    found = bisect_boundary(contained, Fraction(-2), Fraction(4))
    return ThresholdProbe(region, family, p, q, s, formula, _FORMULAS[formula](p, q), found, contained(found))


def example48_markdown(n: int = 1) -> str:
    out = [
        f"# Boundary power b for sigma_j = 2^(sj) (1+j)^b, N_j = 2^j (n = {n})",
        "",
        "| region | space | p | q | s | boundary b | formula | formula value | contained at b = boundary |",
        "|---|---|---|---|---|---|---|---|---|",
    ]
    probes = [example48_probe(*row, n=n) for row in EXAMPLE48_PROBES]
    for pr in probes:
        out.append(
            f"| {pr.region} | {pr.family} | {fmt(pr.p)} | {fmt(pr.q)} | {fmt(pr.s)} | {fmt(pr.found)} | "
            f"{pr.formula} | {fmt(pr.expected)} | {'yes' if pr.contained_at_threshold else 'no'} |"
        )
    out += ["", "| region | parameters | contained iff |", "|---|---|---|"]
    seen = []
    for pr in probes:
        if pr.region not in seen:
            seen.append(pr.region)
            note = " (b > 1/p if q = inf)" if pr.formula == "(q-p)/(pq)" else (" (b > 1/2 if q = inf)" if pr.formula == "(q-2)/(2q)" else "")
            out.append(f"| {pr.region} | {REGION_TEXT[pr.region]} | b > {pr.formula}{note} |")
    out.append("")
    return "\n".join(out)
