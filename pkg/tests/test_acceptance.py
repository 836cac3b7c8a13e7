"""The ten acceptance criteria, one test each, each printing a PASS/FAIL line."""

import itertools
import math
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from oracles import classical_table, condensation_member, k_enumeration
from regdist._exact import INF, as_extended
from regdist.decide import (
    GEOMETRIC_N,
    SpaceSpec,
    atom_requirements,
    besov_lebesgue_condition,
    bf_sandwich,
    regularity,
    triebel_local_condition,
)
from regdist.grammar import parse_sequence
from regdist.lr import lr_membership
from regdist.report import EXAMPLE48_PROBES, example48_probe
from regdist.seqcore import ParamSequence
from regdist.standardize import beta_sequence, build_map
from regdist.verify import build_basic_function, extremal_series, lacunary_L1, witness_series

# frozen from oracle runs; see the decisions ledger for the numbers behind them
THETA = 1.1
LACUNARY_MAX_SPREAD = 1.40
LACUNARY_MIN_RATIO = 1.08

GRID_PQ = (F(1, 4), F(1, 2), F(3, 4), F(1), F(3, 2), F(2), F(5, 2), F(3), INF)


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def test_01_classical_oracle(report):
    t = time.perf_counter()
    mismatches, total = 0, 0
    for fam, n in itertools.product("BF", (1, 2, 3)):
        for k, p, q in itertools.product(range(-8, 9), GRID_PQ, GRID_PQ):
            if fam == "F" and p == INF:
                continue
            s = F(k, 4)
            spec = SpaceSpec(fam, n, p, q, ParamSequence(1, s, 0, 0), GEOMETRIC_N)
            total += 1
            mismatches += regularity(spec).contained is not classical_table(fam, s, p, q, n)
    dt = time.perf_counter() - t
    report(1, mismatches == 0 and dt < 1.0, f"classical oracle grid: {mismatches}/{total} mismatches in {dt:.2f} s")


def test_02_example_thresholds(report):
    probes = [example48_probe(*row) for row in EXAMPLE48_PROBES]
    bad = [p for p in probes if not p.ok]
    report(2, len(probes) == 12 and not bad, f"boundary b probes: {len(probes) - len(bad)}/12 exact with strict boundary")


def _random_spec(rng: random.Random, family: str) -> SpaceSpec:
    def exp():
        return F(rng.randint(-8, 8), rng.choice([1, 2, 4]))

    p = rng.choice(GRID_PQ[:-1] if family == "F" else GRID_PQ)
    q = rng.choice(GRID_PQ)
    sigma = ParamSequence(F(rng.randint(1, 8), rng.randint(1, 8)), exp() / 4, exp(), exp())
    N = ParamSequence(F(rng.randint(1, 8), rng.randint(1, 8)), rng.choice([F(1, 2), F(1), F(3, 2), F(2)]), abs(exp()), abs(exp()))
    return SpaceSpec(family, rng.randint(1, 3), p, q, sigma, N)


def test_03_sandwich(report):
    rng = random.Random(3)
    violations = 0
    for _ in range(500):
        spec = _random_spec(rng, "F")
        lower, upper = bf_sandwich(spec)
        f_in = regularity(spec).contained
        if regularity(upper).contained and not f_in:
            violations += 1
        if f_in and not regularity(lower).contained:
            violations += 1
    report(3, violations == 0, f"B(max) => F => B(min) on 500 random specs: {violations} violations")


def test_04_sufficiency(report):
    rng = random.Random(4)
    violations = 0
    for _ in range(500):
        b = _random_spec(rng, "B")
        if besov_lebesgue_condition(b).is_member and not regularity(b).contained:
            violations += 1
        f = _random_spec(rng, "F")
        if triebel_local_condition(f)[0].is_member and not regularity(f).contained:
            violations += 1
    report(4, violations == 0, f"sufficient conditions imply containment on 2 x 500 random specs: {violations} violations")


def test_05_standardization(report):
    ok = True
    smap = build_map(ParamSequence(), GEOMETRIC_N, 1000)
    ok &= list(smap.k) == [max(0, j - 2) for j in range(1001)]
    rng = random.Random(5)
    for _ in range(20):
        N = ParamSequence(
            F(rng.randint(1, 16), rng.randint(1, 16)),
            rng.choice([F(1, 3), F(1, 2), F(3, 4), F(1), F(3, 2), F(2)]),
            F(rng.randint(0, 8), 4),
            F(rng.randint(0, 8), 4),
        )
        sigma = ParamSequence(1, F(rng.randint(-8, 8), 4), F(rng.randint(-8, 8), 4), F(rng.randint(-8, 8), 4))
        m = build_map(sigma, N, 1000)  # raises on any violated property
        k = np.asarray(m.k)
        ok &= bool(np.all(np.diff(k) <= m.kappa0) and np.all(k[m.c0 :] > k[: -m.c0]))
        ok &= list(m.k) == k_enumeration(N.log2, m.kappa0, 1000)
        r = np.exp(np.diff(beta_sequence(m, sigma).log_values))
        ok &= bool(np.all(r >= m.mu0 * (1 - 1e-9)) and np.all(r <= m.mu1 * (1 + 1e-9)))
    report(5, bool(ok), "k(j) = max(0, j-2) to 10^3; map properties and beta ratio bounds on 20 random N")


def _lr_probes():
    rs = (F(1, 2), F(1), F(3, 2), F(2), F(3), INF)
    probes = []
    # every boundary t = 0, beta r = -1
    for r in rs[:-1]:
        for gamma in (F(-2), F(-3, 2), F(-1), F(-1, 2), F(0), F(1)):
            probes.append((F(0), -1 / r, gamma / r, r))
            probes.append((F(0), -1 / r, gamma, r))
    for gamma in (F(-1), F(0), F(1)):
        probes.append((F(0), F(0), gamma, INF))
    rng = random.Random(6)
    while len(probes) < 200:
        probes.append((F(rng.choice([-1, 0, 0, 0, 1]), 8), F(rng.randint(-12, 4), 4), F(rng.randint(-8, 8), 4), rng.choice(rs)))
    return probes[:200]


def test_06_lr_oracle(report):
    probes = _lr_probes()
    boundary = sum(1 for t, b, g, r in probes if t == 0 and r != INF and b * r == -1)
    bad = [pr for pr in probes if lr_membership(ParamSequence(1, *pr[:3]), pr[3]).is_member is not condensation_member(*pr)]
    report(6, not bad and boundary >= 30, f"l_r verdicts vs condensation oracle: {len(bad)}/200 mismatches, {boundary} boundary probes")


def test_07_basic_function(report):
    ok, worst, slowest = True, 0.0, 0.0
    for L in range(5):
        t = time.perf_counter()
        phi = build_basic_function(L, 2.0)
        res = max(abs(phi.moment(g, 2.0**-12)) for g in range(L + 1))
        x = np.linspace(-phi.C1, phi.C1, 2**12 + 1)
        outside = np.concatenate([np.linspace(phi.C3, 2, 1000), -np.linspace(phi.C3, 2, 1000)])
        dt = time.perf_counter() - t
        ok &= res <= 1e-10 and bool(np.all(phi(x) >= phi.C2)) and bool(np.all(phi(outside) == 0))
        ok &= phi.C1 < phi.C3 < phi.lambda0 * phi.C1 and dt < 1.0
        worst, slowest = max(worst, res), max(slowest, dt)
    report(7, bool(ok), f"L = 0..4: max moment residual {worst:.1e}, slowest build {slowest:.2f} s")


NO_SPECS = [
    ("B", "1/2", "2", "2^(1*j)"),
    ("B", "1/2", "1", "2^(1*j)*(1+j)^-1"),
    ("B", "1", "2", "1"),
    ("B", "3", "2", "(1+j)^-1"),
    ("B", "4", "8", "(1+j)^1/8"),
    ("B", "2", "4", "1"),
    ("F", "2", "4", "1"),
    ("F", "1/2", "1", "2^(1/2*j)"),
    ("B", "inf", "inf", "(1+j)^1/4"),
    ("F", "3/2", "inf", "(1+j)^1/8"),
]

# (n, p, q, sigma, rho): B specs with p <= 1 inside L1_loc and rho in l_q
YES_SPECS = [
    (1, "1/2", "1", "2^(1*j)", "(1+j)^-2"),
    (1, "1/2", "2", "2^(1*j)*(1+j)^1", "(1+j)^-1"),
    (1, "1", "2", "(1+j)^3/4", "(1+j)^-3/4"),
    (1, "1/4", "inf", "2^(3*j)*(1+j)^2", "1"),
    (1, "1/2", "4", "2^(1*j)*(1+j)^1", "(1+j)^-1/2"),
    (2, "1/2", "1", "2^(2*j)", "(1+j)^-3/2"),
    (1, "1", "inf", "(1+j)^2", "ln(e+j)^-1"),
    (1, "3/4", "3/2", "2^(1/3*j)*(1+j)^1/2", "(1+j)^-1"),
    (1, "1/2", "2", "2^(1*j)*(1+j)^1/2*ln(e+j)^1", "(1+j)^-1/2*ln(e+j)^-1"),
    (1, "1", "1", "1", "(1+j)^-1*ln(e+j)^-2"),
]


def test_08_extremal_evidence(report):
    worst, ok = math.inf, True
    for fam, p, q, sigma in NO_SPECS:
        spec = SpaceSpec(fam, 1, as_extended(p), as_extended(q), parse_sequence(sigma))
        ok &= not regularity(spec).contained
        rep = witness_series(spec, K=2**14, K_min=2**4)
        ratios = rep.growth_ratios()
        ok &= rep.monotone and len(ratios) == 10
        worst = min(worst, min(ratios))
    cauchy = 0
    for n, p, q, sigma, rho in YES_SPECS:
        spec = SpaceSpec("B", n, as_extended(p), as_extended(q), parse_sequence(sigma))
        ok &= regularity(spec).contained
        rep = extremal_series(spec.sigma, spec.N, spec.p, n, rho=parse_sequence(rho), K=2**14, q=spec.q, K_min=2**4)
        inc = rep.increments()
        cauchy += all(b < a for a, b in zip(inc, inc[1:]))
    ok &= worst >= THETA and cauchy == len(YES_SPECS)
    report(8, bool(ok), f"10 'no' specs: min S_2K/S_K = {worst:.3f} (theta = {THETA}); Cauchy on {cauchy}/10 'yes' specs")


def test_09_lacunary(report):
    t = time.perf_counter()
    bounded = lacunary_L1(ParamSequence(1, 0, -1, 0), 12, 2**16).trace()
    growing = lacunary_L1(ParamSequence(1, 0, F(-1, 2), 0), 12, 2**16).trace()
    dt = time.perf_counter() - t
    spread = max(bounded) / min(bounded)
    ratio = growing[11] / growing[7]
    increasing = all(b > a for a, b in zip(growing, growing[1:]))
    ok = spread <= LACUNARY_MAX_SPREAD and increasing and ratio > LACUNARY_MIN_RATIO and dt < 30
    report(
        9,
        ok,
        f"l_2 family spread {spread:.4f} <= {LACUNARY_MAX_SPREAD}; non-l_2 trace(12)/trace(8) = {ratio:.4f} > {LACUNARY_MIN_RATIO}; {dt:.1f} s",
    )


def test_10_atoms(report):
    a = atom_requirements(ParamSequence(1, 2, 0, 0), GEOMETRIC_N, 1, 1, "B")
    b = atom_requirements(ParamSequence(), GEOMETRIC_N, F(1, 2), 2, "B")
    c = atom_requirements(ParamSequence(), GEOMETRIC_N, 2, 2, "B")
    ok = (a.M_min, a.L_bound, a.L_min) == (3, -3, -1) and (b.L_bound, b.L_min) == (0, 1) and c.M_min == 1
    ok &= not a.moment_conditions and b.moment_conditions
    floor_ok = True
    for fam, s, b_, p, q, ns in itertools.product("BF", (-3, 0, 2), (-2, 0, 3), GRID_PQ[:-1], GRID_PQ, (F(1, 2), F(1), F(3))):
        r = atom_requirements(ParamSequence(1, s, b_, 0), ParamSequence(1, ns, 0, 0), p, q, fam)
        floor_ok &= r.L_min >= -1 and r.L_min > r.L_bound and r.L_min - 1 <= max(r.L_bound, F(-2)) and r.M_min >= 0
        floor_ok &= r.moment_conditions is (r.L_min >= 0)
    report(10, bool(ok and floor_ok), "atom orders on the three worked examples; L_min >= -1 across the grid")
