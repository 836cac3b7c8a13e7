import io
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import k_enumeration
from regdist._exact import INF
from regdist.decide import GEOMETRIC_N
from regdist.lr import InvalidQuery, Membership
from regdist.seqcore import ParamSequence, admissibility_bounds
from regdist.standardize import beta_sequence, build_map, check_map, dump_csv, lr_transfer_check

ONE = ParamSequence()


def test_dyadic_map():
    smap = build_map(ONE, GEOMETRIC_N, 200)
    assert list(smap.k) == k_enumeration(lambda m: m, 1, 200)
    assert list(smap.k) == [max(0, j - 2) for j in range(201)]
    assert smap.kappa0 == 1 and smap.kappa1 == 1


def test_fourfold_map():
    N = ParamSequence(1, 2, 0, 0)
    smap = build_map(ONE, N, 200)
    assert list(smap.k) == k_enumeration(lambda m: 2 * m, 1, 200)
    assert list(smap.k) == [max(0, math.ceil((j - 1) / 2) - 1) for j in range(201)]


def test_slow_map_matches_enumeration():
    # lambda0 = 2^(1/3), kappa0 = 3
    N = ParamSequence(1, F(1, 3), 0, 0)
    smap = build_map(ONE, N, 150)
    assert smap.kappa0 == 3
    assert list(smap.k) == k_enumeration(lambda m: m / 3, 3, 150)


def test_k_at_zero():
    assert build_map(ONE, GEOMETRIC_N, 5).k[0] == 0
    # N_{kappa0} < 1/2 pushes k(0) up: N_j = 2^(j - 5)
    N = ParamSequence(F(1, 32), 1, 0, 0)
    smap = build_map(ONE, N, 10)
    assert smap.k == tuple(k_enumeration(lambda m: m - 5, 1, 10))
    assert smap.k[0] == 3


def test_constants_dyadic():
    # j0 is the least j with 2^(j-1) > lambda1^kappa0 N_0 = 2, so j0 = 3 and c0 = kappa1 + j0 = 4
    smap = build_map(ONE, GEOMETRIC_N, 10)
    assert (smap.j0, smap.c0) == (3, 4)
    assert 2 ** (smap.j0 - 1) > 2 and not 2 ** (smap.j0 - 2) > 2


def test_mu_constants():
    sigma = ParamSequence(1, 1, -1, 0)  # d0 = 1, d1 = 2
    smap = build_map(sigma, ParamSequence(1, F(1, 2), 0, 0), 10)
    assert smap.kappa0 == 2
    assert smap.mu0 == pytest.approx(1.0) and smap.mu1 == pytest.approx(4.0)


def test_beta_examples():
    smap = build_map(ONE, GEOMETRIC_N, 30)
    assert beta_sequence(smap, ONE).values == pytest.approx([1.0] * 31)
    sigma = ParamSequence(1, 1, 0, 0)
    beta = beta_sequence(build_map(sigma, GEOMETRIC_N, 30), sigma)
    assert beta.values == pytest.approx([2.0 ** max(0, j - 2) for j in range(31)])
    with pytest.raises(InvalidQuery):
        beta_sequence(smap, ONE, 31)


def test_csv():
    sigma = ParamSequence(1, 1, 0, 0)
    smap = build_map(sigma, GEOMETRIC_N, 4)
    buf = io.StringIO()
    text = dump_csv(smap, sigma, buf)
    assert buf.getvalue() == text
    assert text.splitlines() == ["j,k,beta", "0,0,1", "1,0,1", "2,0,1", "3,1,2", "4,2,4"]


def test_bad_inputs():
    with pytest.raises(InvalidQuery):
        build_map(ONE, GEOMETRIC_N, 0)
    with pytest.raises(InvalidQuery):
        build_map(ONE, ParamSequence(1, 0, 1, 0), 10)


def test_transfer_constant_sigma():
    rep = lr_transfer_check(ONE, GEOMETRIC_N, 1, 100)
    assert rep.A == pytest.approx(101)
    assert rep.c0 == 4
    assert rep.upper_sum == pytest.approx(99)  # l = 0..k(100) = 98
    assert rep.A <= rep.c0 * rep.upper_sum
    assert rep.symbolic.status is Membership.NOT_MEMBER


def test_transfer_geometric_converges():
    rep = lr_transfer_check(ParamSequence(1, 1, 0, 0), GEOMETRIC_N, 1, 200)
    assert rep.symbolic.is_member
    # A_J = 3 (three leading ones) + sum_{m>=1} 2^-m -> 4; B_J -> 2
    assert rep.A == pytest.approx(4.0, rel=1e-12)
    assert rep.B == pytest.approx(2.0, rel=1e-12)


def test_transfer_linear_diverges_together():
    rep = lr_transfer_check(ParamSequence(1, 0, 1, 0), GEOMETRIC_N, 1, 4000)
    assert rep.symbolic.status is Membership.NOT_MEMBER
    a, b = np.asarray(rep.trace_beta), np.asarray(rep.trace_sigma)
    assert np.all(np.diff(a) > 0) and np.all(np.diff(b) > 0)
    # A_J = 2 + H_(J-1) and B_J = H_(J+1): the gap stays fixed while both grow like ln J
    J = 4000
    assert a[-1] - b[-1] == pytest.approx(2 - 1 / J - 1 / (J + 1), rel=1e-9)
    assert b[-1] > math.log(J)


def test_transfer_sup():
    rep = lr_transfer_check(ParamSequence(1, 0, -1, 0), GEOMETRIC_N, INF, 50)
    assert rep.upper_ok and rep.lower_ok
    assert not rep.symbolic.is_member


exps = st.fractions(min_value=-2, max_value=2, max_denominator=4)
sigmas = st.builds(ParamSequence, st.fractions(min_value=F(1, 4), max_value=4, max_denominator=4), exps, exps, exps)
nonneg = st.fractions(min_value=0, max_value=2, max_denominator=4)
Ns = st.builds(
    ParamSequence,
    st.fractions(min_value=F(1, 8), max_value=8, max_denominator=8),
    st.sampled_from([F(1, 3), F(1, 2), F(1), F(3, 2), F(2)]),
    nonneg,
    nonneg,
)


@settings(max_examples=100, deadline=None)
@given(sigmas, Ns)
def test_map_invariants(sigma, N):
    smap = build_map(sigma, N, 300)
    check_map(smap)
    k = np.asarray(smap.k)
    assert np.all(np.diff(k) >= 0)
    assert np.all(np.diff(k) <= smap.kappa0)
    assert np.all(k[smap.c0 :] > k[: -smap.c0])
    # minimality against the definition
    for j in range(0, 301, 7):
        kj = smap.k[j]
        assert j - 1 <= float(N.log2(kj + smap.kappa0)) + 1e-9
        if kj > 0:
            assert j - 1 > float(N.log2(kj - 1 + smap.kappa0)) - 1e-9


@settings(max_examples=100, deadline=None)
@given(sigmas, Ns)
def test_beta_ratio_bounds(sigma, N):
    smap = build_map(sigma, N, 300)
    beta = beta_sequence(smap, sigma)
    r = np.exp(np.diff(beta.log_values))
    rep = admissibility_bounds(sigma)
    assert smap.mu0 == min(1.0, rep.d0**smap.kappa0)
    assert np.all(r >= smap.mu0 * (1 - 1e-9)) and np.all(r <= smap.mu1 * (1 + 1e-9))


@settings(max_examples=60, deadline=None)
@given(sigmas, Ns, st.sampled_from([F(1, 2), F(1), F(2), F(3), INF]))
def test_transfer_inequalities(sigma, N, r):
    rep = lr_transfer_check(sigma, N, r, 300)
    assert rep.upper_ok and rep.lower_ok


def test_exact_tie_in_scan():
    # N_17 = (1/3) 2^(17/2) 18^(1/2) = 2^9 exactly; floats put it a hair below
    N = ParamSequence(F(1, 3), F(1, 2), F(1, 2), 0)
    assert N.cmp_pow2(17, F(9)) == 0
    smap = build_map(ONE, N, 12)
    j = 10  # 2^(j-1) = 2^9 <= N_17 with equality
    assert smap.k[j] + smap.kappa0 == 17
