import re
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from polya_approx.distribution import (
    PolyaParams,
    central_moment_recursion,
    central_moments,
    enumerated_moments,
    polya_mean,
    polya_pmf,
    polya_variance,
    r_params,
    rising_factorial,
    support,
)
from polya_approx.errors import DegenerateTotal, InvalidDegree, InvalidParams, OverflowBudget
from polya_approx.exact import dump_exact, exact_params, load_exact, polya_pmf_exact

GOLDEN = Path(__file__).parent / "golden"
F = Fraction


# -- rising factorial ------------------------------------------------------------


@pytest.mark.parametrize("x,h", [(2.5, -1.0), (F(1, 3), F(1, 9)), (0.0, 0.0)])
def test_rising_factorial_empty_product(x, h):
    assert rising_factorial(x, h, 0) == 1


def test_rising_factorial_examples():
    assert rising_factorial(1, 1, 3) == 6
    assert rising_factorial(0.5, -0.5, 2) == 0
    assert rising_factorial(F(1, 3), F(-1, 9), 3) == F(3, 9) * F(2, 9) * F(1, 9)


# -- parameters --------------------------------------------------------------------


def test_r_params_examples():
    assert r_params(0.0, 10) == PolyaParams(0.0, 1.0, 0.0, 10)
    assert r_params(F(1, 2), 2) == PolyaParams(F(1, 2), F(1, 2), F(-1, 2), 2)
    assert r_params(F(1, 3), 4) == PolyaParams(F(1, 3), F(2, 3), F(-1, 9), 4)


def test_r_params_rejects_small_degree_and_bad_x():
    with pytest.raises(InvalidDegree):
        r_params(0.3, 1)
    with pytest.raises(InvalidParams):
        r_params(1.5, 4)


@pytest.mark.parametrize(
    "args,fragment",
    [
        ((-0.1, 1, 0, 3), "a >= 0"),
        ((1, -0.1, 0, 3), "b >= 0"),
        ((1, 2, -0.6, 3), "a + (n-1)c >= 0"),
        ((2, 1, -0.6, 3), "b + (n-1)c >= 0"),
        ((1, 1, 0, 0), "n must be"),
        ((1, 1, 0, 2.5), "n must be"),
    ],
)
def test_invalid_params_name_the_inequality(args, fragment):
    with pytest.raises(InvalidParams, match=re.escape(fragment)):
        PolyaParams(*args)


def test_admissibility_tolerance_accepts_roundoff():
    # a + (n-1)c analytically 0, rounds slightly negative
    for n in range(2, 300):
        for x in (0.5, 0.1, 0.7):
            m = min(x, 1 - x)
            PolyaParams(x, 1 - x, -m / (n - 1), n)


def test_degenerate_total_is_reported():
    with pytest.raises(DegenerateTotal):
        polya_pmf(PolyaParams(0.0, 0.0, 1.0, 3))


# -- floating pmf ----------------------------------------------------------------------


def test_pmf_examples():
    np.testing.assert_allclose(
        polya_pmf(PolyaParams(0.3, 0.7, 0.0, 5)), stats.binom.pmf(range(6), 5, 0.3), rtol=1e-14
    )
    np.testing.assert_allclose(polya_pmf(PolyaParams(1, 1, 1, 2)), [1 / 3] * 3, rtol=1e-15)
    assert polya_pmf(PolyaParams(0.5, 0.5, -0.5, 2)).tolist() == [0.0, 1.0, 0.0]


def test_pmf_matches_beta_binomial():
    # c > 0 is the beta-binomial with alpha = a/c, beta = b/c
    for a, b, c, n in [(0.3, 0.7, 0.2, 40), (2.0, 5.0, 1.0, 25), (0.01, 0.99, 0.5, 200)]:
        expected = stats.betabinom.pmf(range(n + 1), n, a / c, b / c)
        np.testing.assert_allclose(polya_pmf(PolyaParams(a, b, c, n)), expected, rtol=1e-9)


def test_pmf_matches_hypergeometric():
    # c = -1 with integer a, b is drawing without replacement
    probs = polya_pmf(PolyaParams(7.0, 5.0, -1.0, 6))
    np.testing.assert_allclose(probs, stats.hypergeom.pmf(range(7), 12, 7, 6), rtol=1e-13)


@pytest.mark.parametrize("x,k", [(0.0, 0), (1.0, -1)])
def test_endpoints_are_point_masses(x, k):
    for n in (2, 7, 100):
        probs = polya_pmf(r_params(x, n))
        assert probs[k] == 1.0 and probs.sum() == 1.0


def test_support_exact_zeros_at_half():
    for n in range(2, 60):
        probs = polya_pmf(r_params(0.5, n))
        assert support(r_params(0.5, n)) == (1, n - 1)
        assert probs[0] == 0.0 and probs[-1] == 0.0
        assert np.all(probs[1:-1] > 0)


def test_large_degree_is_finite():
    for n in (1000, 1 << 14):
        for x in (0.01, 1 / 3, 0.5):
            probs = polya_pmf(r_params(x, n))
            assert np.all(np.isfinite(probs))
            assert abs(probs.sum() - 1) < 1e-12


admissible = st.tuples(
    st.integers(1, 60),
    st.floats(0.0, 5.0),
    st.floats(0.01, 5.0),
    st.floats(-1.0, 1.0),
).filter(lambda t: t[1] + t[2] > 0).map(
    lambda t: PolyaParams(
        t[1], t[2], max(t[3], -min(t[1], t[2]) / max(t[0] - 1, 1)), t[0]
    )
)


@settings(max_examples=300, deadline=None)
@given(admissible)
def test_pmf_normalized_and_nonnegative(params):
    try:
        probs = polya_pmf(params)
    except DegenerateTotal:
        return
    assert len(probs) == params.n + 1
    assert np.all(probs >= 0)
    assert abs(probs.sum() - 1) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(admissible)
def test_pmf_reversal_symmetry(params):
    try:
        probs = polya_pmf(params)
    except DegenerateTotal:
        return
    np.testing.assert_allclose(polya_pmf(params.reversed())[::-1], probs, rtol=1e-13, atol=1e-300)


@settings(max_examples=200, deadline=None)
@given(admissible)
def test_mean_and_variance_match_enumeration(params):
    try:
        probs = polya_pmf(params)
    except DegenerateTotal:
        return
    enum = enumerated_moments(probs, 2)
    n = params.n
    assert enum.mean == pytest.approx(polya_mean(params), rel=1e-11, abs=1e-12 * n)
    assert enum.variance == pytest.approx(polya_variance(params), rel=1e-9, abs=1e-11 * n * n)


# -- moments -----------------------------------------------------------------------------


def test_mean_and_variance_examples():
    assert polya_mean(PolyaParams(0.3, 0.7, 0.25, 8)) == pytest.approx(8 * 0.3)
    assert polya_mean(PolyaParams(0, 1, 0, 10)) == 0
    assert polya_mean(PolyaParams(1, 1, 1, 2)) == 1
    assert polya_variance(PolyaParams(0.5, 0.5, -0.5, 2)) == 0
    assert polya_variance(PolyaParams(0.3, 0.7, 0.0, 9)) == pytest.approx(9 * 0.21)
    assert polya_variance(PolyaParams(F(1), F(1), F(1), 2)) == F(2, 3)


def test_recursion_examples():
    p = 0.3
    assert central_moment_recursion(PolyaParams(p, 1 - p, 0.0, 12), 3) == pytest.approx(
        12 * p * (1 - p) * (1 - 2 * p)
    )
    assert central_moment_recursion(PolyaParams(F(1, 2), F(1, 2), F(-1, 2), 2), 3) == 0
    assert central_moment_recursion(PolyaParams(F(2), F(2), F(1, 3), 9), 3) == 0


def test_recursion_is_exact_in_rationals():
    # exact arithmetic: recursion and enumeration agree to the last digit
    for params in [exact_params("1/3", "2/3", "-1/9", 4), exact_params(2, 3, "1/2", 7),
                   exact_params(5, 4, -1, 5), exact_params("1/10", "9/10", "-1/90", 10)]:
        probs = polya_pmf_exact(params)
        mean = sum(k * p for k, p in enumerate(probs))
        assert mean == polya_mean(params)
        for k in range(2, 7):
            enumerated = sum((j - mean) ** k * p for j, p in enumerate(probs))
            assert central_moment_recursion(params, k) == enumerated, (params, k)


def test_moment_set_caches_all_orders():
    ms = central_moments(r_params(0.2, 30), 6)
    assert ms.central[0] == 1 and ms.central[1] == 0
    assert set(ms.central) == set(range(7))
    assert ms.central[2] == pytest.approx(ms.variance)


def test_recursion_beyond_degree_falls_back():
    # sample size 2 with c = -a: the (1 + (k-1)c/s) factor vanishes at k = 3
    params = PolyaParams(F(1, 2), F(1, 2), F(-1, 2), 2)
    assert central_moments(params, 5).central[4] == 0
    params = PolyaParams(1.0, 1.0, -1.0, 2)
    enum = enumerated_moments(polya_pmf(params), 5)
    ms = central_moments(params, 5)
    for k in range(6):
        assert ms.central[k] == pytest.approx(enum.central[k], abs=1e-12)


# -- exact oracle --------------------------------------------------------------------------


def test_exact_examples():
    assert polya_pmf_exact(exact_params(1, 1, 1, 2)) == [F(1, 3)] * 3
    assert polya_pmf_exact(exact_params(1, 1, 0, 4)) == [F(c, 16) for c in (1, 4, 6, 4, 1)]
    assert sum(polya_pmf_exact(exact_params("1/3", "2/3", "-1/9", 4))) == 1


def test_exact_golden_file():
    golden = (GOLDEN / "r4_x1_3.txt").read_text()
    probs = polya_pmf_exact(r_params(F(1, 3), 4))
    assert probs == load_exact(golden)
    assert dump_exact(probs) == golden
    np.testing.assert_allclose(polya_pmf(r_params(1 / 3, 4)), [float(p) for p in probs], rtol=1e-15)


def test_exact_symmetry():
    params = exact_params("2/7", "3/5", "-1/35", 8)
    assert polya_pmf_exact(params.reversed())[::-1] == polya_pmf_exact(params)


def test_exact_budget():
    with pytest.raises(OverflowBudget):
        polya_pmf_exact(exact_params(1, 1, 0, 41))
    assert len(polya_pmf_exact(exact_params(1, 1, 0, 60), max_n=60)) == 61
    with pytest.raises(OverflowBudget):
        polya_pmf_exact(exact_params(1, 3, "1/7", 30), max_digits=5)


def test_load_exact_rejects_gaps():
    with pytest.raises(ValueError):
        load_exact("0 1/2\n2 1/2\n")
