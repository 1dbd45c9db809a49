import os
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polya_approx.distribution import PolyaParams, polya_variance, r_params
from polya_approx.errors import EvalError, InvalidDegree, InvalidParameter, PolyaError
from polya_approx.exact import exact_params, polya_pmf_exact
from polya_approx.fixtures import target
from polya_approx.operators import (
    THREADS_ENV,
    Bernstein,
    Lupas,
    PQBernstein,
    QBernstein,
    RationalBernstein,
    Stancu,
    TargetFunction,
    bernstein,
    bernstein_e2,
    evaluate_expectation,
    evaluate_on_grid,
    lupas,
    make_operator,
    pq_bernstein,
    q_bernstein,
    r_e2,
    r_operator,
    stancu,
)

ALL_OPS = [Bernstein(), Stancu(0.3), Lupas(), RationalBernstein(), QBernstein(0.95),
           PQBernstein(0.99, 0.95)]
CLASSICAL = ALL_OPS[:4]
e0, e1, e2 = target("e0"), target("e1"), target("e2")


def test_expectation_examples():
    uniform = np.full(3, 1 / 3)
    assert evaluate_expectation(uniform, e0, 2) == pytest.approx(1.0, abs=1e-15)
    assert evaluate_expectation([0, 0, 1, 0], np.sin, 3) == pytest.approx(np.sin(2 / 3))
    assert evaluate_expectation(uniform, e2, 2) == pytest.approx(5 / 12)
    with pytest.raises(ValueError):
        evaluate_expectation(uniform, e0, 3)


def test_operator_examples():
    assert bernstein(e2, 7, 0.3) == pytest.approx(0.09 + 0.21 / 7, abs=1e-15)
    assert r_operator(np.cos, 2, 0.5) == np.cos(0.5)
    assert r_operator(e2, 3, 0.5) == pytest.approx(5 / 18, abs=1e-15)
    assert q_bernstein(e1, 10, 0.3, 0.95) == pytest.approx(0.3, abs=1e-14)
    assert pq_bernstein(e0, 10, 0.4, 0.99, 0.95) == pytest.approx(1.0, abs=1e-14)
    assert pq_bernstein(np.cos, 10, 0.0, 0.99, 0.95) == 1.0


def test_stancu_example_against_oracle():
    # a = b = 1/2 and c = alpha = 1 is not the uniform urn; the oracle gives 7/16
    exact = polya_pmf_exact(exact_params("1/2", "1/2", 1, 2))
    expected = sum(p * Fraction(k, 2) ** 2 for k, p in enumerate(exact))
    assert expected == Fraction(7, 16)
    assert stancu(e2, 2, 0.5, 1.0) == pytest.approx(float(expected), abs=1e-15)


def test_lupas_example_against_oracle():
    exact = polya_pmf_exact(exact_params("1/2", "1/2", "1/2", 2))
    expected = sum(p * Fraction(k, 2) ** 2 for k, p in enumerate(exact))
    assert lupas(e2, 2, 0.5) == pytest.approx(float(expected), abs=1e-15)


@pytest.mark.parametrize("op", ALL_OPS, ids=lambda op: op.key)
def test_partition_of_unity_and_endpoints(op, grid101):
    for n in (1, 2, 5, 30, 200):
        if n < op.min_degree:
            continue
        assert np.max(np.abs(op.evaluate(e0, n, grid101) - 1)) <= 1e-12
        f = target("sin9pi2")
        assert op(f, n, 0.0) == pytest.approx(f(0.0), abs=1e-12)
        assert op(f, n, 1.0) == pytest.approx(f(1.0), abs=1e-12)


@pytest.mark.parametrize("op", ALL_OPS, ids=lambda op: op.key)
def test_e1_reproduction(op, grid101):
    for n in (2, 9, 64):
        assert np.max(np.abs(op.evaluate(e1, n, grid101) - grid101)) <= 1e-12


@pytest.mark.parametrize("op", ALL_OPS, ids=lambda op: op.key)
@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(2, 40),
    x=st.floats(0, 1),
    alpha=st.floats(-10, 10),
    beta=st.floats(-10, 10),
)
def test_linearity(op, n, x, alpha, beta):
    f, g = target("exp"), target("tent")
    combined = lambda t: alpha * f(t) + beta * g(t)
    expected = alpha * op(f, n, x) + beta * op(g, n, x)
    assert op(combined, n, x) == pytest.approx(expected, abs=1e-12 * (1 + abs(alpha) + abs(beta)))


@pytest.mark.parametrize("op", ALL_OPS, ids=lambda op: op.key)
@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 60), x=st.floats(0, 1))
def test_positivity(op, n, x):
    f = lambda t: (np.asarray(t) - 0.4) ** 2 * np.abs(np.sin(30 * np.asarray(t)))
    assert op(f, n, x) >= -1e-14


def test_r_e2_identity(grid101):
    op = RationalBernstein()
    for n in range(2, 101):
        values = op.evaluate(e2, n, grid101)
        identity = [x * x + polya_variance(r_params(x, n)) / n**2 for x in grid101]
        assert np.max(np.abs(values - identity)) <= 1e-12
        assert np.max(np.abs(values - r_e2(grid101, n))) <= 1e-12


def test_bernstein_e2_closed_form(grid101):
    for n in (1, 3, 50):
        np.testing.assert_allclose(
            Bernstein().evaluate(e2, n, grid101), bernstein_e2(grid101, n), atol=1e-15
        )


def test_uniform_convergence_witness(grid101):
    errors = [np.max(np.abs(RationalBernstein().evaluate(e2, n, grid101) - grid101**2))
              for n in (2, 4, 8, 16, 32, 64, 128, 256, 512, 1024)]
    assert all(b <= a for a, b in zip(errors, errors[1:]))


def test_degree_and_parameter_validation():
    with pytest.raises(InvalidDegree):
        r_operator(e2, 1, 0.5)
    with pytest.raises(InvalidDegree):
        bernstein(e2, 0, 0.5)
    with pytest.raises(InvalidParameter):
        Stancu(-0.1)
    with pytest.raises(InvalidParameter):
        QBernstein(1.2)
    with pytest.raises(InvalidParameter):
        PQBernstein(0.9, 0.95)
    with pytest.raises(PolyaError):
        bernstein(e2, 5, 1.5)
    with pytest.raises(InvalidParameter):
        make_operator("nope")
    assert make_operator("pq_bernstein", p=0.99, q=0.95) == PQBernstein(0.99, 0.95)


def test_scalar_only_functions_are_supported():
    import math

    assert bernstein(math.exp, 6, 0.2) == pytest.approx(bernstein(np.exp, 6, 0.2), abs=1e-15)


def test_failing_function_raises_eval_error():
    def broken(x):
        raise RuntimeError("boom")

    with pytest.raises(EvalError):
        bernstein(broken, 4, 0.3)


def test_evaluate_on_grid_examples():
    records = evaluate_on_grid(Bernstein(), e1, 10, [0, 0.5, 1])
    assert [r.error for r in records] == pytest.approx([0, 0, 0], abs=1e-15)
    (record,) = evaluate_on_grid(RationalBernstein(), e2, 3, [0.5])
    assert record.error == pytest.approx(1 / 36, abs=1e-15)
    records = evaluate_on_grid(RationalBernstein(), target("jump"), 10, [0, 1])
    assert [r.error for r in records] == [0.0, 0.0]
    with pytest.raises(ValueError):
        evaluate_on_grid(Bernstein(), e1, 10, [0.5, 0.2])
    with pytest.raises(ValueError):
        evaluate_on_grid(Bernstein(), e1, 10, [0.5, 1.2])


def test_jump_is_right_closed_at_node():
    # n divisible by 3 puts a node exactly on the jump, where f = 4/3
    f = target("jump")
    assert f(1 / 3) == pytest.approx(4 / 3)
    assert RationalBernstein()(f, 3, 1.0) == 2.0


def test_threaded_evaluation_matches_serial(monkeypatch):
    grid = np.linspace(0, 1, 41)
    f = target("sin9pi2")
    monkeypatch.setenv(THREADS_ENV, "1")
    serial = RationalBernstein().evaluate(f, 300, grid)
    monkeypatch.setenv(THREADS_ENV, "4")
    threaded = RationalBernstein().evaluate(f, 300, grid)
    assert serial.tolist() == threaded.tolist()


def test_target_function_smoothness_levels():
    f = TargetFunction(np.abs, "abs", "continuous")
    assert f.at_least("bounded") and f.at_least("continuous") and not f.at_least("C1")
    with pytest.raises(ValueError):
        TargetFunction(np.abs, "abs", "smooth")
