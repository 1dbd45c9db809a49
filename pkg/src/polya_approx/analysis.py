"""Numerical checks of error bounds and asymptotics for the rational operator.

``E(x) = x (1-x) (1 - min(x, 1-x))`` controls everything here: the urn of
``R_n`` at ``x`` has ``Var(X/n) <= E(x)/n``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .distribution import polya_variance, r_params
from .errors import InapplicableTheorem, InvalidDegree, MissingDerivative
from .operators import (
    Bernstein,
    Lupas,
    Operator,
    PQBernstein,
    QBernstein,
    RationalBernstein,
    TargetFunction,
    _evaluate,
    as_target,
)

POPOVICIU_CONSTANT = 31.0 / 27.0
DERIVATIVE_CONSTANT = (4.0 + 6.0 * math.sqrt(3.0)) / 27.0
#: Optimal Popoviciu constant for the classical Bernstein operator (Sikkema),
#: 1.0898873...; the denominator is 5832 (5932 is a common misprint).
SIKKEMA_CONSTANT = (4306.0 + 837.0 * math.sqrt(6.0)) / 5832.0
BOUND_SLACK = 1e-12


def comparison_operators() -> tuple[Operator, ...]:
    """Default comparison set: B_n, Lupas, R_n, q=0.95 and (p,q)=(0.99, 0.95)."""
    return (Bernstein(), Lupas(), RationalBernstein(), QBernstein(0.95), PQBernstein(0.99, 0.95))


def envelope(x):
    """``x (1-x) (1 - min(x, 1-x))``, maximal (4/27) at x = 1/3 and 2/3."""
    x = np.asarray(x, dtype=float)
    return x * (1 - x) * (1 - np.minimum(x, 1 - x))


def variance_envelope(x, n: int):
    """Variance of ``X/n`` for the urn of ``R_n``:

        x (1-x)/n * (1 - m / (1 - m/(n-1))),   m = min(x, 1-x).
    """
    if n < 2:
        raise InvalidDegree(f"n must be >= 2, got {n}")
    x = np.asarray(x, dtype=float)
    m = np.minimum(x, 1 - x)
    return x * (1 - x) / n * (1 - m / (1 - m / (n - 1)))


def r_e2_error(x, n: int):
    """Closed form of ``R_n(x^2; x) - x^2 = x(1-x)(n-1-n m) / (n (n-1-m))``."""
    if n < 2:
        raise InvalidDegree(f"n must be >= 2, got {n}")
    x = np.asarray(x, dtype=float)
    m = np.minimum(x, 1 - x)
    return x * (1 - x) * (n - 1 - n * m) / (n * (n - 1 - m))


def r_e2_sup_error(n: int) -> float:
    """``max over [0, 1]`` of :func:`r_e2_error` (symmetric, so searched on [0, 1/2])."""
    res = minimize_scalar(
        lambda x: -float(r_e2_error(x, n)), bounds=(0.0, 0.5), method="bounded",
        options={"xatol": 1e-12},
    )
    return max(-float(res.fun), float(r_e2_error(0.5, n)))


def bernstein_e2_sup_error(n: int) -> float:
    """``max x(1-x)/n = 1/(4n)``, attained at x = 1/2."""
    return 1.0 / (4 * n)


# -- modulus of continuity ---------------------------------------------------


@dataclass(frozen=True)
class ModulusEstimate:
    delta: float
    lower: float
    upper: float
    method: str  # "exact" or "grid"


def modulus_of_continuity(f, delta: float, resolution: int = 2001) -> ModulusEstimate:
    """``omega(delta) = max |f(x) - f(y)|`` over ``|x - y| <= delta`` in [0, 1].

    A closed-form modulus attached to ``f`` is returned as is. Otherwise the
    maximum is searched over a ``resolution``-point grid (all grid pairs in
    range, plus the off-grid partners ``x +- delta`` and ``x +- delta/2``), then
    refined once on a 10x finer patch around the best pair. ``lower`` is the
    refined maximum of actually sampled pairs; ``upper`` adds the gain of the
    refinement pass once more.
    """
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if resolution < 100:
        raise ValueError(f"resolution must be >= 100, got {resolution}")
    f = as_target(f)
    if f.exact_modulus is not None:
        value = float(f.exact_modulus(delta))
        return ModulusEstimate(delta, value, value, "exact")

    xs = np.linspace(0.0, 1.0, resolution)
    h = xs[1] - xs[0]
    fx = f(xs)
    best, pair = 0.0, (0.0, 0.0)

    def consider(x0, x1, f0, f1):
        nonlocal best, pair
        if len(x0) == 0:
            return
        diff = np.abs(f1 - f0)
        i = int(np.argmax(diff))
        if diff[i] > best:
            best, pair = float(diff[i]), (float(x0[i]), float(x1[i]))

    shifts = min(int(math.floor(delta / h * (1 + 1e-12))), resolution - 1)
    for j in range(1, shifts + 1):
        consider(xs[:-j], xs[j:], fx[:-j], fx[j:])
    for t in (delta, delta / 2):
        if t < 1:
            base = xs[xs + t <= 1.0]
            consider(base, base + t, f(base), f(base + t))
            top = xs[xs - t >= 0.0]
            consider(top - t, top, f(top - t), f(top))
    coarse = best

    local = np.linspace(-h, h, 21)
    x0 = np.clip(pair[0] + local, 0.0, 1.0)
    x1 = np.clip(pair[1] + local, 0.0, 1.0)
    X0, X1 = np.meshgrid(x0, x1)
    ok = np.abs(X1 - X0) <= delta
    consider(X0[ok], X1[ok], f(X0[ok]), f(X1[ok]))
    for t in (delta, -delta):
        partner = x0 + t
        inside = (partner >= 0) & (partner <= 1)
        consider(x0[inside], partner[inside], f(x0[inside]), f(partner[inside]))
    refined = best
    return ModulusEstimate(delta, refined, refined + (refined - coarse), "grid")


def derivative_modulus(f: TargetFunction, delta: float, resolution: int = 2001) -> ModulusEstimate:
    """Modulus of continuity of ``f'`` from closed-form metadata or the derivative map."""
    if f.exact_modulus_deriv is not None:
        value = float(f.exact_modulus_deriv(delta))
        return ModulusEstimate(delta, value, value, "exact")
    if f.derivative is None:
        raise MissingDerivative(f"{f.label} carries neither a derivative nor its modulus")
    deriv = TargetFunction(f.derivative, f"{f.label}'", "continuous")
    return modulus_of_continuity(deriv, delta, resolution)


# -- probabilistic lemma ------------------------------------------------------


def lemma_bound_a(sigma2: float, omega: ModulusEstimate) -> float:
    """``omega(delta) (1 + sigma^2 / delta^2)``: bound on ``|E f(X) - f(EX)|``."""
    return omega.upper * (1.0 + sigma2 / omega.delta**2)


def lemma_bound_b(sigma2: float, omega1: ModulusEstimate) -> float:
    """``omega_1(delta) (sigma^2 / delta + sigma)`` for continuously differentiable f."""
    return omega1.upper * (sigma2 / omega1.delta + math.sqrt(sigma2))


# -- bound reports -------------------------------------------------------------


@dataclass
class BoundReport:
    theorem: str
    operator: str
    f: str
    n: int
    grid: list[float]
    lhs: list[float]
    rhs: list[float]
    sup_lhs: float
    argmax_x: float
    satisfied: bool
    margin: float
    omega: float
    omega_method: str
    flat_constant: float
    flat_rhs: float
    flat_satisfied: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _report(theorem, f, n, grid, lhs, rhs, omega, flat_constant, flat_rhs) -> BoundReport:
    i = int(np.argmax(lhs))  # first maximum, i.e. smallest x
    slack = rhs - lhs
    satisfied = bool(np.all(slack >= -BOUND_SLACK))
    # margin ignores points where the bound is 0 (endpoint interpolation)
    active = rhs > 0
    margin = float(np.min(slack[active])) if active.any() else float(np.min(slack))
    sup = float(lhs[i])
    return BoundReport(
        theorem=theorem,
        operator=RationalBernstein.key,
        f=f.label,
        n=n,
        grid=[float(x) for x in grid],
        lhs=[float(v) for v in lhs],
        rhs=[float(v) for v in rhs],
        sup_lhs=sup,
        argmax_x=float(grid[i]),
        satisfied=satisfied,
        margin=margin,
        omega=omega.upper,
        omega_method=omega.method,
        flat_constant=flat_constant,
        flat_rhs=flat_rhs,
        flat_satisfied=sup <= flat_rhs + BOUND_SLACK,
    )


def _r_errors(f, n, grid):
    grid = np.asarray(grid, dtype=float)
    values = RationalBernstein().evaluate(f, n, grid)
    return grid, np.abs(values - np.atleast_1d(_evaluate(f, grid)))


def popoviciu_check(f, n: int, grid: Sequence[float], resolution: int = 2001) -> BoundReport:
    """Check ``|R_n f - f| <= omega(n^-1/2) (1 + E(x))`` and its flat 31/27 form."""
    f = as_target(f)
    if not f.at_least("continuous"):
        raise InapplicableTheorem(f"{f.label} is not continuous; the bound is vacuous")
    grid, lhs = _r_errors(f, n, grid)
    omega = modulus_of_continuity(f, n**-0.5, resolution)
    rhs = omega.upper * (1.0 + envelope(grid))
    return _report(
        "popoviciu", f, n, grid, lhs, rhs, omega,
        POPOVICIU_CONSTANT, POPOVICIU_CONSTANT * omega.upper,
    )


def derivative_bound_check(f, n: int, grid: Sequence[float], resolution: int = 2001) -> BoundReport:
    """Check ``|R_n f - f| <= n^-1/2 omega_1(n^-1/2) (E + sqrt(E))`` and the
    flat ``(4 + 6 sqrt 3)/27`` form."""
    f = as_target(f)
    if not f.at_least("C1"):
        raise MissingDerivative(f"{f.label} is not continuously differentiable")
    omega1 = derivative_modulus(f, n**-0.5, resolution)
    grid, lhs = _r_errors(f, n, grid)
    e = envelope(grid)
    scale = n**-0.5 * omega1.upper
    rhs = scale * (e + np.sqrt(e))
    return _report(
        "derivative", f, n, grid, lhs, rhs, omega1,
        DERIVATIVE_CONSTANT, DERIVATIVE_CONSTANT * scale,
    )


# -- asymptotics ---------------------------------------------------------------


@dataclass
class VoronovskayaSample:
    f: str
    x: float
    n_values: list[int]
    scaled_errors: list[float]
    limit_predicted: float
    gaps: list[float] = field(default_factory=list)

    @property
    def last_gap(self) -> float:
        return self.gaps[-1]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["last_gap"] = self.last_gap
        return d


def voronovskaya_estimate(f, x: float, n_values: Sequence[int], f2=None) -> VoronovskayaSample:
    """``n (R_n f(x) - f(x))`` along ``n_values`` against its limit
    ``f''(x)/2 * E(x)``.

    ``f2`` defaults to the second derivative carried by ``f``; it is never
    approximated numerically.
    """
    f = as_target(f)
    f2 = f2 if f2 is not None else f.second_derivative
    if f2 is None or not f.at_least("C2"):
        raise MissingDerivative(f"{f.label} needs a twice continuously differentiable form with f''")
    n_values = [int(n) for n in n_values]
    if not n_values or n_values[0] < 2 or any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValueError("n_values must be strictly increasing integers >= 2")
    if not 0 <= x <= 1:
        raise ValueError(f"x must lie in [0, 1], got {x}")

    op = RationalBernstein()
    fx = float(_evaluate(f, x))
    scaled = [n * (op(f, n, x) - fx) for n in n_values]
    limit = 0.5 * float(_evaluate(f2, x)) * float(envelope(x))
    return VoronovskayaSample(
        f=f.label, x=float(x), n_values=n_values, scaled_errors=scaled,
        limit_predicted=limit, gaps=[abs(s - limit) for s in scaled],
    )


def dyadic(n_min: int, n_max: int) -> list[int]:
    """Powers of two in ``[n_min, n_max]``."""
    out, n = [], 1
    while n <= n_max:
        if n >= n_min:
            out.append(n)
        n *= 2
    return out


# -- minimal degree search -----------------------------------------------------


@dataclass
class MinDegreeResult:
    operator: str
    f: str
    tol: float
    n_min: Optional[int]
    profile: list[tuple[int, float]]

    @property
    def reached(self) -> bool:
        return self.n_min is not None

    def to_dict(self) -> dict:
        return {
            "operator": self.operator,
            "fixture": self.f,
            "tol": self.tol,
            "n_min": self.n_min,
            "reached": self.reached,
            "profile": [[n, e] for n, e in self.profile],
        }


def sup_error(op: Operator, f, n: int, grid: Sequence[float]) -> float:
    values = op.evaluate(f, n, grid)
    return float(np.max(np.abs(values - np.atleast_1d(_evaluate(f, np.asarray(grid, float))))))


def min_degree_for_tolerance(
    op: Operator,
    f,
    tol: float,
    grid: Sequence[float] = (),
    n_max: int = 1 << 20,
    error_fn: Optional[Callable[[int], float]] = None,
    rtol: float = 1e-9,
) -> MinDegreeResult:
    """Smallest ``n`` past the last observed failure with sup error over
    ``grid`` at most ``tol``.

    Doubling from the operator's smallest degree runs until two consecutive
    doubling points meet ``tol``; the last failing point and its successor
    bracket the answer, and bisection narrows it. The second passing point
    guards against errors that vanish at tiny ``n`` (``R_2`` is exact at
    x = 1/2) and grow again. Error need not be monotone in ``n`` for general
    ``f``; the result certifies only that ``n`` meets ``tol`` and ``n - 1``
    does not. ``error_fn(n)`` replaces grid evaluation (e.g. a closed form).
    Errors within ``rtol`` relative of ``tol`` count as meeting it, which
    absorbs summation round-off when the error equals the tolerance
    analytically.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    f = as_target(f)
    if error_fn is None:
        if len(grid) == 0:
            raise ValueError("either a grid or error_fn is required")
        error_fn = lambda n: sup_error(op, f, n, grid)
    cache: dict[int, float] = {}

    def err(n):
        if n not in cache:
            cache[n] = float(error_fn(n))
        return cache[n]

    def ok(n):
        return err(n) <= tol * (1 + rtol)

    def result(n_min):
        return MinDegreeResult(op.key, f.label, tol, n_min, sorted(cache.items()))

    points = [op.min_degree]
    while points[-1] < n_max:
        points.append(min(2 * points[-1], n_max))
    last_fail = None
    for i, n in enumerate(points):
        if not ok(n):
            last_fail = i
        elif i > 0 and ok(points[i - 1]):
            break
    else:
        if last_fail == len(points) - 1:
            return result(None)
    if last_fail is None:
        return result(points[0])
    lo, hi = points[last_fail], points[last_fail + 1]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    err(hi - 1)
    return result(hi)


def r_e2_min_degree_report(tol: float = 1e-4, n_max: int = 1 << 20) -> dict:
    """Minimal degree of ``R_n`` for x^2 by the closed-form error, over all of
    [0, 1] and restricted to x = 1/2. The two answers differ, and the report
    says so instead of preferring one."""
    from .fixtures import target

    e2 = target("e2")
    op = RationalBernstein()
    full = min_degree_for_tolerance(op, e2, tol, n_max=n_max, error_fn=r_e2_sup_error)
    half = min_degree_for_tolerance(
        op, e2, tol, n_max=n_max, error_fn=lambda n: float(r_e2_error(0.5, n))
    )
    return {
        "tol": tol,
        "n_min_sup": full.n_min,
        "n_min_at_half": half.n_min,
        "asymptotic_n_sup": 4.0 / (27.0 * tol),
        "discrepancy": full.n_min != half.n_min,
    }


def compare_operators(ops: Sequence[Operator], f, n: int, grid: Sequence[float]) -> dict:
    """Per operator: values on the grid, sup error and its (smallest) argmax."""
    f = as_target(f)
    grid = np.asarray(grid, dtype=float)
    fx = np.atleast_1d(_evaluate(f, grid))
    out = {}
    for op in ops:
        values = op.evaluate(f, n, grid)
        err = np.abs(values - fx)
        i = int(np.argmax(err))
        out[op.key] = {"values": values, "sup_error": float(err[i]), "argmax_x": float(grid[i])}
    return out


def r_e2_variance_identity(x: float, n: int) -> float:
    """``x^2 + Var(X)/n^2`` from the urn variance formula (reference for R_n(e2))."""
    return x * x + polya_variance(r_params(x, n)) / n**2
