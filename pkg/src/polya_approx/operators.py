"""Bernstein-type positive linear operators on [0, 1].

Every operator here has the form ``L_n(f; x) = sum_k w_k(n, x) f(t_k)`` with
nodes ``t_k`` depending only on ``n``. The Polya-urn family (Bernstein,
Stancu, Lupas and the rational operator ``R_n``) uses nodes ``k/n`` and the
urn pmf as weights; the q- and (p,q)-analogues use their own nodes and bases
and are kept for comparison only.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, ClassVar, NamedTuple, Optional, Sequence

import numpy as np

from .distribution import PolyaParams, polya_pmf, r_params
from .errors import EvalError, InvalidDegree, InvalidParameter, PolyaError

SMOOTHNESS_LEVELS = ("bounded", "continuous", "piecewise_C1", "C1", "C2")
THREADS_ENV = "POLYA_APPROX_THREADS"


@dataclass(frozen=True)
class TargetFunction:
    """A real function on [0, 1] with optional regularity metadata.

    ``fn`` should accept numpy arrays. ``exact_modulus(delta)`` and
    ``exact_modulus_deriv(delta)`` are the moduli of continuity of ``f`` and
    of ``f'`` when known in closed form.
    """

    fn: Callable
    label: str
    smoothness: str = "bounded"
    exact_modulus: Optional[Callable[[float], float]] = None
    exact_modulus_deriv: Optional[Callable[[float], float]] = None
    derivative: Optional[Callable] = None
    second_derivative: Optional[Callable] = None

    def __post_init__(self):
        if self.smoothness not in SMOOTHNESS_LEVELS:
            raise ValueError(f"unknown smoothness {self.smoothness!r}")

    def at_least(self, level: str) -> bool:
        return SMOOTHNESS_LEVELS.index(self.smoothness) >= SMOOTHNESS_LEVELS.index(level)

    def __call__(self, x):
        return _evaluate(self.fn, x, self.label)


def _evaluate(fn, x, label="f"):
    arr = np.asarray(x, dtype=float)
    try:
        out = np.asarray(fn(arr), dtype=float)
        if out.shape != arr.shape:
            out = np.broadcast_to(out, arr.shape).copy()
    except Exception:
        try:
            out = np.array([float(fn(float(v))) for v in arr.ravel()]).reshape(arr.shape)
        except Exception as exc:
            raise EvalError(f"evaluating {label} failed: {exc}") from exc
    return float(out) if out.ndim == 0 else out


def as_target(f) -> TargetFunction:
    """Wrap a plain callable; a :class:`TargetFunction` is returned unchanged."""
    if isinstance(f, TargetFunction):
        return f
    if not callable(f):
        raise TypeError(f"expected a callable, got {type(f).__name__}")
    return TargetFunction(f, getattr(f, "__name__", "f"))


def evaluate_expectation(pmf: np.ndarray, f, n: int) -> float:
    """``sum_k pmf[k] f(k/n)``."""
    pmf = np.asarray(pmf, dtype=float)
    if len(pmf) != n + 1:
        raise ValueError(f"pmf has length {len(pmf)}, expected n + 1 = {n + 1}")
    nodes = np.arange(n + 1) / n
    return float(pmf @ _evaluate(f, nodes))


def _check_x(x: float) -> float:
    if not 0 <= x <= 1:
        raise PolyaError(f"x must lie in [0, 1], got {x}")
    return x


@dataclass(frozen=True)
class Operator:
    """Base class: subclasses supply ``nodes(n)`` and ``weights(n, x)``."""

    key: ClassVar[str] = ""
    min_degree: ClassVar[int] = 1

    def check_degree(self, n: int) -> None:
        if int(n) != n or n < self.min_degree:
            raise InvalidDegree(f"{self.key} needs n >= {self.min_degree}, got n = {n}")

    def nodes(self, n: int) -> np.ndarray:
        return np.arange(n + 1) / n

    def weights(self, n: int, x: float) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, f, n: int, x: float) -> float:
        self.check_degree(n)
        return float(self.weights(n, _check_x(x)) @ _evaluate(f, self.nodes(n)))

    def evaluate(self, f, n: int, xs: Sequence[float]) -> np.ndarray:
        """Values at every ``x`` in ``xs``; ``f`` is sampled once at the nodes."""
        self.check_degree(n)
        values = _evaluate(f, self.nodes(n))
        xs = [float(x) for x in xs]

        def one(x):
            return float(self.weights(n, _check_x(x)) @ values)

        workers = _worker_count(len(xs) * (n + 1))
        if workers > 1:
            with ThreadPoolExecutor(workers) as pool:
                return np.array(list(pool.map(one, xs)))
        return np.array([one(x) for x in xs])


@dataclass(frozen=True)
class Bernstein(Operator):
    key: ClassVar[str] = "bernstein"

    def weights(self, n, x):
        return polya_pmf(PolyaParams(x, 1 - x, 0.0, n))


@dataclass(frozen=True)
class Stancu(Operator):
    """Bernstein-Stancu: urn with ``a=x, b=1-x, c=alpha >= 0``."""

    alpha: float = 0.0
    key: ClassVar[str] = "stancu"

    def __post_init__(self):
        if not self.alpha >= 0:
            raise InvalidParameter(f"Stancu alpha must be >= 0, got {self.alpha}")

    def weights(self, n, x):
        return polya_pmf(PolyaParams(x, 1 - x, self.alpha, n))


@dataclass(frozen=True)
class Lupas(Operator):
    """Stancu with ``alpha = 1/n``."""

    key: ClassVar[str] = "lupas"

    def weights(self, n, x):
        return polya_pmf(PolyaParams(x, 1 - x, 1.0 / n, n))


@dataclass(frozen=True)
class RationalBernstein(Operator):
    """``R_n``: urn with negative replacement ``c = -min(x, 1-x)/(n-1)``.

    This ``c`` is the smallest admissible replacement, hence the urn with the
    smallest variance. The result is rational (not polynomial) in ``x`` on
    each half of [0, 1].
    """

    key: ClassVar[str] = "r"
    min_degree: ClassVar[int] = 2

    def weights(self, n, x):
        return polya_pmf(r_params(x, n))


def _q_int(m, q):
    """q-integer ``[m]_q = 1 + q + ... + q^(m-1)``."""
    if q == 1:
        return np.asarray(m, dtype=float)
    return (1 - q ** np.asarray(m, dtype=float)) / (1 - q)


@dataclass(frozen=True)
class QBernstein(Operator):
    """Phillips' q-Bernstein operator, ``0 < q <= 1``.

        B_{n,q}(f; x) = sum_k [n over k]_q x^k prod_{s=0}^{n-k-1} (1 - q^s x) f([k]_q / [n]_q)
    """

    q: float = 1.0
    key: ClassVar[str] = "q_bernstein"

    def __post_init__(self):
        if not 0 < self.q <= 1:
            raise InvalidParameter(f"q must lie in (0, 1], got {self.q}")

    def nodes(self, n):
        k = np.arange(n + 1)
        return _q_int(k, self.q) / _q_int(n, self.q)

    def weights(self, n, x):
        q = self.q
        k = np.arange(n)
        # [n over k+1]_q / [n over k]_q = [n-k]_q / [k+1]_q
        steps = _q_int(n - k, q) / _q_int(k + 1, q)
        qbinom = np.concatenate(([1.0], np.cumprod(steps)))
        tails = np.concatenate(([1.0], np.cumprod(1 - q ** k.astype(float) * x)))
        powers = x ** np.arange(n + 1, dtype=float)
        return qbinom * powers * tails[n - np.arange(n + 1)]


@dataclass(frozen=True)
class PQBernstein(Operator):
    """(p,q)-Bernstein operator of Mursaleen, Ansari and Khan (revised form).

        S_{n,p,q}(f; x) = p^(-n(n-1)/2) sum_k [n over k]_{p,q} p^(k(k-1)/2) x^k
                          prod_{s=0}^{n-k-1} (p^s - q^s x) f(p^(n-k) [k]_{p,q} / [n]_{p,q})

    with ``[m]_{p,q} = (p^m - q^m)/(p - q)`` and ``0 < q < p <= 1``. The basis
    is evaluated in log space because the ``p`` powers alone over- or
    underflow long before the weights do.
    """

    p: float = 1.0
    q: float = 0.5
    key: ClassVar[str] = "pq_bernstein"

    def __post_init__(self):
        if not 0 < self.q < self.p <= 1:
            raise InvalidParameter(f"need 0 < q < p <= 1, got p={self.p}, q={self.q}")

    def _pq_int(self, m):
        m = np.asarray(m, dtype=float)
        return (self.p**m - self.q**m) / (self.p - self.q)

    def nodes(self, n):
        k = np.arange(n + 1)
        return self.p ** (n - k).astype(float) * self._pq_int(k) / self._pq_int(n)

    def weights(self, n, x):
        p, q = self.p, self.q
        k = np.arange(n + 1)
        if x == 0:
            # the p powers cancel exactly here; log space would leave an ulp
            return (k == 0).astype(float)
        steps = np.log(self._pq_int(n - k[:-1])) - np.log(self._pq_int(k[:-1] + 1))
        log_binom = np.concatenate(([0.0], np.cumsum(steps)))
        s = np.arange(n, dtype=float)
        with np.errstate(divide="ignore"):
            log_tail_factors = np.log(p**s - q**s * x)
        log_tails = np.concatenate(([0.0], np.cumsum(log_tail_factors)))
        log_powers = k * math.log(x)
        p_exp = (k * (k - 1) - n * (n - 1)) / 2.0
        log_w = log_binom + p_exp * math.log(p) + log_powers + log_tails[n - k]
        return np.exp(log_w)


def bernstein(f, n: int, x: float) -> float:
    """Classical Bernstein polynomial ``B_n(f; x)``."""
    return Bernstein()(f, n, x)


def stancu(f, n: int, x: float, alpha: float) -> float:
    """Bernstein-Stancu operator with replacement ``alpha >= 0``."""
    return Stancu(alpha)(f, n, x)


def lupas(f, n: int, x: float) -> float:
    """Lupas operator (Stancu with ``alpha = 1/n``)."""
    return Lupas()(f, n, x)


def r_operator(f, n: int, x: float) -> float:
    """The rational operator ``R_n(f; x)``, ``n >= 2``."""
    return RationalBernstein()(f, n, x)


def q_bernstein(f, n: int, x: float, q: float) -> float:
    return QBernstein(q)(f, n, x)


def pq_bernstein(f, n: int, x: float, p: float, q: float) -> float:
    return PQBernstein(p, q)(f, n, x)


def bernstein_e2(x, n: int):
    """Closed form of ``B_n(x^2; x) = x^2 + x(1-x)/n``."""
    x = np.asarray(x, dtype=float)
    return x**2 + x * (1 - x) / n


def r_e2(x, n: int):
    """Closed form of ``R_n(x^2; x)``.

    ``x^2 + Var(X)/n^2`` for the urn of ``R_n``, which simplifies to
    ``x^2 + x(1-x)(n-1-n m) / (n (n-1-m))`` with ``m = min(x, 1-x)``.
    """
    if n < 2:
        raise InvalidDegree(f"R_n needs n >= 2, got n = {n}")
    x = np.asarray(x, dtype=float)
    m = np.minimum(x, 1 - x)
    return x**2 + x * (1 - x) * (n - 1 - n * m) / (n * (n - 1 - m))


_OPERATORS = {
    cls.key: cls for cls in (Bernstein, Stancu, Lupas, RationalBernstein, QBernstein, PQBernstein)
}


def make_operator(key: str, **params) -> Operator:
    """Construct an operator from its key (``bernstein``, ``stancu``, ``lupas``,
    ``r``, ``q_bernstein``, ``pq_bernstein``) and shape parameters."""
    try:
        cls = _OPERATORS[key]
    except KeyError:
        raise InvalidParameter(f"unknown operator {key!r}; choose from {sorted(_OPERATORS)}") from None
    return cls(**params)


class GridRecord(NamedTuple):
    x: float
    value: float
    f: float
    error: float


def evaluate_on_grid(op: Operator, f, n: int, grid: Sequence[float]) -> list[GridRecord]:
    """Operator value, function value and signed error ``L_n f - f`` per grid point."""
    grid = [float(x) for x in grid]
    if not grid:
        raise ValueError("grid is empty")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be sorted")
    if grid[0] < 0 or grid[-1] > 1:
        raise ValueError("grid must lie within [0, 1]")
    op.check_degree(n)
    fx = np.atleast_1d(_evaluate(f, np.array(grid)))
    try:
        values = op.evaluate(f, n, grid)
    except (PolyaError, EvalError):
        # redo point by point to name the failing x
        values = []
        for x in grid:
            try:
                values.append(op(f, n, x))
            except (PolyaError, EvalError) as exc:
                raise type(exc)(f"at x = {x!r}: {exc}") from exc
    return [
        GridRecord(x, float(v), float(fv), float(v - fv)) for x, v, fv in zip(grid, values, fx)
    ]


def _worker_count(work: int) -> int:
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap == 1:
        return 1
    if cap == 0:
        # threads only pay off once each task is large
        if work < 2_000_000:
            return 1
        cap = min(os.cpu_count() or 1, 8)
    return max(1, cap)
