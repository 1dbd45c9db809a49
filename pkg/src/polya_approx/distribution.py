"""Polya urn distribution with real (possibly negative) replacement.

A draw sequence of length ``n`` from an urn holding mass ``a`` of white and
``b`` of black, where each drawn colour gains ``c`` (``c < 0`` removes mass),
yields a number of white draws ``X`` with

    P(X = k) = C(n, k) a^(k,c) b^(n-k,c) / (a+b)^(n,c),

``x^(k,h) = x (x+h) ... (x+(k-1)h)`` being the generalized rising factorial.
``c = 0`` is the binomial distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Real

import numpy as np

from .errors import DegenerateTotal, InvalidDegree, InvalidParams

#: Admissibility ``a + (n-1)c >= 0`` is accepted down to this value.
ADMISSIBILITY_TOL = 1e-12
#: Pmf entries in ``[-CLAMP_TOL, 0)`` are round-off and clamped to zero.
CLAMP_TOL = 1e-15
# factors within this many ulps of |a| + |i c| are analytic zeros
_ZERO_ULPS = 8.0


def rising_factorial(x, h, k: int):
    """Return ``x (x+h) (x+2h) ... (x+(k-1)h)``; the empty product (k=0) is 1.

    Works for any numeric type closed under ``+`` and ``*`` (floats,
    :class:`fractions.Fraction`, integers).
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    result = 1
    for j in range(k):
        result = result * (x + j * h)
    return result


@dataclass(frozen=True)
class PolyaParams:
    """Parameters ``(a, b, c, n)`` of a Polya urn distribution.

    Fields may be floats or exact rationals; validation uses the same
    arithmetic the fields carry.
    """

    a: Real
    b: Real
    c: Real
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise InvalidParams(f"n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if self.a < 0:
            raise InvalidParams(f"a >= 0 violated: a = {self.a}")
        if self.b < 0:
            raise InvalidParams(f"b >= 0 violated: b = {self.b}")
        last = (self.n - 1) * self.c
        if self.a + last < -ADMISSIBILITY_TOL:
            raise InvalidParams(
                f"a + (n-1)c >= 0 violated: a + (n-1)c = {self.a + last}"
            )
        if self.b + last < -ADMISSIBILITY_TOL:
            raise InvalidParams(
                f"b + (n-1)c >= 0 violated: b + (n-1)c = {self.b + last}"
            )

    def reversed(self) -> "PolyaParams":
        """Swap the colours; the pmf is reversed."""
        return PolyaParams(self.b, self.a, self.c, self.n)


def r_params(x: float, n: int) -> PolyaParams:
    """Parameters of the rational operator: ``a=x, b=1-x, c=-min(x,1-x)/(n-1)``.

    The returned parameters satisfy admissibility for every ``x`` in [0, 1].
    Passing :class:`fractions.Fraction` for ``x`` gives exact parameters.
    """
    if n < 2:
        raise InvalidDegree(f"the rational operator needs n >= 2, got n = {n}")
    if not 0 <= x <= 1:
        raise InvalidParams(f"x must lie in [0, 1], got {x}")
    m = min(x, 1 - x)
    return PolyaParams(x, 1 - x, -m / (n - 1), n)


def _first_zero(base: float, step: float, count: int) -> int | None:
    """Index of the first analytic zero of ``base + i*step``, ``0 <= i < count``."""
    i = np.arange(count, dtype=float)
    values = base + i * step
    scale = np.abs(base) + np.abs(i * step)
    zero = np.abs(values) <= _ZERO_ULPS * np.finfo(float).eps * scale
    if not zero.any():
        return None
    return int(np.argmax(zero))


def support(params: PolyaParams) -> tuple[int, int]:
    """Return ``(k_lo, k_hi)`` such that ``p_k > 0`` exactly for ``k_lo <= k <= k_hi``.

    Zeros come only from vanishing numerator factors: ``a + i c = 0`` removes
    every ``k > i`` and ``b + j c = 0`` removes every ``k < n - j``.
    """
    a, b, c, n = float(params.a), float(params.b), float(params.c), params.n
    i = _first_zero(a, c, n)
    j = _first_zero(b, c, n)
    k_hi = n if i is None else i
    k_lo = 0 if j is None else n - j
    return k_lo, k_hi


def _check_total(params: PolyaParams) -> None:
    a, b, c = float(params.a), float(params.b), float(params.c)
    m = _first_zero(a + b, c, params.n)
    if m is not None:
        raise DegenerateTotal(
            f"normalizing factor a + b + {m}c vanishes for {params}"
        )


def polya_pmf(params: PolyaParams) -> np.ndarray:
    """Probability vector ``(p_0, ..., p_n)`` in binary64.

    Consecutive probabilities obey

        p_{k+1} / p_k = (n-k)/(k+1) * (a + k c) / (b + (n-k-1) c),

    so the pmf is built from these ratios walking outward from its largest
    entry. Every partial product is therefore the ratio ``p_j / p_max <= 1``:
    nothing overflows, and only genuinely negligible tails underflow. Entries
    outside the exact support are exact zeros.
    """
    _check_total(params)
    n = params.n
    a, b, c = float(params.a), float(params.b), float(params.c)
    k_lo, k_hi = support(params)
    if k_lo > k_hi:
        raise DegenerateTotal(f"empty support for {params}")

    probs = np.zeros(n + 1)
    k = np.arange(k_lo, k_hi, dtype=float)
    rel = np.empty(k_hi - k_lo + 1)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        ratios = (n - k) / (k + 1) * (a + k * c) / (b + (n - k - 1) * c)
        log_rel = np.concatenate(([0.0], np.cumsum(np.log(np.abs(ratios)))))
        peak = int(np.argmax(log_rel))  # offset within the support
        rel[peak] = 1.0
        rel[peak + 1 :] = np.cumprod(ratios[peak:])
        if peak > 0:
            rel[:peak] = np.cumprod(1.0 / ratios[peak - 1 :: -1])[::-1]
    if not np.all(np.isfinite(rel)):
        # a single ratio overflowed (subnormal parameters): redo in log space
        log_ratios = (
            np.log(n - k) - np.log(k + 1)
            + np.log(np.abs(a + k * c)) - np.log(np.abs(b + (n - k - 1) * c))
        )
        log_rel = np.concatenate(([0.0], np.cumsum(log_ratios)))
        rel = np.exp(log_rel - log_rel.max())
    probs[k_lo : k_hi + 1] = rel / rel.sum()

    low = probs.min()
    if low < -CLAMP_TOL:
        raise AssertionError(f"pmf entry {low} below round-off for {params}")
    np.maximum(probs, 0.0, out=probs)
    return probs


def polya_mean(params: PolyaParams):
    """``E X = n a / (a + b)``."""
    total = params.a + params.b
    if total == 0:
        raise InvalidParams("mean undefined for a + b = 0")
    return params.n * params.a / total


def polya_variance(params: PolyaParams):
    """``Var X = n a b / (a+b)^2 * (1 + (n-1) c / (a+b+c))``."""
    a, b, c, n = params.a, params.b, params.c, params.n
    total = a + b
    if total == 0:
        raise InvalidParams("variance undefined for a + b = 0")
    if total + c == 0:
        raise InvalidParams("variance undefined for a + b + c = 0")
    return n * a * b / total**2 * (1 + (n - 1) * c / (total + c))


@dataclass
class MomentSet:
    """Mean, variance and central moments ``central[k] = E (X - EX)^k``."""

    mean: Real
    variance: Real
    central: dict[int, Real] = field(default_factory=dict)


def central_moments(params: PolyaParams, order: int) -> MomentSet:
    """Central moments up to ``order`` from a three-term moment recursion.

    With ``s = a + b``, ``p = a/s``, ``gamma = n p (1-p) (1 + n c/s)`` and
    ``delta = n (1-2p) c/s - p``,

        mu_k = sum_{j=0}^{k-2} C(k-1, j) (gamma mu_j + delta mu_{j+1} - (c/s) mu_{j+2}),

    seeded with ``mu_0 = 1, mu_1 = 0``. The ``j = k-2`` term contains ``mu_k``
    itself, which is moved to the left-hand side, leaving the factor
    ``1 + (k-1) c/s``. That factor can only vanish for ``k > n``; those orders
    are taken from the pmf instead.

    Exact rational parameters give exact moments.
    """
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    a, b, c, n = params.a, params.b, params.c, params.n
    s = a + b
    if s == 0:
        raise InvalidParams("moments undefined for a + b = 0")
    p = a / s
    gamma = n * p * (1 - p) * (1 + n * c / s)
    delta = n * (1 - 2 * p) * c / s - p
    ratio = c / s

    mu = [1 + 0 * s, 0 * s]
    probs = None
    for k in range(2, order + 1):
        rhs = sum(
            math.comb(k - 1, j) * (gamma * mu[j] + delta * mu[j + 1])
            for j in range(k - 1)
        )
        rhs -= sum(math.comb(k - 1, j) * ratio * mu[j + 2] for j in range(k - 2))
        lead = 1 + (k - 1) * ratio
        if lead == 0 or abs(lead) < 1e-12:
            if probs is None:
                probs = polya_pmf(params)
            mu.append(_enumerated_central(probs, k))
        else:
            mu.append(rhs / lead)
    return MomentSet(
        mean=polya_mean(params),
        variance=mu[2],
        central={k: mu[k] for k in range(order + 1)},
    )


def central_moment_recursion(params: PolyaParams, k: int):
    """The ``k``-th central moment ``E (X - EX)^k`` via :func:`central_moments`."""
    return central_moments(params, max(k, 2)).central[k]


def _enumerated_central(probs: np.ndarray, k: int) -> float:
    nodes = np.arange(len(probs), dtype=float)
    mean = float(probs @ nodes)
    return float(probs @ (nodes - mean) ** k)


def enumerated_moments(probs: np.ndarray, order: int = 4) -> MomentSet:
    """Moments by direct summation over a pmf (the brute-force reference)."""
    nodes = np.arange(len(probs), dtype=float)
    mean = float(probs @ nodes)
    dev = nodes - mean
    central = {k: float(probs @ dev**k) for k in range(order + 1)}
    return MomentSet(mean=mean, variance=central[2], central=central)
