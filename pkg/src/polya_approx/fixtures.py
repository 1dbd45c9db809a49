"""Test-function corpus with closed-form metadata.

Labels are stable identifiers (used by the CLI and in CSV headers):
``e0, e1, e2, x3, x4, exp, sin9pi2, tent, jump``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .operators import TargetFunction

LABELS = ("e0", "e1", "e2", "x3", "x4", "exp", "sin9pi2", "tent", "jump")

_A = 4.5 * math.pi  # frequency of sin9pi2


@dataclass(frozen=True)
class FixtureEntry:
    function: TargetFunction
    provenance: str
    exact_sup_error: Optional[Callable[[str, int], Optional[float]]] = None

    @property
    def label(self) -> str:
        return self.function.label

    @property
    def derivative(self):
        return self.function.derivative

    @property
    def second_derivative(self):
        return self.function.second_derivative


def _power_modulus(p: int) -> Callable[[float], float]:
    # x^p is increasing and convex on [0, 1]: worst pair is (1 - d, 1)
    return lambda d: 1.0 - (1.0 - min(d, 1.0)) ** p


def _zero(d: float) -> float:
    return 0.0


def _e2_sup_error(key: str, n: int) -> Optional[float]:
    from .analysis import r_e2_sup_error

    if key == "bernstein":
        return 1.0 / (4 * n)
    if key == "r":
        return r_e2_sup_error(n)
    return None


def _reproduced(key: str, n: int) -> Optional[float]:
    return 0.0 if key in ("bernstein", "stancu", "lupas", "r") else None


def _jump(x):
    x = np.asarray(x, dtype=float)
    return np.where(x >= 1.0 / 3.0, x + 1.0, 0.0)


def _tent(x):
    return np.abs(2.0 * np.abs(x - 0.5) - 0.5)


def _build() -> tuple[FixtureEntry, ...]:
    ones = lambda x: np.ones_like(np.asarray(x, dtype=float))
    zeros = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    entries = [
        FixtureEntry(
            TargetFunction(
                ones, "e0", "C2",
                exact_modulus=_zero, exact_modulus_deriv=_zero,
                derivative=zeros, second_derivative=zeros,
            ),
            "Korovkin test function",
            _reproduced,
        ),
        FixtureEntry(
            TargetFunction(
                lambda x: np.asarray(x, dtype=float) * 1.0, "e1", "C2",
                exact_modulus=lambda d: min(d, 1.0), exact_modulus_deriv=_zero,
                derivative=ones, second_derivative=zeros,
            ),
            "Korovkin test function",
            _reproduced,
        ),
        FixtureEntry(
            TargetFunction(
                lambda x: np.asarray(x, dtype=float) ** 2, "e2", "C2",
                exact_modulus=_power_modulus(2),
                exact_modulus_deriv=lambda d: 2.0 * min(d, 1.0),
                derivative=lambda x: 2.0 * np.asarray(x, dtype=float),
                second_derivative=lambda x: 2.0 * np.ones_like(np.asarray(x, dtype=float)),
            ),
            "Korovkin test function",
            _e2_sup_error,
        ),
        FixtureEntry(
            TargetFunction(
                lambda x: np.asarray(x, dtype=float) ** 3, "x3", "C2",
                exact_modulus=_power_modulus(3),
                exact_modulus_deriv=lambda d: 3.0 * _power_modulus(2)(d),
                derivative=lambda x: 3.0 * np.asarray(x, dtype=float) ** 2,
                second_derivative=lambda x: 6.0 * np.asarray(x, dtype=float),
            ),
            "calibration polynomial (invented)",
        ),
        FixtureEntry(
            TargetFunction(
                lambda x: np.asarray(x, dtype=float) ** 4, "x4", "C2",
                exact_modulus=_power_modulus(4),
                exact_modulus_deriv=lambda d: 4.0 * _power_modulus(3)(d),
                derivative=lambda x: 4.0 * np.asarray(x, dtype=float) ** 3,
                second_derivative=lambda x: 12.0 * np.asarray(x, dtype=float) ** 2,
            ),
            "calibration polynomial (invented)",
        ),
        FixtureEntry(
            TargetFunction(
                np.exp, "exp", "C2",
                exact_modulus=lambda d: math.e - math.exp(1.0 - min(d, 1.0)),
                exact_modulus_deriv=lambda d: math.e - math.exp(1.0 - min(d, 1.0)),
                derivative=np.exp, second_derivative=np.exp,
            ),
            "strictly convex calibration function (invented)",
        ),
        FixtureEntry(
            TargetFunction(
                lambda x: np.sin(_A * np.asarray(x, dtype=float)), "sin9pi2", "C2",
                # |sin(t+h) - sin t| peaks at 2 sin(h/2); the full range 2 is
                # reached once h = pi, i.e. delta = 2/9
                exact_modulus=lambda d: 2.0 * math.sin(_A * min(d, 2.0 / 9.0) / 2.0),
                exact_modulus_deriv=lambda d: 2.0 * _A * math.sin(min(_A * d, math.pi) / 2.0),
                derivative=lambda x: _A * np.cos(_A * np.asarray(x, dtype=float)),
                second_derivative=lambda x: -(_A**2) * np.sin(_A * np.asarray(x, dtype=float)),
            ),
            "comparison figure: smooth, highly varying",
        ),
        FixtureEntry(
            TargetFunction(
                _tent, "tent", "piecewise_C1",
                exact_modulus=lambda d: min(2.0 * d, 0.5),
            ),
            "comparison figure: continuous, piecewise linear",
        ),
        FixtureEntry(
            TargetFunction(_jump, "jump", "bounded"),
            "comparison figure: discontinuous at 1/3, closed on [1/3, 1]",
        ),
    ]
    return tuple(entries)


_CORPUS = _build()
_BY_LABEL = {entry.label: entry for entry in _CORPUS}


def corpus() -> tuple[FixtureEntry, ...]:
    """All fixtures, in the order of :data:`LABELS`."""
    return _CORPUS


def get_fixture(label: str) -> FixtureEntry:
    try:
        return _BY_LABEL[label]
    except KeyError:
        raise KeyError(f"unknown fixture {label!r}; choose from {', '.join(LABELS)}") from None


def target(label: str) -> TargetFunction:
    """Shortcut for ``get_fixture(label).function``."""
    return get_fixture(label).function


def from_samples(xs, ys, label: str = "data") -> TargetFunction:
    """Piecewise-linear interpolant of sampled data covering [0, 1]."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.ndim != 1 or xs.shape != ys.shape or len(xs) < 2:
        raise ValueError("need two equal-length columns with at least two samples")
    order = np.argsort(xs, kind="stable")
    xs, ys = xs[order], ys[order]
    if xs[0] > 0 or xs[-1] < 1:
        raise ValueError(f"samples span [{xs[0]}, {xs[-1]}], which does not cover [0, 1]")
    return TargetFunction(lambda x: np.interp(x, xs, ys), label, "continuous")
