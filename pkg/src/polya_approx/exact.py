"""Exact rational Polya pmf, used to check the floating-point path.

The golden-file dump format is one ``k numerator/denominator`` line per entry.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .distribution import PolyaParams, rising_factorial
from .errors import DegenerateTotal, OverflowBudget

DEFAULT_MAX_N = 40
DEFAULT_MAX_DIGITS = 20_000


def _as_fraction(value) -> Fraction:
    # floats convert to their exact binary value, never a nearby "nice" rational
    return Fraction(value)


def exact_params(a, b, c, n: int) -> PolyaParams:
    """Build :class:`PolyaParams` with :class:`Fraction` fields.

    Strings such as ``"1/3"`` are accepted.
    """
    return PolyaParams(_as_fraction(a), _as_fraction(b), _as_fraction(c), n)


def polya_pmf_exact(
    params: PolyaParams,
    max_n: int = DEFAULT_MAX_N,
    max_digits: int = DEFAULT_MAX_DIGITS,
) -> list[Fraction]:
    """Exact probabilities ``C(n,k) a^(k,c) b^(n-k,c) / (a+b)^(n,c)``.

    Raises :class:`OverflowBudget` when ``n > max_n`` or an intermediate
    numerator or denominator exceeds ``max_digits`` decimal digits.
    """
    n = params.n
    if n > max_n:
        raise OverflowBudget(f"n = {n} exceeds the exact-oracle bound {max_n}")
    a, b, c = (_as_fraction(v) for v in (params.a, params.b, params.c))
    total = rising_factorial(a + b, c, n)
    if total == 0:
        raise DegenerateTotal(f"(a+b)^(n,c) vanishes for {params}")

    bits = max_digits * math.log2(10)
    probs = []
    for k in range(n + 1):
        num = math.comb(n, k) * rising_factorial(a, c, k) * rising_factorial(b, c, n - k)
        value = Fraction(num) / total
        if value.numerator.bit_length() > bits or value.denominator.bit_length() > bits:
            raise OverflowBudget(f"p_{k} exceeds {max_digits} digits")
        probs.append(value)
    return probs


def dump_exact(probs: Sequence[Fraction]) -> str:
    """Serialize to the ``k num/den`` line format (trailing newline)."""
    return "".join(f"{k} {p.numerator}/{p.denominator}\n" for k, p in enumerate(probs))


def load_exact(lines: Iterable[str] | str) -> list[Fraction]:
    """Parse the ``k num/den`` format; indices must run 0, 1, 2, ..."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    probs = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        k, value = line.split()
        if int(k) != len(probs):
            raise ValueError(f"expected index {len(probs)}, got {k}")
        probs.append(Fraction(value))
    return probs
