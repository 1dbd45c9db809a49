"""Polya urn distributions: binomial, beta-binomial, and negative replacement.

Run: python3 demos/01_polya_urn_pmf.py
"""

from fractions import Fraction

import numpy as np

from polya_approx import PolyaParams, central_moments, polya_pmf, polya_variance, r_params
from polya_approx.exact import polya_pmf_exact

np.set_printoptions(precision=4, suppress=True)

# An urn with white mass a and black mass b; each drawn colour gains c.
# c = 0 is sampling with replacement: the binomial distribution.
print("binomial (a=0.3, b=0.7, c=0, n=5):", polya_pmf(PolyaParams(0.3, 0.7, 0.0, 5)))

# c > 0 reinforces whatever was drawn: the distribution spreads out.
print("reinforced (c=0.5):              ", polya_pmf(PolyaParams(0.3, 0.7, 0.5, 5)))

# a = b = c gives the uniform distribution on {0, ..., n}.
print("uniform (a=b=c=1, n=2):           ", polya_pmf(PolyaParams(1, 1, 1, 2)))

# c < 0 removes mass, concentrating the distribution. The rational operator
# uses the most negative admissible c = -min(x, 1-x)/(n-1).
for x in (0.1, 1 / 3, 0.5):
    p = r_params(x, 8)
    print(f"R_8 urn at x={x:.3f}: c={p.c:+.4f}", polya_pmf(p))

# At x = 1/2 a factor a + (n-1)c vanishes exactly: both ends are exact zeros.
print("x=1/2, n=2 is a point mass:", polya_pmf(r_params(0.5, 2)))

# The exact rational oracle reproduces the same numbers without rounding.
exact = polya_pmf_exact(r_params(Fraction(1, 3), 4))
print("exact R_4 urn at x=1/3:", [str(v) for v in exact])
worst = max(
    abs(float(e) - f) / float(e) for e, f in zip(exact, polya_pmf(r_params(1 / 3, 4))) if e
)
print(f"largest relative deviation of the float pmf: {worst:.1e}")

# Variance shrinks relative to the binomial n x (1-x) by roughly (1 - min(x, 1-x)).
n = 200
for x in (0.1, 1 / 3, 0.5):
    ratio = polya_variance(r_params(x, n)) / (n * x * (1 - x))
    print(f"x={x:.3f}: Var / binomial Var = {ratio:.4f}   (1 - m = {1 - min(x, 1 - x):.4f})")

# Higher central moments come from a recursion in the lower ones.
ms = central_moments(r_params(0.1, 100), 4)
print("mu_3/n = %.4f, mu_4/n^2 = %.4f" % (ms.central[3] / 100, ms.central[4] / 100**2))

# The pmf stays finite and normalized at large n.
big = polya_pmf(r_params(1 / 3, 1 << 14))
print(f"n=16384: sum = {big.sum():.15f}, max = {big.max():.5f}")
