"""Modulus-of-continuity error bounds for R_n, checked on a grid.

Run: python3 demos/03_error_bounds.py
"""

import numpy as np

from polya_approx.analysis import derivative_bound_check, popoviciu_check
from polya_approx.fixtures import target

grid = np.linspace(0, 1, 201)

# |R_n f(x) - f(x)| <= omega(n^-1/2) (1 + x(1-x)(1-min(x, 1-x))) <= 31/27 omega(n^-1/2)
print("Popoviciu-type bound: sup error / flat bound (31/27 omega)")
print(f"{'f':>8} " + " ".join(f"{'n=' + str(n):>9}" for n in (4, 10, 50, 100)))
for label in ("e2", "x3", "exp", "sin9pi2", "tent"):
    cells = []
    for n in (4, 10, 50, 100):
        r = popoviciu_check(target(label), n, grid)
        assert r.satisfied and r.flat_satisfied
        cells.append(f"{r.sup_lhs / r.flat_rhs:9.4f}")
    print(f"{label:>8} " + " ".join(cells))

# For differentiable f: |R_n f - f| <= (4 + 6 sqrt 3)/27 n^-1/2 omega_1(n^-1/2)
print("\nderivative bound: sup error / flat bound")
for label in ("e2", "x4", "exp", "sin9pi2"):
    cells = []
    for n in (4, 10, 50, 100):
        r = derivative_bound_check(target(label), n, grid)
        assert r.satisfied and r.flat_satisfied
        cells.append(f"{r.sup_lhs / r.flat_rhs:9.4f}")
    print(f"{label:>8} " + " ".join(cells))

# The pointwise form is sharpest near the endpoints, where the envelope vanishes.
r = popoviciu_check(target("sin9pi2"), 50, grid)
print(f"\nsin9pi2, n=50: worst x {r.argmax_x}, margin {r.margin:.4f}, omega {r.omega:.4f} ({r.omega_method})")
