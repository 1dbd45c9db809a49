"""Sup-error comparison of five operators on the three comparison functions.

Writes the figure data CSVs to ./figures (or the directory given as the first
argument) and prints the sup errors.

Run: python3 demos/05_figure_comparison.py [outdir]
"""

import sys

import numpy as np

from polya_approx import cli
from polya_approx.analysis import compare_operators, comparison_operators
from polya_approx.fixtures import target

outdir = sys.argv[1] if len(sys.argv) > 1 else "figures"
cli.main(["figures", "--outdir", outdir])
print(f"figure CSVs written to {outdir}/")

grid = np.linspace(0, 1, 201)
ops = comparison_operators()
print(f"\n{'f':>8} {'n':>3} " + " ".join(f"{op.key:>13}" for op in ops))
for label in ("sin9pi2", "tent", "jump"):
    for n in (10, 50):
        result = compare_operators(ops, target(label), n, grid)
        print(f"{label:>8} {n:3d} " + " ".join(f"{result[op.key]['sup_error']:13.5f}" for op in ops))

# For the jump the worst point is the grid point x = 0.33 just left of 1/3.
# There every operator errs by about 2/3, half the jump of size 4/3, and at
# n = 50 R_n is very slightly worse than B_n.
result = compare_operators(ops, target("jump"), 50, grid)
for key in ("bernstein", "r"):
    print(f"jump n=50 {key}: sup error {result[key]['sup_error']:.6f} at x = {result[key]['argmax_x']}")
