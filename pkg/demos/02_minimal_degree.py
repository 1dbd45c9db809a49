"""How large must n be to approximate x^2 within 1e-4?

Run: python3 demos/02_minimal_degree.py
"""

import numpy as np

from polya_approx import Bernstein, RationalBernstein
from polya_approx.analysis import bernstein_e2_sup_error, min_degree_for_tolerance, r_e2_min_degree_report
from polya_approx.fixtures import target

e2 = target("e2")

# Bernstein: B_n(x^2) - x^2 = x(1-x)/n, worst at x = 1/2 where it is 1/(4n).
result = min_degree_for_tolerance(Bernstein(), e2, 1e-4, error_fn=bernstein_e2_sup_error)
print("Bernstein, closed form:", result.n_min)

# The same answer from evaluating the operator on a 201-point grid.
grid = np.linspace(0, 1, 201)
print("Bernstein, 201-point grid:", min_degree_for_tolerance(Bernstein(), e2, 1e-4, grid).n_min)

# R_n: the error x(1-x)(n-1-nm)/(n(n-1-m)) at x = 1/2 is (n-2)/(8n(n-3/2)) ~ 1/(8n).
# Restricted to x = 1/2, n = 1250 suffices ...
report = r_e2_min_degree_report(1e-4)
print("R_n restricted to x = 1/2:", report["n_min_at_half"])

# ... but the sup over [0, 1] is attained near x = 1/3, where the error is
# about (4/27)/n, so the full-interval requirement is larger.
print("R_n over all of [0, 1]:", report["n_min_sup"], f"(4/27 * 1e4 = {report['asymptotic_n_sup']:.1f})")
print("the two readings disagree:", report["discrepancy"])

# Grid evaluation confirms the closed-form full-interval value.
print("R_n, 201-point grid:", min_degree_for_tolerance(RationalBernstein(), e2, 1e-4, grid).n_min)

# Where is the R_n error largest?
n = 1482
errors = RationalBernstein().evaluate(e2, n, grid) - grid**2
print(f"n={n}: max error {errors.max():.3e} at x = {grid[errors.argmax()]}")
