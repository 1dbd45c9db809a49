"""Asymptotics: n (R_n f(x) - f(x)) -> f''(x)/2 x(1-x)(1-min(x, 1-x)).

Run: python3 demos/04_voronovskaya.py
"""

from polya_approx import Bernstein
from polya_approx.analysis import dyadic, voronovskaya_estimate
from polya_approx.fixtures import target

f = target("exp")
n_values = dyadic(16, 1 << 14)
for x in (0.1, 0.3, 0.5, 0.7):
    s = voronovskaya_estimate(f, x, n_values)
    print(f"x={x}: limit {s.limit_predicted:.6f}")
    for n, value, gap in zip(s.n_values, s.scaled_errors, s.gaps):
        if n in (16, 256, 4096, 16384):
            print(f"   n={n:6d}  n(R_n f - f) = {value:.6f}   gap = {gap:.2e}")

# The Bernstein limit is f''(x)/2 x(1-x): R_n wins by the factor 1 - min(x, 1-x).
x, n = 0.5, 4096
b = n * (Bernstein()(f, n, x) - f(x))
r = voronovskaya_estimate(f, x, [n]).scaled_errors[0]
print(f"\nx={x}, n={n}: Bernstein {b:.5f}, R_n {r:.5f}, ratio {r / b:.4f}")
