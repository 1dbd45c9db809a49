"""Polya-urn Bernstein-type approximation operators.

The distribution core computes the Polya (urn) pmf and its moments; the
operators module builds Bernstein, Stancu, Lupas, the rational operator R_n
and the q- / (p,q)-Bernstein variants on top of it; ``analysis`` checks error
bounds, Voronovskaya asymptotics and minimal degrees; ``fixtures`` holds the
test-function corpus.
"""

from .distribution import (
    MomentSet,
    PolyaParams,
    central_moments,
    enumerated_moments,
    polya_mean,
    polya_pmf,
    polya_variance,
    r_params,
    rising_factorial,
    support,
)
from .errors import (
    DegenerateTotal,
    EvalError,
    InapplicableTheorem,
    InvalidDegree,
    InvalidParameter,
    InvalidParams,
    MissingDerivative,
    OverflowBudget,
    PolyaError,
)
from .operators import (
    Bernstein,
    Lupas,
    Operator,
    PQBernstein,
    QBernstein,
    RationalBernstein,
    Stancu,
    TargetFunction,
    bernstein,
    evaluate_on_grid,
    lupas,
    make_operator,
    pq_bernstein,
    q_bernstein,
    r_operator,
    stancu,
)

__version__ = "0.1.0"
