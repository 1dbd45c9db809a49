"""Exception hierarchy shared by all modules."""


class PolyaError(ValueError):
    """Base class for parameter errors raised by this package."""


class InvalidParams(PolyaError):
    """Urn parameters violate nonnegativity or admissibility."""


class DegenerateTotal(PolyaError):
    """A factor of the normalizing rising factorial vanishes."""


class InvalidDegree(InvalidParams):
    """Operator degree outside its domain (e.g. n < 2 for the rational operator)."""


class InvalidParameter(PolyaError):
    """Operator shape parameter (alpha, q, p) outside its admissible range."""


class OverflowBudget(ArithmeticError):
    """Exact rational computation exceeded its size budget."""


class EvalError(RuntimeError):
    """Evaluating a target function failed."""


class MissingDerivative(ValueError):
    """A derivative-based check was requested without derivative information."""


class InapplicableTheorem(ValueError):
    """The target function lacks the regularity a bound requires."""
