"""Exception hierarchy shared by all zetasolve modules."""


class ZetaSolveError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ZetaSolveError, ValueError):
    """Malformed input (bad JSON, ragged rows, unknown fields, bad ranges)."""


class DimensionMismatch(ZetaSolveError, ValueError):
    """Operands have incompatible dimensions."""


class NotSymmetric(ZetaSolveError, ValueError):
    """Matrix asymmetry exceeds the acceptance tolerance."""


class NotPositiveDefinite(ZetaSolveError, ValueError):
    """Cholesky pivot dropped below the positive-definiteness threshold."""


class SingularMatrix(ZetaSolveError, ValueError):
    """Matrix is singular to working precision."""


class PoleOfGamma(ZetaSolveError, ValueError):
    """Gamma function evaluated at (or too close to) a non-positive integer."""


class NonPositiveX(ZetaSolveError, ValueError):
    """Incomplete gamma requires a strictly positive real argument x."""


class TooManyPoints(ZetaSolveError, RuntimeError):
    """Lattice enumeration would exceed the configured point cap."""


class OutsideConvergence(ZetaSolveError, ValueError):
    """Direct Dirichlet series requested outside its convergence region."""


class TooCloseToPole(ZetaSolveError, ValueError):
    """Zeta evaluation requested inside the pole exclusion zone."""


class DegenerateGrid(ZetaSolveError, ValueError):
    """Too few usable grid points for a fit."""


class DegenerateQuadrature(ZetaSolveError, RuntimeError):
    """Quadrature produced a value that is impossible analytically."""


class NonFiniteIntegrand(ZetaSolveError, ValueError):
    """Integrand returned a non-finite value on the sphere."""


class EvaluationFailure(ZetaSolveError, RuntimeError):
    """A numerical evaluator failed at one or more requested points."""
