"""Exception hierarchy shared by every module."""


class EsnError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(EsnError, ValueError):
    """An argument lies outside the domain of the operation."""


class BoundaryError(EsnError, ValueError):
    """A Mills-bound case boundary was hit, or a bound denominator is not positive."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class RegimeError(EsnError, ValueError):
    """alpha < 0 without alpha + tau < 0 and 1 + alpha**2 + alpha*tau > 0."""


class NumericError(EsnError, ArithmeticError):
    """Base class for numerical failures (exit code 4 in the CLI)."""


class QuadratureError(NumericError):
    """Adaptive quadrature did not reach tolerance within the subdivision budget."""

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class SolverError(NumericError):
    """Root bracketing or refinement failed."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class AccuracyError(NumericError):
    """An asymptotic expansion was requested where it is not yet accurate."""

    def __init__(self, message, est_rel_error=None):
        super().__init__(message)
        self.est_rel_error = est_rel_error


class PrecisionError(NumericError):
    """Working precision is too low to resolve the requested quantity."""


class RejectedParametersError(EsnError, ValueError):
    """The rejection sampler would accept too rarely to be usable."""


class ResourceError(EsnError, RuntimeError):
    """A simulation exceeds its configured draw budget."""
