"""Exception hierarchy shared by all serretlab modules."""


class SerretError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(SerretError):
    """Invalid configuration: precision out of range, bounds the
    precision budget cannot support, malformed curve parameters."""


class DomainError(SerretError):
    """Argument outside the mathematical domain of an operation
    (negative radicand, log of a nonpositive number, angle outside a
    leaf, modulus >= 1, ...)."""


class IntegrandError(SerretError):
    """Integrand returned a non-finite value at an interior node."""


class ConvergenceError(SerretError):
    """An iteration failed to converge.  ``best`` carries the last
    estimate, ``state`` optional diagnostic data (bracket, level)."""

    def __init__(self, message, best=None, state=None):
        super().__init__(message)
        self.best = best
        self.state = state


class InternalConsistencyError(SerretError):
    """Two routes that must agree (closed form vs quadrature)
    disagreed beyond tolerance."""


class SpuriousRelationError(SerretError):
    """An integer relation failed re-verification at higher precision:
    its residual did not shrink, so it was a precision artifact."""
