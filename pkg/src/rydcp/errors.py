"""Exception hierarchy.

Everything raised on bad input derives from :class:`ValidationError` (CLI
exit code 1); numerical failures derive from :class:`ConvergenceError`
(exit code 2).
"""


class RydcpError(Exception):
    pass


class ValidationError(RydcpError, ValueError):
    """Input violates a documented precondition or invariant."""


class IncompatibleUnitsError(ValidationError):
    pass


class QuantumNumberError(ValidationError):
    pass


class GeometryError(ValidationError):
    """Nonpositive distances, amplitude >= distance, support touching the wall."""


class OutOfSpanError(ValidationError):
    pass


class UndersamplingError(ValidationError):
    pass


class DetunedInputError(ValidationError):
    pass


class WindowMismatchError(ValidationError):
    pass


class ConvergenceError(RydcpError, ArithmeticError):
    """Quadrature did not reach the requested tolerance."""

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics
