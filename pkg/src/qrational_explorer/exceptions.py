"""Error types for q-Rational Explorer."""


class QRationalError(Exception):
    """Base class for every error raised by this package."""


class CoefficientOverflowError(QRationalError, OverflowError):
    """A polynomial coefficient left the signed 64-bit range."""


class NotDivisibleError(QRationalError, ArithmeticError):
    """A polynomial is not divisible by (1 - q)."""


class DomainError(QRationalError, ValueError):
    """An input violates the precondition of an operation."""


class RecognitionError(DomainError):
    """An integer matrix is not an element of SL(2, Z)."""


class QuiverError(DomainError):
    """A closure computation cannot run on the given quiver."""


class NotationError(DomainError):
    """Command-line text could not be parsed."""


class TraceReductionError(QRationalError, RuntimeError):
    """The trace-type reduction did not converge or failed its cross-check."""
