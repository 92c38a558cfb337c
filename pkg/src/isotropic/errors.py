"""Exception hierarchy shared by every module."""


class IsotropicError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(IsotropicError, ValueError):
    """An input violates a documented invariant."""


class NotHermitian(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class NotUnitary(ValidationError):
    pass


class NotTracePreserving(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class BadQubitIndex(ValidationError):
    pass


class BadProbability(ValidationError):
    pass


class AlphaOutOfRange(ValidationError):
    pass


class NoConvergence(IsotropicError, ArithmeticError):
    """An iterative kernel exhausted its iteration budget."""
