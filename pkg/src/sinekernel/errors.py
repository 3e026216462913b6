"""Exception types shared across the package."""


class ValidityWindowError(ValueError):
    """Raised when a parameter lies outside the documented double-precision window."""


class OperatorNotPositiveError(ArithmeticError):
    """Raised when a discretized operator fails the positive-pivot check.

    Signals lambda outside (0, 1] or severe ill-conditioning.
    """


class OperatorNotInvertibleError(ArithmeticError):
    """Raised when the LU factorization of a discretized operator breaks down."""
