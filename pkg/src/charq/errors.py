"""Exception types shared across charq."""


class CharqError(ValueError):
    """Base class for every error raised by charq on bad input."""


class VariableCountMismatch(CharqError):
    pass


class NotDivisible(CharqError):
    pass


class NonSymmetric(CharqError):
    """Raised when a polynomial (or one q-coefficient of a series) is not symmetric.

    ``degree`` is the offending q-degree when known, else None.
    """

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


# longer alias kept for callers that prefer the full name
NonSymmetricInput = NonSymmetric


class FactorNotExpandable(CharqError):
    pass


class NegativeQPower(CharqError):
    pass


class InvalidPartition(CharqError):
    pass


class NoFit(CharqError):
    """The denominator hypothesis was rejected: trailing coefficients do not vanish."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InsufficientPrefix(CharqError):
    pass


class UnsupportedSize(CharqError):
    pass


class BetaOutOfRange(CharqError):
    pass
