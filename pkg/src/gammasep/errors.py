"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of a function."""


class PdfSingularityError(DomainError):
    """The gamma density diverges at x = 0 (shape < 1).

    Raised instead of returning ``inf`` so that the divergence never leaks
    silently into metric arithmetic.
    """


class NumericDomainError(ArithmeticError):
    """An internal numeric contract was violated (not a caller error)."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved
