"""Exception hierarchy.

Every mathematical failure carries a ``kind`` string that the CLI reports
verbatim in its ``{"error": {"kind": ..., "detail": ...}}`` object.
"""


class GermError(Exception):
    """Base class for mathematical failures (CLI exit code 2)."""

    @property
    def kind(self):
        return type(self).__name__

    @property
    def detail(self):
        return str(self)


class ParseError(ValueError):
    """Malformed input text or JSON (CLI exit code 1)."""


class DivisionByZero(GermError, ZeroDivisionError):
    pass


class NonInvertible(GermError):
    """The lift of a field element shares a factor with the modulus."""


class RingMismatch(GermError, TypeError):
    pass


class IllegalSubstitution(GermError):
    pass


class SingularMatrix(GermError):
    pass


class InexactDivision(GermError):
    pass


class NotRegularError(GermError):
    pass


class SearchExhausted(GermError):
    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class TruncationBudgetExhausted(GermError):
    def __init__(self, message, level=None, partial=None):
        super().__init__(message)
        self.level = level
        self.partial = partial


class AllVanish(GermError):
    pass


class TooManyRoots(GermError):
    pass


class TransversalityFailure(GermError):
    pass


class SeedTooShort(GermError):
    def __init__(self, message, needed=None):
        super().__init__(message)
        self.needed = needed


class DivisibilityFailure(GermError):
    pass


class HenselStall(GermError):
    pass


class OnDiscriminantLocus(GermError):
    pass


class NotARoot(GermError):
    pass


class PoleAtPoint(GermError):
    pass
