"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ArchimedesError(Exception):
    """Base class for all library errors."""


class DivisionByIntervalContainingZero(ArchimedesError, ZeroDivisionError):
    pass


class NegativeRadicand(ArchimedesError, ValueError):
    def __init__(self, message: str = "radicand is not certified nonnegative", path: tuple = ()):
        super().__init__(message)
        self.path = path


class PrecisionExhausted(ArchimedesError):
    """Enclosures became too wide to keep a certified separation.

    Callers are expected to retry with more precision bits.
    """


class EndpointMismatch(ArchimedesError, ValueError):
    pass


class NotConcave(ArchimedesError, ValueError):
    pass


class ChainsNotNested(ArchimedesError, ValueError):
    pass


class PointNotInterior(ArchimedesError, ValueError):
    pass


class ToleranceUnreachable(ArchimedesError):
    def __init__(self, message: str, required_doublings: int):
        super().__init__(message)
        self.required_doublings = required_doublings


class UnsupportedAngle(ArchimedesError, ValueError):
    pass


class NonConvergent(ArchimedesError):
    pass


class NoClosedForm(ArchimedesError, ValueError):
    pass


class DivisionByZeroRegion(DivisionByIntervalContainingZero):
    def __init__(self, message: str, path: tuple = ()):
        super().__init__(message)
        self.path = path


class ParseError(ArchimedesError, ValueError):
    pass
