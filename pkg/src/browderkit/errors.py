"""Exception hierarchy shared by all modules."""


class BrowderError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(BrowderError, ValueError):
    pass


class ZeroSymbol(BrowderError, ValueError):
    pass


class CircleZero(BrowderError, ValueError):
    pass


class PrecisionExhausted(BrowderError, ArithmeticError):
    """Ball arithmetic could not certify a decision at the maximum precision.

    This is an honest "don't know", never a wrong answer; callers turn it
    into an undecided verdict.
    """


class PreconditionFailed(BrowderError):
    def __init__(self, message, reasons=()):
        super().__init__(message)
        self.reasons = list(reasons)


class NotLeftSemiBrowder(PreconditionFailed):
    pass


class NotRightSemiBrowder(PreconditionFailed):
    pass


class DimensionCheckFailed(BrowderError, AssertionError):
    """An identity that theory guarantees did not hold: a bug, not bad input."""


class ClosedRangeUnknown(BrowderError):
    pass


class SpecParseError(BrowderError, ValueError):
    def __init__(self, message, line=None, column=None, path=None):
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(f"at {path}")
        super().__init__(message + (f" ({'; '.join(where)})" if where else ""))
        self.line, self.column, self.path = line, column, path
