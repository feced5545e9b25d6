"""Exception types shared across the package."""


class BumplessError(Exception):
    """Base class for all package errors."""


class InvalidInput(BumplessError, ValueError):
    pass


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)


class NotActive(BumplessError):
    """Raised when a droop is requested on a rectangle that is not active."""


class NotApplicable(BumplessError):
    """Raised when no K-theoretic droop form matches."""


class LimitExceeded(BumplessError):
    """Raised when a size guardrail is exceeded."""


class InternalInconsistency(BumplessError):
    """A checked identity failed inside an algorithm (e.g. inexact division)."""


class NotInSpan(BumplessError):
    pass


class UnknownPattern(BumplessError, KeyError):
    pass


class InvalidOccurrence(BumplessError, ValueError):
    pass


class ConstructionFailed(BumplessError):
    pass
