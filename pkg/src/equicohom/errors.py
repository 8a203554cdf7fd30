"""Exception types shared across the package."""


class EquicohomError(Exception):
    """Base class for all errors raised by equicohom."""


class ComplexNotExact(EquicohomError):
    """A composite of consecutive coboundaries is not zero."""


class IndexOutOfRange(EquicohomError, IndexError):
    pass


class DimensionMismatch(EquicohomError, ValueError):
    pass


class PathMissing(EquicohomError):
    """No edge-path from the base vertex inside the required fixed complex."""


class HypothesisViolation(EquicohomError):
    """G-connectedness or a G-fixed base vertex is missing."""


class LiftInvariantViolation(EquicohomError):
    """A constructed lift failed simpliciality, naturality or projection checks."""


class NotCohomologous(EquicohomError):
    pass


class ValidationError(EquicohomError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(EquicohomError):
    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location
