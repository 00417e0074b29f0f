"""Exception types shared across the package."""


class BesselStruveError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BesselStruveError, ValueError):
    """An order parameter lies outside the range a routine is defined for."""


class ParameterError(BesselStruveError, ValueError):
    """A class/operator parameter violates its admissible range."""


class BracketError(BesselStruveError, ValueError):
    """Bisection endpoints do not straddle a sign change."""


class MonotonicityError(BesselStruveError, RuntimeError):
    """A margin assumed monotone was observed to invert during bisection."""


class DenominatorDegeneracyError(BesselStruveError, ArithmeticError):
    """A ratio denominator fell below the configured floor at a sample point."""

    def __init__(self, message, z=None):
        super().__init__(message)
        self.z = z


class InconclusiveError(BesselStruveError):
    """A truncated comparison cannot be decided: the tail straddles the threshold."""


class SeriesFormatError(BesselStruveError, ValueError):
    """A coefficient-list file does not parse."""
