"""Exception types shared across robinkit."""


class RobinKitError(Exception):
    """Base class for all robinkit errors."""


class DomainError(RobinKitError, ValueError):
    """Input outside the mathematical domain of an operation."""


class CapacityError(RobinKitError):
    """A prime table (or other bounded resource) is too small for the request."""


class PrecisionError(RobinKitError):
    """An enclosure comparison did not separate before the precision cap."""

    def __init__(self, message, *, n=None, precision=None):
        super().__init__(message)
        self.n = n
        self.precision = precision
