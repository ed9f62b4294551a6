"""Exception types shared across the package."""


class FinfreeError(Exception):
    """Base class for errors raised by this package."""


class SizeCapError(FinfreeError, ValueError):
    """An enumeration was requested beyond its configured size cap."""


class DimensionMismatch(FinfreeError, ValueError):
    """Operands live on ground sets or degrees of different sizes."""


class DomainError(FinfreeError, ValueError):
    """Input lies outside the mathematical domain of the operation."""
