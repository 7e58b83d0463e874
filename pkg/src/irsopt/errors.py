"""Exception types shared across the package."""


class IrsOptError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(IrsOptError, ValueError):
    """Vector lengths of channel estimate, mask, phases or error disagree."""


class DomainError(IrsOptError, ValueError):
    """A scalar argument lies outside its admissible domain."""


class AssumptionViolatedError(IrsOptError, ValueError):
    """The uncertainty radius exceeds what the closed-form worst case supports.

    Raised when a caller evaluates the worst-case SNR (or runs a solver)
    without having validated that the radius is small enough for the
    closed form to hold.
    """


class CapacityError(IrsOptError, ValueError):
    """Problem size exceeds a configured enumeration cap."""


class ConfigError(IrsOptError, ValueError):
    """An experiment configuration is malformed or inconsistent."""
