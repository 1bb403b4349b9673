"""Exception hierarchy used across the library."""


class SmoothnessLabError(Exception):
    """Base class for all library errors."""


class DomainError(SmoothnessLabError):
    """A value lies outside the admissible domain of an operation."""


class ConfigError(SmoothnessLabError):
    """Invalid configuration: unknown names, bad parameters, empty grids."""


class CapabilityError(SmoothnessLabError):
    """The requested computation is not supported for this input."""


class InternalError(SmoothnessLabError):
    """An internal consistency check failed; indicates a bug, not bad input."""
