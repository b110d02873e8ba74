"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class QuadratureError(RuntimeError):
    """Adaptive integration failed to reach its tolerance."""


class InstabilityError(RuntimeError):
    """A time-stepping solve produced non-finite values."""


class ConfigError(ValueError):
    """A run configuration could not be parsed or is inconsistent."""
