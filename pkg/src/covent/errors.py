"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """An iterative routine exhausted its iteration budget."""


class ConfigError(ValueError):
    """A sweep or fixture configuration failed validation."""
