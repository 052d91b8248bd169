"""Exception types shared by the analysis modules."""


class InputError(ValueError):
    """Raised when an input value, record, or file violates a model invariant."""


class ConfigError(ValueError):
    """Raised for invalid analysis configuration."""
