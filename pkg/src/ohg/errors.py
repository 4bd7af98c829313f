"""Shared exception types."""


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class ResourceError(RuntimeError):
    """A search exceeded its configured cap or budget."""
