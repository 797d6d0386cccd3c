class InstanceError(ValueError):
    """Malformed or invalid instance data."""


class CapExceeded(RuntimeError):
    """A desk-scale limit (players, parameter k, uncertainty) was exceeded."""


class InternalError(AssertionError):
    """A solver produced an object that fails its own post-check."""
