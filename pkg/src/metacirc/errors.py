"""Shared exception types."""


class BoundExceeded(RuntimeError):
    """A configured computation bound (order, candidate count) was exceeded."""
