"""Shared exception types."""


class ResourceLimitExceeded(RuntimeError):
    """A requested computation is beyond the configured desk-scale bounds."""
