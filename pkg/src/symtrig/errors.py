"""Exception and warning types shared across the package."""


class InvalidArgumentError(ValueError):
    """Raised for dimension mismatches, non-finite input, or out-of-set indices."""


class SizeLimitError(ValueError):
    """Raised when a factorial-cost routine is asked for too large a size."""


class AccuracyWarning(RuntimeWarning):
    """Issued when a numerical rule is likely under-resolved for its input."""
