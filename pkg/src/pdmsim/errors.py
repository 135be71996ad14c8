"""Exception types shared across the package."""


class UsageError(ValueError):
    """Raised when a caller violates an operation's preconditions."""


class InvariantViolation(Exception):
    """Raised when constructed data fails its own validity checks."""
