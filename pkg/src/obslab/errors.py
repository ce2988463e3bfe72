"""Error types shared across the package."""


class InvalidInput(ValueError):
    """An argument violates an operation's stated precondition."""


class ScaleLimit(RuntimeError):
    """The input exceeds the configured exhaustive-search guard."""
