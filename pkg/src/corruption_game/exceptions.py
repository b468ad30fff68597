"""Exception types shared across the package."""


class UsageError(ValueError):
    """Invalid arguments or preconditions supplied by the caller."""


class ParseError(ValueError):
    """Malformed graph or scenario text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapacityError(RuntimeError):
    """Input is larger than an exact routine is allowed to handle."""
