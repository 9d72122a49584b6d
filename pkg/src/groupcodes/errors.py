class CapExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured size bound."""


class FieldMismatchError(ValueError):
    pass


class ParseError(ValueError):
    """Malformed text input; ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
