"""Exception hierarchy shared by every module."""


class DiffGaloisError(Exception):
    """Base class for all library errors."""


class ParseError(DiffGaloisError, ValueError):
    """Malformed expression text; ``position`` is the 0-based column."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class InvalidParameterError(DiffGaloisError, ValueError):
    """A q or tau outside the admissible range, or another bad parameter."""


class SizeError(DiffGaloisError, ValueError):
    """Input exceeds a hard size guard."""


class ZeroInputError(DiffGaloisError, ValueError):
    """An operation needing a nonzero rational function received zero."""
