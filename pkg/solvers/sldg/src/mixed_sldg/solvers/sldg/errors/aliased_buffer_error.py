"""Exception raised when source and destination share storage."""

from __future__ import annotations

from .invalid_argument_error import InvalidArgumentError


class AliasedBufferError(InvalidArgumentError):
    """Raised when an out-of-place update is asked to write into its own input."""

    __slots__ = ()

    def __init__(self, parameter: str = "dst") -> None:
        """Initialize the error with parameter context."""
        super().__init__(parameter, "must not share storage with 'src'")
