"""Exception raised for NaN or infinite inputs."""

from __future__ import annotations

from .invalid_argument_error import InvalidArgumentError


class NonFiniteValueError(InvalidArgumentError):
    """Raised when a value that must be finite is NaN or infinite."""

    __slots__ = ()

    def __init__(self, parameter: str) -> None:
        """Initialize the error with parameter context."""
        super().__init__(parameter, "must be finite")
