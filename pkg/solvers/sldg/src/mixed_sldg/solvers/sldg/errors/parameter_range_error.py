"""Exception raised for numeric parameters outside their admissible range."""

from __future__ import annotations

from .invalid_argument_error import InvalidArgumentError


class ParameterRangeError(InvalidArgumentError):
    """Raised when a parameter lies outside its documented range."""

    __slots__ = ()

    def __init__(self, parameter: str, value: object, expected: str) -> None:
        """Initialize the error with the value and the expected range."""
        super().__init__(parameter, f"must be {expected}, got {value!r}")
