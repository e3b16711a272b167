"""Exception raised when a value cannot be stored in 32-bit precision."""

from __future__ import annotations

from .invalid_argument_error import InvalidArgumentError


class NarrowingOverflowError(InvalidArgumentError):
    """Raised when rounding to float32 would produce an infinity."""

    __slots__ = ()

    def __init__(self, parameter: str, count: int = 1) -> None:
        """Initialize the error with parameter context and the number of offending values."""
        super().__init__(parameter, f"has {count} value(s) outside the float32 range")
