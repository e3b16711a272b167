"""Exception raised when a parameter is not a real number."""

from __future__ import annotations


class NumberTypeError(TypeError):
    """Raised when a parameter is not an int or float."""

    __slots__ = ()

    def __init__(self, parameter: str) -> None:
        """Initialize the error with parameter context."""
        message: str = f"param '{parameter}' must be a real number."
        super().__init__(message)
