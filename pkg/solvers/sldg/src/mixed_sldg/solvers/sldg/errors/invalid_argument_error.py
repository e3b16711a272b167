"""Base exception for rejected solver arguments."""

from __future__ import annotations


class InvalidArgumentError(ValueError):
    """Raised when an argument violates an operation's precondition."""

    __slots__ = ()

    def __init__(self, parameter: str, reason: str) -> None:
        """Initialize the error with parameter context."""
        message: str = f"param '{parameter}' {reason}."
        super().__init__(message)
