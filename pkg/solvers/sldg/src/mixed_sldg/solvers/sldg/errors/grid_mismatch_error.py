"""Exception raised when two grids do not describe the same discretisation."""

from __future__ import annotations

from .invalid_argument_error import InvalidArgumentError


class GridMismatchError(InvalidArgumentError):
    """Raised when grids differ in domain, order or precision layout."""

    __slots__ = ()

    def __init__(self, parameter: str, detail: str) -> None:
        """Initialize the error with parameter context and what differs."""
        super().__init__(parameter, f"does not match: {detail}")
