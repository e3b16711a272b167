"""Exception raised for initial-condition names that are not built in."""

from __future__ import annotations

from collections.abc import Iterable

from .invalid_argument_error import InvalidArgumentError


class UnknownInitialConditionError(InvalidArgumentError):
    """Raised when an initial condition is requested by an unknown name."""

    __slots__ = ()

    def __init__(self, name: str, known: Iterable[str]) -> None:
        """Initialize the error with the requested and the available names."""
        super().__init__("ic", f"'{name}' is unknown (choose from {', '.join(sorted(known))})")
