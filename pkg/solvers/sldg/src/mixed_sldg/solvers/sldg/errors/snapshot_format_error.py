"""Exception raised for unreadable grid snapshot files."""

from __future__ import annotations

from .invalid_argument_error import InvalidArgumentError


class SnapshotFormatError(InvalidArgumentError):
    """Raised when a snapshot header or payload is malformed."""

    __slots__ = ()

    def __init__(self, path: str, detail: str) -> None:
        """Initialize the error with the file and what is wrong with it."""
        super().__init__("path", f"'{path}' is not a valid snapshot ({detail})")
