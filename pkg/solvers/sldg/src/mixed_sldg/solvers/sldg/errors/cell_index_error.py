"""Exception raised for cell indices outside the grid."""

from __future__ import annotations

from .invalid_argument_error import InvalidArgumentError


class CellIndexError(InvalidArgumentError, IndexError):
    """Raised when a cell index is not in ``[0, n_cells)``."""

    __slots__ = ()

    def __init__(self, index: int, n_cells: int) -> None:
        """Initialize the error with the offending index and the grid size."""
        super().__init__("i", f"must satisfy 0 <= i < {n_cells}, got {index}")
