"""Mixed-precision Legendre coefficient storage.

Per cell the first ``n_double`` coefficients live in a float64 buffer and the remaining
``order - n_double`` in a float32 buffer. Both buffers are C-contiguous and cell-major, so cell
``i`` occupies ``wide[i]`` and ``narrow[i]``. Values are promoted to float64 on read and rounded
to nearest (ties to even) on write; a write that would overflow float32 is rejected.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from numbers import Integral

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import CellIndexError, GridMismatchError, NarrowingOverflowError, NonFiniteValueError, ParameterRangeError
from .legendre import Domain1D

logger = logging.getLogger(__name__)

WIDE_BYTES = 8
NARROW_BYTES = 4


@dataclass(frozen=True)
class PrecisionLayout:
    """Order ``o`` and the number ``d`` of coefficients per cell kept in float64."""

    order: int
    n_double: int

    def __post_init__(self) -> None:
        """Validate ``o >= 1`` and ``0 <= d <= o``."""
        if self.order < 1:
            raise ParameterRangeError("order", self.order, ">= 1")
        if not 0 <= self.n_double <= self.order:
            raise ParameterRangeError("n_double", self.n_double, f"in [0, {self.order}]")

    @classmethod
    def double(cls, order: int) -> PrecisionLayout:
        """All coefficients in float64."""
        return cls(order, order)

    @property
    def n_single(self) -> int:
        """Coefficients per cell kept in float32."""
        return self.order - self.n_double

    @property
    def bytes_per_cell(self) -> int:
        """``8d + 4(o - d)``."""
        return WIDE_BYTES * self.n_double + NARROW_BYTES * self.n_single

    @property
    def memorydown(self) -> float:
        """Memory of the all-float64 layout divided by this layout's memory."""
        return memorydown(self.order, self.n_double)


def memorydown(order: int, n_double: int, dims: int = 1) -> float:
    """Memory reduction of tensor-product storage relative to all-float64.

    In ``dims`` dimensions a cell holds ``order**dims`` coefficients; those whose multi-index has
    total degree below ``n_double`` are float64, the rest float32.
    """
    if dims < 1:
        raise ParameterRangeError("dims", dims, ">= 1")
    total = order**dims
    n_wide = sum(1 for index in itertools.product(range(order), repeat=dims) if sum(index) < n_double)
    return WIDE_BYTES * total / (WIDE_BYTES * n_wide + NARROW_BYTES * (total - n_wide))


def narrow_to_single(values: NDArray[np.float64], parameter: str) -> NDArray[np.float32]:
    """Round float64 values to float32, rejecting results that overflow to infinity.

    Raises:
        NarrowingOverflowError: If any value is outside the float32 range.
    """
    with np.errstate(over="ignore"):
        narrowed = values.astype(np.float32)
    overflow = int(np.count_nonzero(~np.isfinite(narrowed)))
    if overflow:
        raise NarrowingOverflowError(parameter, overflow)
    return narrowed


def require_finite(values: NDArray[np.float64], parameter: str) -> None:
    """Raise :class:`NonFiniteValueError` if ``values`` holds NaN or infinity."""
    if not np.all(np.isfinite(values)):
        raise NonFiniteValueError(parameter)


class CoefficientGrid:
    """``n_cells x order`` Legendre coefficients over a periodic domain in split-precision storage."""

    __slots__ = ("domain", "layout", "narrow", "wide")

    def __init__(self, domain: Domain1D, layout: PrecisionLayout) -> None:
        """Allocate a zero-initialised grid."""
        self.domain = domain
        self.layout = layout
        self.wide: NDArray[np.float64] = np.zeros((domain.n_cells, layout.n_double), dtype=np.float64)
        self.narrow: NDArray[np.float32] = np.zeros((domain.n_cells, layout.n_single), dtype=np.float32)

    @property
    def n_cells(self) -> int:
        """Number of cells."""
        return self.domain.n_cells

    @property
    def order(self) -> int:
        """Coefficients per cell."""
        return self.layout.order

    def memory_bytes(self) -> int:
        """Exact coefficient storage, ``N (8d + 4(o - d))``."""
        return int(self.wide.nbytes + self.narrow.nbytes)

    def _check_index(self, i: int) -> int:
        if isinstance(i, bool) or not isinstance(i, Integral) or not 0 <= i < self.n_cells:
            raise CellIndexError(i, self.n_cells)  # type: ignore[arg-type]
        return int(i)

    def get_cell(self, i: int) -> NDArray[np.float64]:
        """Return the ``order`` coefficients of cell ``i`` promoted to float64."""
        i = self._check_index(i)
        values = np.empty(self.order, dtype=np.float64)
        values[: self.layout.n_double] = self.wide[i]
        values[self.layout.n_double :] = self.narrow[i]
        return values

    def set_cell(self, i: int, values: ArrayLike) -> None:
        """Store cell ``i``: wide slots bit-exact, narrow slots rounded to nearest float32.

        Raises:
            CellIndexError: If ``i`` is out of range.
            GridMismatchError: If ``values`` does not hold ``order`` entries.
            NonFiniteValueError: If any value is NaN or infinite.
            NarrowingOverflowError: If a narrow slot would overflow float32.
        """
        i = self._check_index(i)
        data = np.asarray(values, dtype=np.float64)
        if data.shape != (self.order,):
            raise GridMismatchError("values", f"expected shape ({self.order},), got {data.shape}")
        require_finite(data, "values")
        narrow = narrow_to_single(data[self.layout.n_double :], "values")
        self.wide[i] = data[: self.layout.n_double]
        self.narrow[i] = narrow

    def coefficients(self) -> NDArray[np.float64]:
        """All coefficients promoted to float64, shape ``(n_cells, order)``."""
        return np.concatenate((self.wide, self.narrow.astype(np.float64)), axis=1)

    def assign(self, coefficients: ArrayLike) -> None:
        """Store a full ``(n_cells, order)`` float64 array through the precision split."""
        data = np.asarray(coefficients, dtype=np.float64)
        if data.shape != (self.n_cells, self.order):
            raise GridMismatchError("coefficients", f"expected shape {(self.n_cells, self.order)}, got {data.shape}")
        require_finite(data, "coefficients")
        narrow = narrow_to_single(data[:, self.layout.n_double :], "coefficients")
        self.wide[...] = data[:, : self.layout.n_double]
        self.narrow[...] = narrow

    def cell_means(self) -> NDArray[np.float64]:
        """Coefficient ``c_{i0}`` of every cell in float64."""
        if self.layout.n_double:
            return self.wide[:, 0].copy()
        return self.narrow[:, 0].astype(np.float64)

    def like(self, layout: PrecisionLayout | None = None) -> CoefficientGrid:
        """Zero grid on the same domain, optionally with another layout."""
        return CoefficientGrid(self.domain, layout or self.layout)

    def copy(self) -> CoefficientGrid:
        """Deep copy."""
        other = CoefficientGrid(self.domain, self.layout)
        other.wide[...] = self.wide
        other.narrow[...] = self.narrow
        return other

    def require_same_discretisation(self, other: CoefficientGrid, parameter: str, *, same_layout: bool = True) -> None:
        """Raise :class:`GridMismatchError` unless ``other`` shares domain and order (and layout)."""
        if other.domain != self.domain:
            raise GridMismatchError(parameter, f"domain {other.domain} != {self.domain}")
        if other.order != self.order:
            raise GridMismatchError(parameter, f"order {other.order} != {self.order}")
        if same_layout and other.layout != self.layout:
            raise GridMismatchError(parameter, f"layout {other.layout} != {self.layout}")

    def __repr__(self) -> str:
        """Short description with domain and layout."""
        return f"CoefficientGrid(domain={self.domain!r}, layout={self.layout!r})"


def new_grid(domain: Domain1D, layout: PrecisionLayout) -> CoefficientGrid:
    """Zero-initialised grid; allocation failure propagates as ``MemoryError``."""
    grid = CoefficientGrid(domain, layout)
    logger.debug("allocated %s (%d bytes)", grid, grid.memory_bytes())
    return grid
