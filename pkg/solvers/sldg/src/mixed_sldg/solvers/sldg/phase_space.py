"""Tensor-product Legendre coefficients on a periodic 1+1D phase-space grid.

Cell ``(i, k)`` of an ``N_x x N_v`` grid holds ``o x o`` coefficients ``c[j_x, j_v]``. A
coefficient is kept in float64 when ``j_x + j_v < d`` and in float32 otherwise, so the cell
mass ``c[0, 0]`` is wide whenever ``d >= 1``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import GridMismatchError, ParameterRangeError
from .legendre import Domain1D, default_projection_nodes, gauss_legendre_rule, legendre_eval_all
from .projection import projection_matrix
from .storage import NARROW_BYTES, WIDE_BYTES, PrecisionLayout, memorydown, narrow_to_single, require_finite

logger = logging.getLogger(__name__)

PhaseSpaceField = Callable[[NDArray[np.float64], NDArray[np.float64]], ArrayLike]


class Axis(str, Enum):
    """Phase-space direction of a sweep."""

    X = "x"
    V = "v"


@dataclass(frozen=True)
class PhaseSpaceLayout:
    """Per-dimension order ``o`` and the total-degree threshold ``d`` for float64 storage."""

    order: int
    n_double: int
    wide_mask: NDArray[np.bool_] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Validate ``o >= 1`` and ``0 <= d <= 2o - 1`` and build the rank mask."""
        if self.order < 1:
            raise ParameterRangeError("order", self.order, ">= 1")
        if not 0 <= self.n_double <= 2 * self.order - 1:
            raise ParameterRangeError("n_double", self.n_double, f"in [0, {2 * self.order - 1}]")
        degree = np.add.outer(np.arange(self.order), np.arange(self.order))
        mask = degree < self.n_double
        mask.setflags(write=False)
        object.__setattr__(self, "wide_mask", mask)

    @classmethod
    def double(cls, order: int) -> PhaseSpaceLayout:
        """All coefficients in float64."""
        return cls(order, 2 * order - 1)

    @classmethod
    def from_layout(cls, layout: PrecisionLayout) -> PhaseSpaceLayout:
        """Same order and threshold as a 1D layout."""
        return cls(layout.order, layout.n_double)

    @property
    def n_wide(self) -> int:
        """Float64 coefficients per cell."""
        return int(np.count_nonzero(self.wide_mask))

    @property
    def n_single(self) -> int:
        """Float32 coefficients per cell."""
        return self.order * self.order - self.n_wide

    @property
    def bytes_per_cell(self) -> int:
        """Storage of one cell."""
        return WIDE_BYTES * self.n_wide + NARROW_BYTES * self.n_single

    @property
    def memorydown(self) -> float:
        """Memory of the all-float64 layout divided by this layout's memory."""
        return memorydown(self.order, self.n_double, dims=2)


class PhaseSpaceGrid:
    """Mixed-precision DG coefficients of ``f(x, v)``; both directions are periodic."""

    __slots__ = ("dom_v", "dom_x", "layout", "narrow", "wide")

    def __init__(self, dom_x: Domain1D, dom_v: Domain1D, layout: PhaseSpaceLayout) -> None:
        """Allocate a zero-initialised grid."""
        self.dom_x = dom_x
        self.dom_v = dom_v
        self.layout = layout
        shape = (dom_x.n_cells, dom_v.n_cells)
        self.wide: NDArray[np.float64] = np.zeros((*shape, layout.n_wide), dtype=np.float64)
        self.narrow: NDArray[np.float32] = np.zeros((*shape, layout.n_single), dtype=np.float32)

    @property
    def order(self) -> int:
        """Coefficients per direction."""
        return self.layout.order

    @property
    def cell_area(self) -> float:
        """``h_x h_v``."""
        return self.dom_x.h * self.dom_v.h

    def memory_bytes(self) -> int:
        """Exact coefficient storage."""
        return int(self.wide.nbytes + self.narrow.nbytes)

    def coefficients(self) -> NDArray[np.float64]:
        """Promoted coefficients, shape ``(N_x, N_v, o, o)`` indexed ``[i, k, j_x, j_v]``."""
        o = self.order
        out = np.empty((self.dom_x.n_cells, self.dom_v.n_cells, o, o), dtype=np.float64)
        mask = self.layout.wide_mask
        out[:, :, mask] = self.wide
        out[:, :, ~mask] = self.narrow
        return out

    def assign(self, coefficients: ArrayLike) -> None:
        """Store a full float64 coefficient tensor through the precision split."""
        data = np.asarray(coefficients, dtype=np.float64)
        o = self.order
        expected = (self.dom_x.n_cells, self.dom_v.n_cells, o, o)
        if data.shape != expected:
            raise GridMismatchError("coefficients", f"expected shape {expected}, got {data.shape}")
        require_finite(data, "coefficients")
        mask = self.layout.wide_mask
        narrow = narrow_to_single(data[:, :, ~mask], "coefficients")
        self.wide[...] = data[:, :, mask]
        self.narrow[...] = narrow

    def mass_coefficients(self) -> NDArray[np.float64]:
        """``c[0, 0]`` of every cell, shape ``(N_x, N_v)``."""
        if self.layout.n_double >= 1:
            return self.wide[:, :, 0].copy()
        return self.narrow[:, :, 0].astype(np.float64)

    def total_mass(self) -> float:
        """``h_x h_v sum c[0, 0]`` in float64, fixed summation order."""
        return float(self.cell_area * np.sum(self.mass_coefficients()))

    def l2_norm(self) -> float:
        """``(int int f^2)^(1/2)`` from the coefficients."""
        c = self.coefficients()
        inverse = 1.0 / (2.0 * np.arange(self.order) + 1.0)
        weights = np.multiply.outer(inverse, inverse)
        return float(np.sqrt(self.cell_area * np.sum(c * c * weights)))

    def nodal_lines(self, axis: Axis | str) -> NDArray[np.float64]:
        """1D modal lines along ``axis``, one per Gauss node of each perpendicular cell.

        Returns shape ``(N_perp * o, N_axis, o)``; line ``p * o + q`` is perpendicular cell ``p``
        sampled at its Gauss node ``q``.
        """
        c = self.coefficients()
        vandermonde = _vandermonde(self.order)
        if Axis(axis) is Axis.X:
            nodal = np.einsum("qb,ikab->kqia", vandermonde, c)
            return nodal.reshape(self.dom_v.n_cells * self.order, self.dom_x.n_cells, self.order)
        nodal = np.einsum("qa,ikab->iqkb", vandermonde, c)
        return nodal.reshape(self.dom_x.n_cells * self.order, self.dom_v.n_cells, self.order)

    def assign_nodal_lines(self, lines: NDArray[np.float64], axis: Axis | str) -> None:
        """Inverse of :meth:`nodal_lines`: transform back to modal form and store."""
        o = self.order
        nx, nv = self.dom_x.n_cells, self.dom_v.n_cells
        to_modal = projection_matrix(o, o)
        if Axis(axis) is Axis.X:
            nodal = lines.reshape(nv, o, nx, o)
            self.assign(np.einsum("qb,kqia->ikab", to_modal, nodal))
        else:
            nodal = lines.reshape(nx, o, nv, o)
            self.assign(np.einsum("qa,iqkb->ikab", to_modal, nodal))

    def node_positions(self, axis: Axis | str) -> NDArray[np.float64]:
        """Gauss node coordinates of every cell along ``axis``, shape ``(N, o)``."""
        dom = self.dom_x if Axis(axis) is Axis.X else self.dom_v
        return dom.quadrature_points(gauss_legendre_rule(self.order))

    def like(self) -> PhaseSpaceGrid:
        """Zero grid with the same discretisation."""
        return PhaseSpaceGrid(self.dom_x, self.dom_v, self.layout)

    def copy(self) -> PhaseSpaceGrid:
        """Deep copy."""
        other = self.like()
        other.wide[...] = self.wide
        other.narrow[...] = self.narrow
        return other

    def require_same_discretisation(self, other: PhaseSpaceGrid, parameter: str) -> None:
        """Raise :class:`GridMismatchError` unless ``other`` has the same domains and layout."""
        if (other.dom_x, other.dom_v) != (self.dom_x, self.dom_v):
            raise GridMismatchError(parameter, "phase-space domains differ")
        if other.layout != self.layout:
            raise GridMismatchError(parameter, f"layout {other.layout} != {self.layout}")


def _vandermonde(order: int) -> NDArray[np.float64]:
    """``V[q, j] = P_j(xi_q)`` at the ``order`` Gauss nodes."""
    return legendre_eval_all(order - 1, gauss_legendre_rule(order).nodes).T


def project_phase_space(
    f: PhaseSpaceField,
    dom_x: Domain1D,
    dom_v: Domain1D,
    layout: PhaseSpaceLayout,
    quad_n: int | None = None,
) -> PhaseSpaceGrid:
    """Tensor Gauss projection of ``f(x, v)`` (called with broadcastable 4D arrays ``[i, k, q_x, q_v]``)."""
    n = default_projection_nodes(layout.order) if quad_n is None else quad_n
    if n < layout.order:
        raise ParameterRangeError("quad_n", n, f">= order ({layout.order})")
    rule = gauss_legendre_rule(n)
    x = dom_x.quadrature_points(rule)[:, None, :, None]
    v = dom_v.quadrature_points(rule)[None, :, None, :]
    samples = np.broadcast_to(np.asarray(f(x, v), dtype=np.float64), (dom_x.n_cells, dom_v.n_cells, n, n))
    matrix = projection_matrix(layout.order, n)
    grid = PhaseSpaceGrid(dom_x, dom_v, layout)
    grid.assign(np.einsum("ikpq,pa,qb->ikab", samples, matrix, matrix))
    logger.debug("projected phase-space data onto %dx%d cells, order %d", dom_x.n_cells, dom_v.n_cells, layout.order)
    return grid
