"""Projection onto the cell-wise Legendre basis, reconstruction, mass and L2 norms."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import ParameterRangeError
from .legendre import Domain1D, default_projection_nodes, gauss_legendre_rule, legendre_eval_all
from .storage import CoefficientGrid, PrecisionLayout

ScalarField = Callable[[NDArray[np.float64]], ArrayLike]


def projection_matrix(order: int, quad_n: int) -> NDArray[np.float64]:
    """Matrix ``M`` with ``c = f(nodes) @ M``: ``M[q, j] = (2j + 1)/2 w_q P_j(xi_q)``."""
    rule = gauss_legendre_rule(quad_n)
    values = legendre_eval_all(order - 1, rule.nodes)
    scale = (2.0 * np.arange(order) + 1.0) / 2.0
    return (values * rule.weights).T * scale


def project_samples(samples: NDArray[np.float64], order: int, quad_n: int) -> NDArray[np.float64]:
    """Project per-cell samples at the ``quad_n`` Gauss nodes, shape ``(..., quad_n)`` -> ``(..., order)``."""
    return samples @ projection_matrix(order, quad_n)


def project_function(
    f: ScalarField,
    dom: Domain1D,
    layout: PrecisionLayout,
    quad_n: int | None = None,
) -> CoefficientGrid:
    """L2-project ``f`` onto the piecewise Legendre space and store it through ``layout``.

    ``c_ij = (2j+1)/2 sum_q w_q f(x_i + h/2 xi_q) P_j(xi_q)``. ``f`` is called once with the
    ``(n_cells, quad_n)`` array of quadrature points.

    Raises:
        ParameterRangeError: If ``quad_n < layout.order``.
    """
    n = default_projection_nodes(layout.order) if quad_n is None else quad_n
    if n < layout.order:
        raise ParameterRangeError("quad_n", n, f">= order ({layout.order})")
    points = dom.quadrature_points(gauss_legendre_rule(n))
    samples = np.broadcast_to(np.asarray(f(points), dtype=np.float64), points.shape)
    grid = CoefficientGrid(dom, layout)
    grid.assign(project_samples(samples, layout.order, n))
    return grid


def evaluate(grid: CoefficientGrid, x: ArrayLike) -> NDArray[np.float64]:
    """Reconstruct the piecewise polynomial at ``x`` (periodic wrap, half-open cells)."""
    index, xi = grid.domain.locate(x)
    coefficients = grid.coefficients()[index]
    basis = legendre_eval_all(grid.order - 1, xi)
    return np.sum(coefficients * np.moveaxis(basis, 0, -1), axis=-1)


def evaluate_at_nodes(grid: CoefficientGrid, quad_n: int) -> NDArray[np.float64]:
    """Values at the ``quad_n`` Gauss nodes of every cell, shape ``(n_cells, quad_n)``."""
    basis = legendre_eval_all(grid.order - 1, gauss_legendre_rule(quad_n).nodes)
    return grid.coefficients() @ basis


def total_mass(grid: CoefficientGrid) -> float:
    """``h sum_i c_i0`` accumulated in float64 with numpy's fixed pairwise order."""
    return float(grid.domain.h * np.sum(grid.cell_means()))


def absolute_mass(grid: CoefficientGrid) -> float:
    """``h sum_i |c_i0|``; equals the mass for non-negative data and stays positive for zero-mean data."""
    return float(grid.domain.h * np.sum(np.abs(grid.cell_means())))


def l2_error(a: CoefficientGrid, b: CoefficientGrid) -> float:
    """Discrete L2 distance, ``sqrt(sum_i h sum_j dc_ij^2 / (2j + 1))``.

    Equals the ``o``-point Gauss quadrature of ``(u_a - u_b)^2`` by orthogonality. The grids may
    differ in precision layout but must share domain and order.

    Raises:
        GridMismatchError: If domain or order differ.
    """
    a.require_same_discretisation(b, "b", same_layout=False)
    difference = a.coefficients() - b.coefficients()
    weights = 1.0 / (2.0 * np.arange(a.order) + 1.0)
    return float(np.sqrt(a.domain.h * np.sum(difference * difference * weights)))


def l2_norm(grid: CoefficientGrid) -> float:
    """Discrete L2 norm of one grid."""
    return l2_error(grid, grid.like())


def max_abs_coefficient(grid: CoefficientGrid) -> float:
    """Largest coefficient magnitude across both stores."""
    wide = float(np.max(np.abs(grid.wide))) if grid.wide.size else 0.0
    narrow = float(np.max(np.abs(grid.narrow))) if grid.narrow.size else 0.0
    return max(wide, narrow)


def relative_mass_drift(initial_mass: float, mass: float, scale: float = 0.0) -> float:
    """``|m - m0| / max(|m0|, scale)``; ``scale`` keeps zero-mean data meaningful.

    Raises:
        ParameterRangeError: If both ``m0`` and ``scale`` are zero.
    """
    reference = max(abs(initial_mass), abs(scale))
    if reference == 0.0:
        raise ParameterRangeError("scale", scale, "non-zero when the initial mass is zero")
    return abs(mass - initial_mass) / reference
