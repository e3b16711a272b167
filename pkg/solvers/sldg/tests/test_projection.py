"""Tests for projection, reconstruction, mass and L2 norms."""

from __future__ import annotations

import numpy as np
import pytest

from mixed_sldg.solvers.sldg.errors import GridMismatchError, ParameterRangeError
from mixed_sldg.solvers.sldg.legendre import Domain1D, gauss_legendre_rule
from mixed_sldg.solvers.sldg.projection import (
    absolute_mass,
    evaluate,
    evaluate_at_nodes,
    l2_error,
    l2_norm,
    max_abs_coefficient,
    project_function,
    relative_mass_drift,
    total_mass,
)
from mixed_sldg.solvers.sldg.storage import CoefficientGrid, PrecisionLayout

UNIT = Domain1D(0.0, 1.0, 16)


def _random_grid(dom: Domain1D, layout: PrecisionLayout, seed: int = 0) -> CoefficientGrid:
    grid = CoefficientGrid(dom, layout)
    grid.assign(np.random.default_rng(seed).standard_normal((dom.n_cells, layout.order)))
    return grid


def test_linear_function_is_reproduced() -> None:
    """A polynomial of degree <= p is represented exactly."""
    grid = project_function(lambda x: x, UNIT, PrecisionLayout.double(2))
    assert abs(float(evaluate(grid, 0.25)) - 0.25) <= 1e-13
    np.testing.assert_allclose(evaluate(grid, [0.1, 0.5, 0.9]), [0.1, 0.5, 0.9], atol=1e-13)


@pytest.mark.parametrize("order", [1, 3, 5])
def test_polynomial_exactness_at_nodes(order: int) -> None:
    """Degree p polynomials are reproduced at the quadrature nodes."""
    coefficients = np.random.default_rng(order).standard_normal(order)

    def poly(x: np.ndarray) -> np.ndarray:
        return np.polynomial.polynomial.polyval(x, coefficients)

    grid = project_function(poly, UNIT, PrecisionLayout.double(order))
    points = UNIT.quadrature_points(gauss_legendre_rule(order + 2))
    np.testing.assert_allclose(evaluate_at_nodes(grid, order + 2), poly(points), atol=1e-12)


def test_projection_is_idempotent() -> None:
    """Projecting the reconstruction returns the same coefficients."""
    layout = PrecisionLayout.double(4)
    first = project_function(lambda x: np.exp(np.sin(2 * np.pi * x)), UNIT, layout)
    second = project_function(lambda x: evaluate(first, x), UNIT, layout)
    np.testing.assert_allclose(second.coefficients(), first.coefficients(), atol=1e-13)
    assert total_mass(second) == pytest.approx(total_mass(first), rel=1e-14)


def test_projection_rejects_too_few_nodes() -> None:
    """The quadrature must resolve the basis."""
    with pytest.raises(ParameterRangeError, match="quad_n"):
        project_function(lambda x: x, UNIT, PrecisionLayout.double(4), quad_n=3)


def test_projection_accepts_constant_callables() -> None:
    """Scalar results are broadcast over the quadrature points."""
    grid = project_function(lambda x: 2.0, UNIT, PrecisionLayout(3, 1))
    np.testing.assert_allclose(grid.cell_means(), 2.0)


@pytest.mark.parametrize("n_cells", [1, 7, 64])
def test_total_mass_of_constant(n_cells: int) -> None:
    """f = 1 on [0, 1] has mass 1."""
    grid = project_function(np.ones_like, Domain1D(0.0, 1.0, n_cells), PrecisionLayout(4, 1))
    assert abs(total_mass(grid) - 1.0) <= 1e-15


def test_total_mass_of_sine_squared() -> None:
    """int_0^1 sin^2(2 pi x) = 1/2."""
    grid = project_function(
        lambda x: np.sin(2 * np.pi * x) ** 2, Domain1D(0.0, 1.0, 64), PrecisionLayout.double(4)
    )
    assert abs(total_mass(grid) - 0.5) <= 1e-12


def test_l2_error_of_constant_against_zero() -> None:
    """||1||_2 on [0, 1] is 1."""
    one = project_function(np.ones_like, UNIT, PrecisionLayout.double(3))
    assert abs(l2_error(one, one.like()) - 1.0) <= 1e-13
    assert abs(l2_norm(one) - 1.0) <= 1e-13


def test_l2_error_matches_nodal_quadrature() -> None:
    """Coefficient and node formulas agree by orthogonality."""
    layout = PrecisionLayout.double(4)
    a = _random_grid(UNIT, layout, 1)
    b = _random_grid(UNIT, layout, 2)
    rule = gauss_legendre_rule(4)
    difference = evaluate_at_nodes(a, 4) - evaluate_at_nodes(b, 4)
    nodal = np.sqrt(np.sum(0.5 * UNIT.h * (difference**2) @ rule.weights))
    assert abs(l2_error(a, b) - nodal) <= 1e-12


def test_l2_error_allows_different_layouts_only() -> None:
    """Layouts may differ; domain and order may not."""
    a = _random_grid(UNIT, PrecisionLayout(4, 4))
    b = a.like(PrecisionLayout(4, 1))
    b.assign(a.coefficients())
    assert l2_error(a, b) < 1e-6
    with pytest.raises(GridMismatchError, match="order"):
        l2_error(a, CoefficientGrid(UNIT, PrecisionLayout(3, 3)))


def test_evaluate_wraps_periodically() -> None:
    """Positions outside the domain wrap."""
    grid = _random_grid(UNIT, PrecisionLayout.double(3))
    np.testing.assert_allclose(evaluate(grid, [0.3, 1.3, -0.7]), evaluate(grid, [0.3, 0.3, 0.3]), atol=1e-12)


def test_max_abs_coefficient_scans_both_stores() -> None:
    """The largest magnitude may sit in either buffer."""
    grid = CoefficientGrid(Domain1D(0.0, 1.0, 2), PrecisionLayout(3, 1))
    grid.set_cell(1, [0.5, -4.0, 1.0])
    assert max_abs_coefficient(grid) == 4.0
    grid.set_cell(0, [-9.0, 0.0, 0.0])
    assert max_abs_coefficient(grid) == 9.0


def test_relative_mass_drift() -> None:
    """Drift relative to the initial mass, or to a scale for zero-mean data."""
    assert relative_mass_drift(2.0, 2.5) == pytest.approx(0.25)
    assert relative_mass_drift(0.0, 1e-12, scale=0.5) == pytest.approx(2e-12)
    assert relative_mass_drift(1.0, 1.0) == 0.0
    with pytest.raises(ParameterRangeError, match="scale"):
        relative_mass_drift(0.0, 1.0)


def test_absolute_mass_of_zero_mean_data() -> None:
    """h sum |c_i0| stays positive where the signed mass vanishes."""
    grid = CoefficientGrid(Domain1D(0.0, 1.0, 4), PrecisionLayout(2, 0))
    grid.assign([[1.0, 0.5], [-1.0, 0.5], [2.0, 0.0], [-2.0, 0.0]])
    assert total_mass(grid) == 0.0
    assert absolute_mass(grid) == 1.5


def test_coefficient_j_decays_like_h_to_the_j() -> None:
    """For smooth data max_i |c_ij| scales as h^j over four refinements."""
    cells = np.array([16, 32, 64, 128])
    peaks = []
    for n_cells in cells:
        dom = Domain1D(0.0, 1.0, int(n_cells))
        grid = project_function(lambda x: np.sin(2 * np.pi * x), dom, PrecisionLayout.double(4))
        peaks.append(np.max(np.abs(grid.coefficients()), axis=0))
    slopes = [np.polyfit(np.log(1.0 / cells), np.log([peak[j] for peak in peaks]), 1)[0] for j in range(4)]
    np.testing.assert_allclose(slopes, [0.0, 1.0, 2.0, 3.0], atol=0.1)
