"""Tests for Legendre evaluation, Gauss rules and the periodic domain."""

from __future__ import annotations

import numpy as np
import pytest

from mixed_sldg.solvers.sldg.errors import NonFiniteValueError, ParameterRangeError
from mixed_sldg.solvers.sldg.legendre import (
    Domain1D,
    default_projection_nodes,
    gauss_legendre_rule,
    legendre_antiderivative_all,
    legendre_eval_all,
    legendre_norm_squared,
    orthogonality_defect,
)


def test_legendre_values_at_endpoints() -> None:
    """P_j(1) = 1 and P_j(-1) = (-1)^j."""
    values = legendre_eval_all(7, np.array([-1.0, 1.0]))
    assert values.shape == (8, 2)
    np.testing.assert_allclose(values[:, 1], np.ones(8), atol=1e-15)
    np.testing.assert_allclose(values[:, 0], (-1.0) ** np.arange(8), atol=1e-15)


def test_legendre_matches_closed_form() -> None:
    """Low degrees agree with their explicit polynomials."""
    xi = np.linspace(-1.0, 1.0, 17)
    values = legendre_eval_all(3, xi)
    np.testing.assert_allclose(values[2], 0.5 * (3 * xi**2 - 1), atol=1e-15)
    np.testing.assert_allclose(values[3], 0.5 * (5 * xi**3 - 3 * xi), atol=1e-15)


def test_legendre_does_not_clamp() -> None:
    """Arguments outside [-1, 1] are evaluated as polynomials."""
    assert legendre_eval_all(2, 3.0)[2] == pytest.approx(13.0)


def test_legendre_rejects_negative_degree() -> None:
    """Negative degrees are a range error."""
    with pytest.raises(ParameterRangeError, match="'p'"):
        legendre_eval_all(-1, 0.0)


def test_antiderivative_matches_quadrature() -> None:
    """Q_j(xi) integrates P_j from -1."""
    rule = gauss_legendre_rule(12)
    upper = 0.3
    points = -1.0 + 0.5 * (upper + 1.0) * (rule.nodes + 1.0)
    expected = 0.5 * (upper + 1.0) * legendre_eval_all(5, points) @ rule.weights
    np.testing.assert_allclose(legendre_antiderivative_all(5, upper), expected, atol=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 16, 33, 64])
def test_gauss_rule_weights_and_symmetry(n: int) -> None:
    """Weights sum to 2; nodes increase and are symmetric."""
    rule = gauss_legendre_rule(n)
    assert rule.n == n
    assert abs(np.sum(rule.weights) - 2.0) <= 1e-14
    assert np.all(np.diff(rule.nodes) > 0)
    np.testing.assert_allclose(rule.nodes, -rule.nodes[::-1], atol=1e-14)


@pytest.mark.parametrize("n", [1, 2, 4, 7, 10])
def test_gauss_rule_integrates_monomials_exactly(n: int) -> None:
    """An n-point rule is exact up to degree 2n - 1."""
    rule = gauss_legendre_rule(n)
    for k in range(2 * n):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert rule.integrate(rule.nodes**k) == pytest.approx(exact, rel=1e-13, abs=1e-14)


def test_five_point_rule_integrates_degree_eight() -> None:
    """Five nodes integrate xi^8 to 2/9."""
    rule = gauss_legendre_rule(5)
    assert abs(rule.integrate(rule.nodes**8) - 2.0 / 9.0) <= 1e-14


def test_gauss_rule_is_read_only_and_cached() -> None:
    """Rules are shared and immutable."""
    rule = gauss_legendre_rule(6)
    assert gauss_legendre_rule(6) is rule
    with pytest.raises(ValueError, match="read-only"):
        rule.nodes[0] = 0.0


@pytest.mark.parametrize("n", [0, 65])
def test_gauss_rule_rejects_out_of_range(n: int) -> None:
    """Node counts outside [1, 64] are rejected."""
    with pytest.raises(ParameterRangeError, match="'n'"):
        gauss_legendre_rule(n)


@pytest.mark.parametrize("p", [0, 3, 7])
def test_discrete_orthogonality(p: int) -> None:
    """Scaled Gram matrix is the identity with p + 1 nodes or more."""
    assert orthogonality_defect(p, p + 1) <= 1e-13
    assert orthogonality_defect(p, p + 5) <= 1e-13


def test_norm_squared() -> None:
    """int P_j^2 = 2 / (2j + 1)."""
    rule = gauss_legendre_rule(8)
    values = legendre_eval_all(6, rule.nodes)
    for j in range(7):
        assert rule.integrate(values[j] ** 2) == pytest.approx(legendre_norm_squared(j), rel=1e-14)


def test_default_projection_nodes() -> None:
    """Projection uses at least eight nodes."""
    assert default_projection_nodes(2) == 8
    assert default_projection_nodes(12) == 12


def test_domain_geometry() -> None:
    """Cell width, centres and quadrature points."""
    dom = Domain1D(0.0, 2.0, 4)
    assert dom.h == 0.5
    assert dom.length == 2.0
    np.testing.assert_allclose(dom.cell_centers(), [0.25, 0.75, 1.25, 1.75])
    points = dom.quadrature_points(gauss_legendre_rule(2))
    assert points.shape == (4, 2)
    np.testing.assert_allclose(points.mean(axis=1), dom.cell_centers())


def test_domain_locate_wraps_and_uses_half_open_cells() -> None:
    """Interfaces belong to the right-hand cell; positions wrap periodically."""
    dom = Domain1D(0.0, 1.0, 4)
    index, xi = dom.locate(np.array([0.25, 0.0, 1.0, -0.125, 2.375]))
    np.testing.assert_array_equal(index, [1, 0, 0, 3, 1])
    np.testing.assert_allclose(xi, [-1.0, -1.0, -1.0, 0.0, 0.0], atol=1e-14)


def test_domain_locate_tiny_negative_offset() -> None:
    """A position just left of x_min lands in the last cell or wraps to cell 0."""
    dom = Domain1D(0.0, 1.0, 8)
    index, xi = dom.locate(-1e-300)
    assert int(index) in {0, 7}
    assert -1.0 <= float(xi) <= 1.0


def test_domain_with_cells() -> None:
    """Resolution changes keep the interval."""
    assert Domain1D(-1.0, 1.0, 4).with_cells(8) == Domain1D(-1.0, 1.0, 8)


def test_domain_validation() -> None:
    """Bounds and sizes are validated."""
    with pytest.raises(ParameterRangeError, match="n_cells"):
        Domain1D(0.0, 1.0, 0)
    with pytest.raises(ParameterRangeError, match="x_max"):
        Domain1D(1.0, 1.0, 4)
    with pytest.raises(NonFiniteValueError, match="x_min"):
        Domain1D(float("nan"), 1.0, 4)
