"""Tests for the split float64/float32 coefficient storage."""

from __future__ import annotations

import numpy as np
import pytest

from mixed_sldg.solvers.sldg.errors import (
    CellIndexError,
    GridMismatchError,
    NarrowingOverflowError,
    NonFiniteValueError,
    ParameterRangeError,
)
from mixed_sldg.solvers.sldg.legendre import Domain1D
from mixed_sldg.solvers.sldg.storage import CoefficientGrid, PrecisionLayout, memorydown, new_grid


@pytest.fixture
def grid() -> CoefficientGrid:
    """Eight cells, order four, one float64 coefficient."""
    return new_grid(Domain1D(0.0, 1.0, 8), PrecisionLayout(4, 1))


@pytest.mark.parametrize(
    ("order", "n_double", "expected"),
    [(2, 1, 4 / 3), (2, 0, 2.0), (4, 2, 4 / 3), (4, 1, 1.6), (4, 0, 2.0), (4, 4, 1.0)],
)
def test_memorydown_matches_byte_model(order: int, n_double: int, expected: float) -> None:
    """8o / (8d + 4(o - d))."""
    assert memorydown(order, n_double) == pytest.approx(expected, rel=1e-15)
    assert PrecisionLayout(order, n_double).memorydown == pytest.approx(expected, rel=1e-15)


def test_memorydown_in_two_dimensions_counts_total_degree() -> None:
    """Order 2, d = 1 keeps only the (0, 0) coefficient wide: 32 / (8 + 12)."""
    assert memorydown(2, 1, dims=2) == pytest.approx(1.6)
    assert memorydown(3, 5, dims=2) == pytest.approx(1.0)
    with pytest.raises(ParameterRangeError, match="dims"):
        memorydown(2, 1, dims=0)


def test_layout_bytes_and_validation() -> None:
    """Bytes per cell and the allowed range of d."""
    layout = PrecisionLayout(4, 1)
    assert layout.n_single == 3
    assert layout.bytes_per_cell == 20
    assert PrecisionLayout.double(4).bytes_per_cell == 32
    with pytest.raises(ParameterRangeError, match="n_double"):
        PrecisionLayout(4, 5)
    with pytest.raises(ParameterRangeError, match="order"):
        PrecisionLayout(0, 0)


def test_new_grid_is_zero_with_exact_footprint(grid: CoefficientGrid) -> None:
    """Zero-initialised buffers of N (8d + 4(o - d)) bytes."""
    assert grid.wide.dtype == np.float64
    assert grid.narrow.dtype == np.float32
    assert grid.wide.shape == (8, 1)
    assert grid.narrow.shape == (8, 3)
    assert grid.memory_bytes() == 8 * 20
    assert not grid.coefficients().any()
    assert grid.wide.flags.c_contiguous
    assert grid.narrow.flags.c_contiguous


def test_set_get_round_trip_rounds_narrow_slots(grid: CoefficientGrid) -> None:
    """Wide slots are bit-exact, narrow slots round to nearest float32."""
    values = np.array([0.1, 0.2, 1.0 / 3.0, -7.25])
    grid.set_cell(3, values)
    stored = grid.get_cell(3)
    assert stored[0] == 0.1
    np.testing.assert_array_equal(stored[1:], values[1:].astype(np.float32).astype(np.float64))
    assert stored[3] == -7.25


def test_set_cell_rounds_ties_to_even(grid: CoefficientGrid) -> None:
    """A value halfway between two float32 neighbours rounds to the even mantissa."""
    ulp = float(np.spacing(np.float32(1.0)))
    grid.set_cell(0, [0.0, 1.0 + 0.5 * ulp, 1.0 + 1.5 * ulp, 0.0])
    stored = grid.get_cell(0)
    assert stored[1] == 1.0
    assert stored[2] == 1.0 + 2.0 * ulp


def test_set_cell_rejects_bad_input(grid: CoefficientGrid) -> None:
    """Index, shape, finiteness and float32 range are checked."""
    with pytest.raises(CellIndexError, match="0 <= i < 8"):
        grid.set_cell(8, np.zeros(4))
    with pytest.raises(IndexError):
        grid.get_cell(-1)
    with pytest.raises(GridMismatchError, match="values"):
        grid.set_cell(0, np.zeros(3))
    with pytest.raises(NonFiniteValueError, match="values"):
        grid.set_cell(0, [0.0, float("nan"), 0.0, 0.0])
    with pytest.raises(NarrowingOverflowError, match="1 value"):
        grid.set_cell(0, [0.0, 1e39, 0.0, 0.0])


def test_overflow_in_wide_slot_is_allowed(grid: CoefficientGrid) -> None:
    """Only float32 slots have the narrow range."""
    grid.set_cell(0, [1e300, 0.0, 0.0, 0.0])
    assert grid.get_cell(0)[0] == 1e300


def test_failed_set_cell_leaves_cell_unchanged(grid: CoefficientGrid) -> None:
    """A rejected write does not modify storage."""
    grid.set_cell(1, [1.0, 2.0, 3.0, 4.0])
    with pytest.raises(NarrowingOverflowError):
        grid.set_cell(1, [5.0, 1e40, 0.0, 0.0])
    np.testing.assert_array_equal(grid.get_cell(1), [1.0, 2.0, 3.0, 4.0])


def test_assign_and_cell_means(grid: CoefficientGrid) -> None:
    """Full-array writes go through the same split."""
    rng = np.random.default_rng(1)
    data = rng.standard_normal((8, 4))
    grid.assign(data)
    np.testing.assert_array_equal(grid.cell_means(), data[:, 0])
    np.testing.assert_allclose(grid.coefficients(), data, rtol=1e-7)
    with pytest.raises(GridMismatchError, match="coefficients"):
        grid.assign(np.zeros((8, 3)))


def test_cell_means_from_narrow_store() -> None:
    """With d = 0 the means come from float32 storage."""
    grid = CoefficientGrid(Domain1D(0.0, 1.0, 2), PrecisionLayout(2, 0))
    grid.assign([[0.1, 0.0], [0.2, 0.0]])
    np.testing.assert_array_equal(grid.cell_means(), np.float32([0.1, 0.2]).astype(np.float64))


def test_like_and_copy(grid: CoefficientGrid) -> None:
    """Copies are deep; like() is a zero grid with the same or another layout."""
    grid.set_cell(2, [1.0, 2.0, 3.0, 4.0])
    duplicate = grid.copy()
    duplicate.set_cell(2, np.zeros(4))
    assert grid.get_cell(2)[0] == 1.0
    assert not grid.like().coefficients().any()
    assert grid.like(PrecisionLayout.double(4)).layout.n_double == 4


def test_require_same_discretisation(grid: CoefficientGrid) -> None:
    """Domain, order and (optionally) layout must agree."""
    grid.require_same_discretisation(grid.like(), "other")
    grid.require_same_discretisation(grid.like(PrecisionLayout(4, 0)), "other", same_layout=False)
    with pytest.raises(GridMismatchError, match="layout"):
        grid.require_same_discretisation(grid.like(PrecisionLayout(4, 0)), "other")
    with pytest.raises(GridMismatchError, match="domain"):
        grid.require_same_discretisation(CoefficientGrid(Domain1D(0.0, 1.0, 4), grid.layout), "other")
    with pytest.raises(GridMismatchError, match="order"):
        grid.require_same_discretisation(CoefficientGrid(grid.domain, PrecisionLayout(3, 1)), "other")


def test_repr_mentions_layout(grid: CoefficientGrid) -> None:
    """repr names domain and layout."""
    assert "PrecisionLayout(order=4, n_double=1)" in repr(grid)
