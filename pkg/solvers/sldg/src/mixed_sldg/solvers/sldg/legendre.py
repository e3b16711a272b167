"""Legendre polynomials, Gauss-Legendre quadrature and the periodic 1D cell domain."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import ParameterRangeError
from .validators import validate_number_is_finite

logger = logging.getLogger(__name__)

MAX_QUADRATURE_NODES = 64
_NEWTON_MAX_ITERATIONS = 100
_NEWTON_TOLERANCE = 1e-15


def legendre_eval_all(p: int, xi: ArrayLike) -> NDArray[np.float64]:
    """Evaluate ``P_0 .. P_p`` at ``xi`` with the three-term recurrence.

    ``(j + 1) P_{j+1} = (2j + 1) xi P_j - j P_{j-1}``. No clamping is applied; arguments
    outside ``[-1, 1]`` are evaluated as polynomials.

    Args:
        p: Maximum degree, ``p >= 0``.
        xi: Scalar or array of local coordinates.

    Returns:
        Array of shape ``(p + 1, *shape(xi))``.

    Raises:
        ParameterRangeError: If ``p`` is negative.
    """
    if p < 0:
        raise ParameterRangeError("p", p, ">= 0")
    x = np.asarray(xi, dtype=np.float64)
    values = np.empty((p + 1, *x.shape), dtype=np.float64)
    values[0] = 1.0
    if p >= 1:
        values[1] = x
    for j in range(1, p):
        values[j + 1] = ((2 * j + 1) * x * values[j] - j * values[j - 1]) / (j + 1)
    return values


def legendre_antiderivative_all(p: int, xi: ArrayLike) -> NDArray[np.float64]:
    """Evaluate ``Q_j(xi) = int_{-1}^{xi} P_j(s) ds`` for ``j = 0 .. p``.

    Uses ``Q_0 = xi + 1`` and ``Q_j = (P_{j+1} - P_{j-1}) / (2j + 1)`` for ``j >= 1``.
    """
    x = np.asarray(xi, dtype=np.float64)
    legendre = legendre_eval_all(p + 1, x)
    values = np.empty((p + 1, *x.shape), dtype=np.float64)
    values[0] = x + 1.0
    for j in range(1, p + 1):
        values[j] = (legendre[j + 1] - legendre[j - 1]) / (2 * j + 1)
    return values


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on ``[-1, 1]``; arrays are read-only."""

    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]

    @property
    def n(self) -> int:
        """Number of nodes."""
        return int(self.nodes.shape[0])

    def integrate(self, values: ArrayLike) -> float:
        """Integrate samples taken at ``nodes`` over ``[-1, 1]``."""
        return float(np.dot(self.weights, np.asarray(values, dtype=np.float64)))


@lru_cache(maxsize=MAX_QUADRATURE_NODES)
def gauss_legendre_rule(n: int) -> QuadratureRule:
    """Compute the ``n``-point Gauss-Legendre rule by Newton iteration on ``P_n``.

    Initial guesses ``cos(pi (i - 1/4) / (n + 1/2))``; at most 100 iterations. Nodes are returned
    in increasing order and symmetrised, weights are ``2 / ((1 - x^2) P_n'(x)^2)``.

    Raises:
        ParameterRangeError: If ``n`` is outside ``[1, 64]``.
    """
    if not 1 <= n <= MAX_QUADRATURE_NODES:
        raise ParameterRangeError("n", n, f"in [1, {MAX_QUADRATURE_NODES}]")

    i = np.arange(1, n + 1, dtype=np.float64)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(_NEWTON_MAX_ITERATIONS):
        values = legendre_eval_all(n, x)
        derivative = n * (x * values[n] - values[n - 1]) / (x * x - 1.0)
        step = values[n] / derivative
        x = x - step
        if np.max(np.abs(step)) <= _NEWTON_TOLERANCE:
            break
    else:  # pragma: no cover - the iteration converges for every supported n
        logger.warning("Gauss-Legendre Newton iteration hit the cap for n=%d", n)

    x = np.sort(x)
    x = 0.5 * (x - x[::-1])
    if n % 2 == 1:
        x[n // 2] = 0.0
    values = legendre_eval_all(n, x)
    derivative = n * (x * values[n] - values[n - 1]) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * derivative * derivative)
    w = 0.5 * (w + w[::-1])
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(nodes=x, weights=w)


@dataclass(frozen=True)
class Domain1D:
    """Periodic interval ``[x_min, x_max)`` split into ``n_cells`` equal cells."""

    x_min: float
    x_max: float
    n_cells: int
    h: float = field(init=False)

    def __post_init__(self) -> None:
        """Validate bounds and derive the cell width."""
        validate_number_is_finite(self.x_min, "x_min")
        validate_number_is_finite(self.x_max, "x_max")
        if self.n_cells < 1:
            raise ParameterRangeError("n_cells", self.n_cells, ">= 1")
        if not self.x_max > self.x_min:
            raise ParameterRangeError("x_max", self.x_max, f"> x_min ({self.x_min})")
        object.__setattr__(self, "h", (self.x_max - self.x_min) / self.n_cells)

    @property
    def length(self) -> float:
        """Period of the domain."""
        return self.x_max - self.x_min

    def cell_centers(self) -> NDArray[np.float64]:
        """Midpoints of all cells in index order."""
        return self.x_min + (np.arange(self.n_cells, dtype=np.float64) + 0.5) * self.h

    def quadrature_points(self, rule: QuadratureRule) -> NDArray[np.float64]:
        """Physical positions of ``rule`` nodes in every cell, shape ``(n_cells, rule.n)``."""
        return self.cell_centers()[:, None] + 0.5 * self.h * rule.nodes[None, :]

    def locate(self, x: ArrayLike) -> tuple[NDArray[np.intp], NDArray[np.float64]]:
        """Map positions to ``(cell index, local coordinate)`` with periodic wrap.

        Cells own the half-open interval ``[x_{i-1/2}, x_{i+1/2})``.
        """
        offset = np.mod(np.asarray(x, dtype=np.float64) - self.x_min, self.length)
        scaled = offset / self.h
        index = np.floor(scaled).astype(np.intp)
        # np.mod may return the period itself for tiny negative offsets
        wrapped = index >= self.n_cells
        index = np.where(wrapped, 0, index)
        scaled = np.where(wrapped, 0.0, scaled)
        xi = 2.0 * (scaled - index) - 1.0
        return index, xi

    def with_cells(self, n_cells: int) -> Domain1D:
        """Same interval with a different resolution."""
        return Domain1D(self.x_min, self.x_max, n_cells)


def default_projection_nodes(order: int) -> int:
    """Node count used to project non-polynomial data: ``max(order, 8)``."""
    return max(order, 8)


def orthogonality_defect(p: int, n: int) -> float:
    """Largest deviation of the scaled discrete Gram matrix of ``P_0..P_p`` from identity."""
    rule = gauss_legendre_rule(n)
    values = legendre_eval_all(p, rule.nodes)
    scale = (2.0 * np.arange(p + 1) + 1.0) / 2.0
    gram = scale[:, None] * (values * rule.weights) @ values.T
    return float(np.max(np.abs(gram - np.eye(p + 1))))


def legendre_norm_squared(j: int) -> float:
    """``int_{-1}^{1} P_j^2 = 2 / (2j + 1)``."""
    return 2.0 / (2 * j + 1)

