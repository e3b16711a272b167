"""1+1D Vlasov-Poisson demonstrator built from constant-speed SLDG sweeps.

``f_t + v f_x + E(x) f_v = 0`` with ``E_x = rho - mean(rho)`` and ``rho = int f dv``, advanced by
Strang splitting: half step in ``x``, field solve, full step in ``v``, half step in ``x``.
"""

from __future__ import annotations

import csv
import logging
import math
from collections.abc import Iterable, Iterator
from dataclasses import astuple, dataclass
from pathlib import Path
from typing import TextIO

import numpy as np
from numpy.typing import NDArray

from .advection import advect_rows
from .errors import GridMismatchError, ParameterRangeError
from .legendre import Domain1D, gauss_legendre_rule, legendre_antiderivative_all
from .phase_space import Axis, PhaseSpaceField, PhaseSpaceGrid, PhaseSpaceLayout, project_phase_space
from .validators import require_finite_numbers

logger = logging.getLogger(__name__)

DIAGNOSTICS_COLUMNS = ("step", "time", "mass", "electric_energy", "l2_norm")
BOUNDARY_MASS_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FieldState:
    """Electric field at the Gauss nodes of every x-cell and the density it was solved from."""

    dom_x: Domain1D
    e_nodes: NDArray[np.float64]
    rho: NDArray[np.float64]

    @classmethod
    def zero(cls, dom_x: Domain1D, order: int) -> FieldState:
        """Field-free state (free streaming)."""
        zeros = np.zeros((dom_x.n_cells, order))
        return cls(dom_x=dom_x, e_nodes=zeros, rho=zeros.copy())

    def mean_field(self) -> float:
        """Domain average of ``E``."""
        rule = gauss_legendre_rule(self.e_nodes.shape[1])
        return float(0.5 * self.dom_x.h * np.sum(self.e_nodes @ rule.weights) / self.dom_x.length)


def compute_density(f: PhaseSpaceGrid) -> NDArray[np.float64]:
    """Legendre coefficients of ``rho(x) = int f dv`` per x-cell: ``h_v sum_k c[i, k, j_x, 0]``."""
    c = f.coefficients()
    return f.dom_v.h * np.sum(c[:, :, :, 0], axis=1)


def solve_poisson(rho: NDArray[np.float64], dom_x: Domain1D) -> FieldState:
    """Solve ``E' = rho - mean(rho)`` on the periodic x-domain with zero-mean gauge.

    Each cell integrates its density polynomial exactly; interface values follow from a
    sequential cumulative sum of the cell integrals.

    Raises:
        GridMismatchError: If ``rho`` does not have one row per x-cell.
    """
    if rho.ndim != 2 or rho.shape[0] != dom_x.n_cells:
        raise GridMismatchError("rho", f"expected ({dom_x.n_cells}, order), got {rho.shape}")
    order = rho.shape[1]
    h = dom_x.h
    g = np.array(rho, dtype=np.float64)
    g[:, 0] -= np.sum(g[:, 0]) / dom_x.n_cells

    cell_integrals = h * g[:, 0]
    left = np.concatenate(([0.0], np.cumsum(cell_integrals)[:-1]))
    rule = gauss_legendre_rule(order)
    antiderivative = legendre_antiderivative_all(order - 1, rule.nodes)
    e_nodes = left[:, None] + 0.5 * h * (g @ antiderivative)
    e_nodes -= 0.5 * h * np.sum(e_nodes @ rule.weights) / dom_x.length
    return FieldState(dom_x=dom_x, e_nodes=e_nodes, rho=np.array(rho, dtype=np.float64))


def electric_energy(field: FieldState) -> float:
    """``1/2 int E^2 dx`` by per-cell Gauss quadrature at the field nodes."""
    rule = gauss_legendre_rule(field.e_nodes.shape[1])
    return float(0.25 * field.dom_x.h * np.sum((field.e_nodes * field.e_nodes) @ rule.weights))


def field_of(f: PhaseSpaceGrid) -> FieldState:
    """Self-consistent field of the current distribution."""
    return solve_poisson(compute_density(f), f.dom_x)


@require_finite_numbers("dt")
def vlasov_step(f: PhaseSpaceGrid, dt: float, *, zero_field: bool = False) -> tuple[PhaseSpaceGrid, FieldState]:
    """One Strang step of length ``dt``; returns the new grid and the mid-step field.

    ``zero_field`` replaces the Poisson field by ``E = 0`` (free streaming).

    Raises:
        ParameterRangeError: If ``dt <= 0``.
    """
    if dt <= 0.0:
        raise ParameterRangeError("dt", dt, "> 0")
    x_cfl = f.node_positions(Axis.V) * (0.5 * dt / f.dom_x.h)

    half = f.like()
    advect_rows(f, x_cfl, Axis.X, half)
    field = FieldState.zero(f.dom_x, f.order) if zero_field else field_of(half)

    kicked = f.like()
    advect_rows(half, field.e_nodes * (dt / f.dom_v.h), Axis.V, kicked)

    out = f.like()
    advect_rows(kicked, x_cfl, Axis.X, out)
    return out, field


@dataclass(frozen=True)
class DiagnosticsRow:
    """One line of the Vlasov time series."""

    step: int
    time: float
    mass: float
    electric_energy: float
    l2_norm: float


def landau_initial_condition(alpha: float = 0.01, k: float = 0.5) -> PhaseSpaceField:
    """``(1 + alpha cos(k x)) exp(-v^2/2) / sqrt(2 pi)``."""

    def f0(x: NDArray[np.float64], v: NDArray[np.float64]) -> NDArray[np.float64]:
        return (1.0 + alpha * np.cos(k * x)) * np.exp(-0.5 * v * v) / math.sqrt(2.0 * math.pi)

    return f0


def landau_domains(n_x: int, n_v: int, k: float = 0.5, v_max: float = 6.0) -> tuple[Domain1D, Domain1D]:
    """``x in [0, 2 pi / k)`` and ``v in [-v_max, v_max)``."""
    return Domain1D(0.0, 2.0 * math.pi / k, n_x), Domain1D(-v_max, v_max, n_v)


class VlasovDriver:
    """Double-buffered Strang loop with diagnostics."""

    def __init__(self, f: PhaseSpaceGrid, *, zero_field: bool = False) -> None:
        """Start from ``f`` (copied)."""
        self.f = f.copy()
        self.zero_field = zero_field
        self.step_count = 0
        self.time = 0.0
        self._boundary_warned = False

    def diagnostics(self) -> DiagnosticsRow:
        """Diagnostics of the current state."""
        field = FieldState.zero(self.f.dom_x, self.f.order) if self.zero_field else field_of(self.f)
        return DiagnosticsRow(
            step=self.step_count,
            time=self.time,
            mass=self.f.total_mass(),
            electric_energy=electric_energy(field),
            l2_norm=self.f.l2_norm(),
        )

    def _check_velocity_boundary(self) -> None:
        if self._boundary_warned:
            return
        masses = np.abs(self.f.mass_coefficients()) * self.f.cell_area
        total = float(np.sum(masses))
        boundary = float(np.sum(masses[:, 0]) + np.sum(masses[:, -1]))
        if total > 0.0 and boundary > BOUNDARY_MASS_TOLERANCE * total:
            logger.warning(
                "velocity boundary cells hold %.3e of the mass at step %d; widen the v-domain",
                boundary / total,
                self.step_count,
            )
            self._boundary_warned = True

    def step(self, dt: float) -> FieldState:
        """Advance one Strang step."""
        self.f, field = vlasov_step(self.f, dt, zero_field=self.zero_field)
        self.step_count += 1
        self.time = self.step_count * dt
        self._check_velocity_boundary()
        return field

    def run(self, steps: int, dt: float) -> Iterator[DiagnosticsRow]:
        """Yield the initial diagnostics and one row after each of ``steps`` steps."""
        if steps < 0:
            raise ParameterRangeError("steps", steps, ">= 0")
        self._check_velocity_boundary()
        yield self.diagnostics()
        for _ in range(steps):
            self.step(dt)
            yield self.diagnostics()
        logger.info("vlasov run finished after %d steps (t=%.6g)", self.step_count, self.time)


def write_diagnostics(rows: Iterable[DiagnosticsRow], stream: TextIO) -> int:
    """Write the time series as CSV; returns the number of data rows."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(DIAGNOSTICS_COLUMNS)
    count = 0
    for row in rows:
        writer.writerow([repr(value) if isinstance(value, float) else value for value in astuple(row)])
        count += 1
    return count


def read_diagnostics(path: Path) -> list[DiagnosticsRow]:
    """Parse a diagnostics CSV written by :func:`write_diagnostics`."""
    with path.open(newline="") as handle:
        reader = csv.DictReader(handle)
        return [
            DiagnosticsRow(
                step=int(record["step"]),
                time=float(record["time"]),
                mass=float(record["mass"]),
                electric_energy=float(record["electric_energy"]),
                l2_norm=float(record["l2_norm"]),
            )
            for record in reader
        ]


def new_landau_grid(
    n_x: int,
    n_v: int,
    layout: PhaseSpaceLayout,
    *,
    alpha: float = 0.01,
    k: float = 0.5,
    v_max: float = 6.0,
) -> PhaseSpaceGrid:
    """Project the Landau initial state onto a fresh phase-space grid."""
    dom_x, dom_v = landau_domains(n_x, n_v, k, v_max)
    return project_phase_space(landau_initial_condition(alpha, k), dom_x, dom_v, layout)
