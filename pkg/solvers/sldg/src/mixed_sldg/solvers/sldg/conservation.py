"""Mass bookkeeping for long constant-speed runs.

Two defects are tracked, both relative to the absolute initial mass ``h sum_i |c_i0|``:

* the global drift ``max_t |m(t) - m(0)|``;
* the local defect, the mass created or destroyed cell by cell when freshly computed cell means
  are rounded to float32, summed over cells and steps.

Wide cell means are stored exactly as computed, so the local defect is zero whenever
``n_double >= 1``. Rounded means can conserve the total exactly (for instance data that is odd
under a half-period shift), which the local defect still exposes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .advection import advect_constant
from .errors import ParameterRangeError
from .kernels import KernelVariant
from .projection import absolute_mass, total_mass
from .storage import CoefficientGrid, PrecisionLayout

logger = logging.getLogger(__name__)


@dataclass
class MassLedger:
    """Running mass defects of one run."""

    initial_mass: float
    scale: float
    max_drift: float = 0.0
    local_defect: float = 0.0
    steps: int = 0

    @classmethod
    def start(cls, grid: CoefficientGrid) -> MassLedger:
        """Open a ledger at the state ``grid``.

        Raises:
            ParameterRangeError: If every cell mean of ``grid`` is zero.
        """
        scale = absolute_mass(grid)
        if scale == 0.0:
            raise ParameterRangeError("grid", scale, "a state with a non-zero cell mean")
        return cls(initial_mass=total_mass(grid), scale=scale)

    def record(self, grid: CoefficientGrid, computed_means: NDArray[np.float64] | None = None) -> None:
        """Account for one step that produced ``grid``; ``computed_means`` are the means before storage."""
        self.steps += 1
        self.max_drift = max(self.max_drift, abs(total_mass(grid) - self.initial_mass))
        if computed_means is not None:
            self.local_defect += grid.domain.h * float(np.sum(np.abs(grid.cell_means() - computed_means)))

    @property
    def relative_drift(self) -> float:
        """Largest global drift so far over the absolute initial mass."""
        return self.max_drift / self.scale

    @property
    def relative_local_defect(self) -> float:
        """Accumulated local defect over the absolute initial mass."""
        return self.local_defect / self.scale

    @property
    def error_mass(self) -> float:
        """The larger of the two relative defects."""
        return max(self.relative_drift, self.relative_local_defect)


def advance_with_ledger(
    grid: CoefficientGrid,
    steps: int,
    nu: float,
    kernel: KernelVariant | str = KernelVariant.SPECIALIZED,
) -> tuple[CoefficientGrid, MassLedger]:
    """Advance a copy of ``grid`` ``steps`` times by ``nu`` and book its mass after every step.

    When the cell means are narrow a float64 twin repeats each step from the same stored state, so
    the means are known before rounding; the twin runs the same kernel and accumulation order.
    """
    ledger = MassLedger.start(grid)
    src = grid.copy()
    dst = src.like()
    narrow_means = grid.layout.n_double == 0
    twin_layout = PrecisionLayout.double(grid.order)
    twin_src, twin_dst = src.like(twin_layout), src.like(twin_layout)
    for _ in range(steps):
        computed: NDArray[np.float64] | None = None
        if narrow_means:
            twin_src.assign(src.coefficients())
            advect_constant(twin_src, nu, twin_dst, kernel)
            computed = twin_dst.cell_means()
        advect_constant(src, nu, dst, kernel)
        src, dst = dst, src
        ledger.record(src, computed)
    logger.debug(
        "mass ledger after %d steps: drift %.3e, local defect %.3e",
        ledger.steps,
        ledger.relative_drift,
        ledger.relative_local_defect,
    )
    return src, ledger
