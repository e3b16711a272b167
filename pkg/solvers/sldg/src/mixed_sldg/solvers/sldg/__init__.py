"""Mixed-precision semi-Lagrangian discontinuous Galerkin advection."""

from .advection import (
    ShiftDecomposition,
    ShiftMatrices,
    advect_constant,
    advect_lines,
    advect_rows,
    compute_shift_matrices,
    shift_decompose,
)
from .bench import BenchConfig, BenchReport, run_bench, run_bench_sweep
from .kernels import KernelVariant
from .legendre import Domain1D, QuadratureRule, gauss_legendre_rule, legendre_eval_all
from .phase_space import Axis, PhaseSpaceGrid, PhaseSpaceLayout, project_phase_space
from .conservation import MassLedger, advance_with_ledger
from .projection import (
    absolute_mass,
    evaluate,
    l2_error,
    l2_norm,
    project_function,
    relative_mass_drift,
    total_mass,
)
from .snapshot import read_snapshot, write_snapshot
from .storage import CoefficientGrid, PrecisionLayout, memorydown, new_grid
from .threads import configure_threads
from .vlasov import VlasovDriver, solve_poisson, vlasov_step

__all__ = [
    "Axis",
    "BenchConfig",
    "BenchReport",
    "CoefficientGrid",
    "Domain1D",
    "KernelVariant",
    "MassLedger",
    "PhaseSpaceGrid",
    "PhaseSpaceLayout",
    "PrecisionLayout",
    "QuadratureRule",
    "ShiftDecomposition",
    "ShiftMatrices",
    "VlasovDriver",
    "absolute_mass",
    "advance_with_ledger",
    "advect_constant",
    "advect_lines",
    "advect_rows",
    "compute_shift_matrices",
    "configure_threads",
    "evaluate",
    "gauss_legendre_rule",
    "l2_error",
    "l2_norm",
    "legendre_eval_all",
    "memorydown",
    "new_grid",
    "project_function",
    "project_phase_space",
    "read_snapshot",
    "relative_mass_drift",
    "run_bench",
    "run_bench_sweep",
    "shift_decompose",
    "solve_poisson",
    "total_mass",
    "vlasov_step",
    "write_snapshot",
]
