"""Implementations of the ``sldg`` sub-commands."""

from __future__ import annotations

import csv
import io
import json
import logging
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import TYPE_CHECKING, TextIO

from .bench import BenchConfig, advance, reports_emit, run_bench, run_bench_sweep
from .config import RunConfig
from .conservation import advance_with_ledger
from .initial_conditions import initial_condition
from .kernels import KernelVariant
from .legendre import Domain1D
from .phase_space import PhaseSpaceLayout
from .projection import (
    absolute_mass,
    l2_error,
    l2_norm,
    max_abs_coefficient,
    project_function,
    relative_mass_drift,
    total_mass,
)
from .snapshot import write_snapshot
from .storage import CoefficientGrid, PrecisionLayout
from .threads import configure_threads
from .vlasov import VlasovDriver, new_landau_grid, write_diagnostics

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)

ACCURACY_COLUMNS = ("order", "n_double", "error", "error_mass")
DEFAULT_SNAPSHOT = Path("sldg_snapshot.bin")


@dataclass(frozen=True)
class AccuracyRow:
    """Distance of a mixed-precision run to the all-float64 run after the same steps."""

    order: int
    n_double: int
    error: float
    error_mass: float


def run_steps(
    grid: CoefficientGrid,
    nu: float,
    steps: int,
    kernel: KernelVariant | str = KernelVariant.SPECIALIZED,
) -> CoefficientGrid:
    """Advance ``grid`` ``steps`` times by ``nu`` with double buffering; ``grid`` is not modified."""
    return advance(grid.copy(), steps, nu, kernel)


def run_accuracy_study(
    dom: Domain1D,
    order: int,
    nu: float,
    steps: int,
    ic: str = "smooth",
    seed: int = 0,
    kernel: KernelVariant | str = KernelVariant.SPECIALIZED,
) -> list[AccuracyRow]:
    """Run ``d = o, o - 1, ..., 0`` from the same initial condition and compare to ``d = o``.

    ``error_mass`` is :attr:`MassLedger.error_mass` of each run.
    """
    u0 = initial_condition(ic, dom, seed)
    rows: list[AccuracyRow] = []
    reference: CoefficientGrid | None = None
    for n_double in range(order, -1, -1):
        initial = project_function(u0, dom, PrecisionLayout(order, n_double))
        final, ledger = advance_with_ledger(initial, steps, nu, kernel)
        if reference is None:
            reference = final
        rows.append(AccuracyRow(order, n_double, l2_error(final, reference), ledger.error_mass))
        logger.info(
            "order=%d n_double=%d error=%.3e error_mass=%.3e (drift %.3e, local %.3e)",
            order,
            n_double,
            rows[-1].error,
            ledger.error_mass,
            ledger.relative_drift,
            ledger.relative_local_defect,
        )
    return rows


def format_accuracy(rows: list[AccuracyRow], fmt: str) -> str:
    """CSV (``order,n_double,error,error_mass``) or JSON list."""
    if fmt == "json":
        return json.dumps([asdict(row) for row in rows], indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(ACCURACY_COLUMNS)
    for row in rows:
        writer.writerow([row.order, row.n_double, repr(row.error), repr(row.error_mass)])
    return buffer.getvalue()


@contextmanager
def _sink(path: Path | None, stdout: TextIO) -> Iterator[TextIO]:
    if path is None:
        yield stdout
        return
    with path.open("w", encoding="utf-8", newline="") as handle:
        yield handle
    logger.info("wrote %s", path)


def _domain(cfg: RunConfig) -> Domain1D:
    return Domain1D(cfg.x_min, cfg.x_max, cfg.resolved_cells)


def cmd_accuracy(cfg: RunConfig, stdout: TextIO) -> int:
    """Mixed-vs-double error table for one order."""
    configure_threads(cfg.threads)
    rows = run_accuracy_study(
        _domain(cfg), cfg.order, cfg.nu, cfg.resolved_steps, cfg.ic, cfg.seed, cfg.kernel
    )
    with _sink(cfg.output, stdout) as out:
        out.write(format_accuracy(rows, cfg.output_format))
    return 0


def cmd_advect(cfg: RunConfig, stdout: TextIO) -> int:
    """Project, advect, write the snapshot and print a summary line."""
    configure_threads(cfg.threads)
    dom = _domain(cfg)
    layout = PrecisionLayout(cfg.order, cfg.double_coeffs)
    initial = project_function(initial_condition(cfg.ic, dom, cfg.seed), dom, layout)
    final = run_steps(initial, cfg.nu, cfg.resolved_steps, cfg.kernel)
    path = cfg.output or DEFAULT_SNAPSHOT
    write_snapshot(final, path)
    mass = total_mass(final)
    summary = {
        "mass": mass,
        "mass_drift": relative_mass_drift(total_mass(initial), mass, absolute_mass(initial)),
        "l2_norm": l2_norm(final),
        "max_coefficient": max_abs_coefficient(final),
        "snapshot": str(path),
    }
    if cfg.output_format == "json":
        stdout.write(json.dumps(summary) + "\n")
    else:
        fields = (
            f"{key}={value!r}" if isinstance(value, float) else f"{key}={value}" for key, value in summary.items()
        )
        stdout.write(" ".join(fields) + "\n")
    return 0


def bench_config(cfg: RunConfig) -> BenchConfig:
    """Benchmark settings carried by a run configuration."""
    return BenchConfig(
        order=cfg.order,
        n_double=cfg.double_coeffs,
        n_cells=cfg.resolved_cells,
        steps=max(cfg.resolved_steps, 1),
        warmup_steps=cfg.warmup_steps,
        repeats=cfg.repeats,
        threads=cfg.threads,
        kernel=cfg.kernel,
        nu=cfg.nu,
        streaming=cfg.streaming,
        seed=cfg.seed,
    )


def cmd_bench(cfg: RunConfig, stdout: TextIO) -> int:
    """Bandwidth, speedup and memory reduction against the all-float64 baseline."""
    bench = bench_config(cfg)
    reports = run_bench_sweep(bench) if cfg.sweep else [run_bench(bench)]
    with _sink(cfg.output, stdout) as out:
        out.write(reports_emit(reports, cfg.output_format))
    return 0


def cmd_vlasov(cfg: RunConfig, stdout: TextIO) -> int:
    """Landau-damping demonstrator with a diagnostics time series."""
    configure_threads(cfg.threads)
    n_x = cfg.resolved_cells
    grid = new_landau_grid(
        n_x,
        cfg.v_cells or n_x,
        PhaseSpaceLayout(cfg.order, cfg.double_coeffs),
        alpha=cfg.landau_alpha,
        k=cfg.wave_number,
        v_max=cfg.v_max,
    )
    driver = VlasovDriver(grid, zero_field=cfg.free_streaming)
    with _sink(cfg.output, stdout) as out:
        write_diagnostics(driver.run(cfg.resolved_steps, cfg.dt), out)
    return 0


COMMANDS = {
    "accuracy": cmd_accuracy,
    "advect": cmd_advect,
    "bench": cmd_bench,
    "vlasov": cmd_vlasov,
}
