"""Memory-bandwidth benchmark of the 1D SLDG sweep.

The sweep moves one load and one store per coefficient, so a step costs
``2 N (8d + 4(o - d))`` bytes against ``4o - 1`` flops per degree of freedom. Every run is timed
against an all-float64 baseline with the same order, size, step count, threads and kernel.
"""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import os
import statistics
import time
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .advection import advect_constant
from .kernels import KernelVariant
from .legendre import Domain1D
from .snapshot import snapshot_bytes
from .storage import CoefficientGrid, PrecisionLayout
from .threads import configure_threads

logger = logging.getLogger(__name__)

CSV_HEADER = "order,n_double,bandwidth_gbs,speedup,memorydown"
DEFAULT_LLC_BYTES = 32 * 1024 * 1024
STREAMING_FACTOR = 4


def detect_llc_bytes() -> int:
    """Last-level cache size from ``sysconf`` where available, else 32 MiB."""
    for name in ("SC_LEVEL3_CACHE_SIZE", "SC_LEVEL2_CACHE_SIZE"):
        try:
            size = os.sysconf(name)
        except (AttributeError, ValueError, OSError):
            continue
        if size > 0:
            return int(size)
    return DEFAULT_LLC_BYTES


class BenchConfig(BaseModel):
    """One benchmark configuration."""

    model_config = ConfigDict(frozen=True, use_enum_values=False)

    order: int = Field(ge=1)
    n_double: int = Field(ge=0)
    n_cells: int = Field(default=2**24, ge=2)
    steps: int = Field(default=50, ge=1)
    warmup_steps: int = Field(default=5, ge=0)
    repeats: int = Field(default=5, ge=5)
    threads: int | Literal["auto"] = "auto"
    kernel: KernelVariant = KernelVariant.SPECIALIZED
    nu: float = 2.25
    streaming: bool = False
    llc_bytes: int = Field(default_factory=detect_llc_bytes, gt=0)
    seed: int = 0

    @model_validator(mode="after")
    def _check_sizes(self) -> BenchConfig:
        if self.n_double > self.order:
            msg = f"n_double ({self.n_double}) must not exceed order ({self.order})"
            raise ValueError(msg)
        if float(self.nu).is_integer():
            msg = "nu must have a non-zero fractional part so the kernel runs"
            raise ValueError(msg)
        if self.streaming and self.working_set_bytes < STREAMING_FACTOR * self.llc_bytes:
            msg = (
                f"streaming run needs N (8d + 4(o - d)) >= {STREAMING_FACTOR} x LLC "
                f"({STREAMING_FACTOR * self.llc_bytes} bytes), got {self.working_set_bytes}"
            )
            raise ValueError(msg)
        return self

    @property
    def layout(self) -> PrecisionLayout:
        """Precision layout under test."""
        return PrecisionLayout(self.order, self.n_double)

    @property
    def working_set_bytes(self) -> int:
        """Coefficient storage of one grid."""
        return self.n_cells * self.layout.bytes_per_cell

    @property
    def bytes_per_step(self) -> int:
        """One load and one store of every coefficient."""
        return 2 * self.working_set_bytes


class BenchReport(BaseModel):
    """Outcome of one configuration timed against its all-float64 baseline."""

    order: int
    n_double: int
    n_cells: int
    steps: int
    repeats: int
    threads: int
    kernel: KernelVariant
    bandwidth_gb_s: float = Field(gt=0)
    speedup: float = Field(gt=0)
    memorydown: float = Field(gt=0)
    elapsed_s: float = Field(gt=0)
    baseline_elapsed_s: float = Field(gt=0)
    flops_per_dof: int = Field(gt=0)
    bytes_per_step: int = Field(gt=0)
    flop_per_byte: float = Field(gt=0)
    state_digest: str
    warnings: list[str] = Field(default_factory=list)


def initial_state(cfg: BenchConfig, layout: PrecisionLayout) -> CoefficientGrid:
    """Deterministic smooth-looking data filled straight into the stores."""
    grid = CoefficientGrid(Domain1D(0.0, 1.0, cfg.n_cells), layout)
    rng = np.random.default_rng(cfg.seed)
    decay = 0.5 ** np.arange(layout.order)
    grid.wide[...] = rng.random(grid.wide.shape) * decay[: layout.n_double]
    grid.narrow[...] = (rng.random(grid.narrow.shape) * decay[layout.n_double :]).astype(np.float32)
    return grid


def advance(src: CoefficientGrid, steps: int, nu: float, kernel: KernelVariant | str) -> CoefficientGrid:
    """Run ``steps`` double-buffered sweeps untimed and return the final grid."""
    dst = src.like()
    for _ in range(steps):
        advect_constant(src, nu, dst, kernel)
        src, dst = dst, src
    return src


def _measure(cfg: BenchConfig, layout: PrecisionLayout) -> tuple[float, CoefficientGrid]:
    src = initial_state(cfg, layout)
    dst = src.like()
    for _ in range(cfg.warmup_steps):
        advect_constant(src, cfg.nu, dst, cfg.kernel)
        src, dst = dst, src
    samples: list[float] = []
    for _ in range(cfg.repeats):
        start = time.perf_counter()
        for _ in range(cfg.steps):
            advect_constant(src, cfg.nu, dst, cfg.kernel)
            src, dst = dst, src
        samples.append(time.perf_counter() - start)
    elapsed = max(statistics.median(samples), time.get_clock_info("perf_counter").resolution)
    logger.debug(
        "order=%d n_double=%d kernel=%s: median %.6f s", layout.order, layout.n_double, cfg.kernel.value, elapsed
    )
    return elapsed, src


def total_steps(cfg: BenchConfig) -> int:
    """Sweeps applied to the benchmark state: warmup plus every repetition."""
    return cfg.warmup_steps + cfg.repeats * cfg.steps


def state_digest(grid: CoefficientGrid) -> str:
    """SHA-256 of the grid snapshot."""
    return hashlib.sha256(snapshot_bytes(grid)).hexdigest()


def _report(cfg: BenchConfig, threads: int, elapsed: float, baseline: float, final: CoefficientGrid) -> BenchReport:
    layout = cfg.layout
    warnings: list[str] = []
    if not cfg.streaming and cfg.working_set_bytes < STREAMING_FACTOR * cfg.llc_bytes:
        warnings.append(
            f"working set of {cfg.working_set_bytes} bytes is below {STREAMING_FACTOR}x the last-level cache "
            f"({cfg.llc_bytes} bytes); bandwidth reflects cache, not memory"
        )
        logger.warning(warnings[-1])
    bytes_per_dof = layout.bytes_per_cell / layout.order
    flops = 4 * layout.order - 1
    return BenchReport(
        order=layout.order,
        n_double=layout.n_double,
        n_cells=cfg.n_cells,
        steps=cfg.steps,
        repeats=cfg.repeats,
        threads=threads,
        kernel=cfg.kernel,
        bandwidth_gb_s=cfg.bytes_per_step * cfg.steps / elapsed / 1e9,
        speedup=baseline / elapsed,
        memorydown=layout.memorydown,
        elapsed_s=elapsed,
        baseline_elapsed_s=baseline,
        flops_per_dof=flops,
        bytes_per_step=cfg.bytes_per_step,
        flop_per_byte=flops / (2.0 * bytes_per_dof),
        state_digest=state_digest(final),
        warnings=warnings,
    )


def run_bench(cfg: BenchConfig) -> BenchReport:
    """Time ``cfg`` after an all-float64 baseline with otherwise identical settings."""
    return run_bench_sweep(cfg, [cfg.n_double])[0]


def run_bench_sweep(cfg: BenchConfig, n_doubles: list[int] | None = None) -> list[BenchReport]:
    """Time several precision splits against one shared baseline (default ``d = o, ..., 0``)."""
    threads = configure_threads(cfg.threads)
    splits = list(range(cfg.order, -1, -1)) if n_doubles is None else n_doubles
    baseline_cfg = cfg.model_copy(update={"n_double": cfg.order})
    baseline, baseline_state = _measure(baseline_cfg, baseline_cfg.layout)
    reports: list[BenchReport] = []
    for n_double in splits:
        run_cfg = BenchConfig.model_validate({**cfg.model_dump(), "n_double": n_double})
        if n_double == cfg.order:
            elapsed, final = baseline, baseline_state
        else:
            elapsed, final = _measure(run_cfg, run_cfg.layout)
        report = _report(run_cfg, threads, elapsed, baseline, final)
        logger.info(
            "order=%d n_double=%d: %.2f GB/s, speedup %.2f, memorydown %.2f",
            report.order,
            report.n_double,
            report.bandwidth_gb_s,
            report.speedup,
            report.memorydown,
        )
        reports.append(report)
    return reports


def report_emit(report: BenchReport, fmt: Literal["csv", "json"] = "csv") -> str:
    """Serialise one report."""
    return reports_emit([report], fmt)


def reports_emit(reports: list[BenchReport], fmt: Literal["csv", "json"] = "csv") -> str:
    """Serialise reports as CSV (table columns) or JSON (all fields)."""
    if fmt == "json":
        if len(reports) == 1:
            return reports[0].model_dump_json(indent=2) + "\n"
        return "[\n" + ",\n".join(r.model_dump_json(indent=2) for r in reports) + "\n]\n"
    buffer = io.StringIO()
    buffer.write(CSV_HEADER + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    for r in reports:
        writer.writerow([r.order, r.n_double, repr(r.bandwidth_gb_s), repr(r.speedup), repr(r.memorydown)])
    return buffer.getvalue()


def parse_report_csv(text: str) -> list[dict[str, float]]:
    """Parse :func:`reports_emit` CSV back into column -> value mappings."""
    reader = csv.DictReader(io.StringIO(text))
    return [{key: float(value) for key, value in row.items()} for row in reader]
