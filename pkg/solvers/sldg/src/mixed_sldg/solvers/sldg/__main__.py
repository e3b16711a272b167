"""CLI entry point for the mixed-precision SLDG solver."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from mixed_sldg.solvers.sldg.commands import COMMANDS
from mixed_sldg.solvers.sldg.config import DEFAULT_CELLS, DEFAULT_STEPS, RunConfig, field_name, load_config_file
from mixed_sldg.solvers.sldg.errors import InvalidArgumentError
from mixed_sldg.solvers.sldg.initial_conditions import INITIAL_CONDITIONS
from mixed_sldg.solvers.sldg.kernels import KernelVariant

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

_DESCRIPTIONS = {
    "accuracy": "Error of every precision split against the all-float64 run.",
    "advect": "Advance one initial condition and write a snapshot.",
    "bench": "Memory-bandwidth benchmark against the all-float64 baseline.",
    "vlasov": "Landau-damping run with a diagnostics time series.",
}


def _thread_count(text: str) -> int | str:
    return text if text == "auto" else int(text)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    defaults = RunConfig.model_fields
    common.add_argument("--order", type=int, help=f"coefficients per cell (default {defaults['order'].default})")
    common.add_argument(
        "--double-coeffs",
        type=int,
        help=f"coefficients per cell kept in float64 (default {defaults['double_coeffs'].default})",
    )
    common.add_argument("--cells", type=int, help="cells; x-cells for vlasov (default depends on the command)")
    common.add_argument("--v-cells", type=int, help="velocity cells for vlasov (default --cells)")
    common.add_argument("--steps", type=int, help="time steps (default depends on the command)")
    common.add_argument("--nu", type=float, help=f"CFL number (default {defaults['nu'].default})")
    common.add_argument("--dt", type=float, help=f"vlasov time step (default {defaults['dt'].default})")
    common.add_argument("--x-min", type=float, help="left end of the domain (default 0)")
    common.add_argument("--x-max", type=float, help="right end of the domain (default 1)")
    common.add_argument("--v-max", type=float, help=f"vlasov velocity cut-off (default {defaults['v_max'].default})")
    common.add_argument("--ic", choices=sorted(INITIAL_CONDITIONS), help="initial condition (default smooth)")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--threads", type=_thread_count, help="worker threads or 'auto' (default auto)")
    common.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")
    common.add_argument("--output", type=Path, help="output file (default stdout; advect writes sldg_snapshot.bin)")
    common.add_argument("--kernel", choices=[k.value for k in KernelVariant], help="sweep kernel (default specialized)")
    common.add_argument("--config", type=Path, help="key=value file; flags win over its values")
    common.add_argument("--warmup-steps", type=int, help="bench steps before timing (default 5)")
    common.add_argument("--repeats", type=int, help="bench timed repetitions, median reported (default 5)")
    common.add_argument("--streaming", action="store_true", default=None, help="bench: require a DRAM-sized grid")
    common.add_argument("--sweep", action="store_true", default=None, help="bench: every split d = o, ..., 0")
    common.add_argument("--landau-alpha", type=float, help="vlasov perturbation amplitude (default 0.01)")
    common.add_argument("--wave-number", type=float, help="vlasov perturbation wave number (default 0.5)")
    common.add_argument("--free-streaming", action="store_true", default=None, help="vlasov: drop the field")
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"), help="log level (default INFO)")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-command per workflow."""
    parser = argparse.ArgumentParser(prog="sldg", description="Mixed-precision semi-Lagrangian DG advection.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    for name, description in _DESCRIPTIONS.items():
        sub.add_parser(
            name,
            parents=[common],
            description=f"{description} Default cells {DEFAULT_CELLS[name]}, steps {DEFAULT_STEPS[name]}.",
            help=description,
        )
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge flags over the config file; ``SLDG_*`` variables fill what neither sets."""
    values: dict[str, Any] = {}
    if args.config is not None:
        values.update(load_config_file(args.config))
    for key, value in vars(args).items():
        if key in {"command", "config"} or value is None:
            continue
        values[field_name(key)] = value
    values["command"] = args.command
    return RunConfig(**values)


def configure_logging(level: str) -> None:
    """Rich log records on stderr; stdout stays machine-readable."""
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Run one sub-command and return its exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or "INFO")
    try:
        cfg = resolve_config(args)
        configure_logging(cfg.log_level)
        logger.debug("configuration:\n%s", cfg.to_text())
        return COMMANDS[cfg.command](cfg, sys.stdout)
    except ValidationError as exc:
        logger.error("invalid configuration: %s", exc)  # noqa: TRY400
    except InvalidArgumentError as exc:
        logger.error("%s", exc)  # noqa: TRY400
    except (ValueError, OSError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)  # noqa: TRY400
    return 1


if __name__ == "__main__":  # pragma: no cover - CLI entry
    raise SystemExit(main())
