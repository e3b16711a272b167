"""Run configuration for the command-line front end.

Values resolve as command-line flags, then the ``key=value`` config file, then ``SLDG_*``
environment variables, then the defaults below.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .kernels import KernelVariant

Command = Literal["accuracy", "advect", "bench", "vlasov"]

DEFAULT_STEPS: dict[str, int] = {"accuracy": 10_000, "advect": 100, "bench": 50, "vlasov": 100}
DEFAULT_CELLS: dict[str, int] = {"accuracy": 256, "advect": 256, "bench": 2**24, "vlasov": 32}


class RunConfig(BaseSettings):
    """All parameters of one CLI invocation."""

    model_config = SettingsConfigDict(env_prefix="SLDG_", extra="forbid", validate_default=True)

    command: Command = "advect"
    order: int = Field(default=4, ge=1, description="coefficients per cell (o = p + 1)")
    double_coeffs: int = Field(default=1, ge=0, description="coefficients per cell stored in float64 (d)")
    cells: int | None = Field(default=None, ge=1, description="cells (x-cells for vlasov)")
    v_cells: int | None = Field(default=None, ge=1, description="velocity cells for vlasov (defaults to --cells)")
    steps: int | None = Field(default=None, ge=0, description="time steps")
    nu: float = Field(default=2.25, description="CFL number a dt / h")
    dt: float = Field(default=0.1, gt=0, description="vlasov time step")
    x_min: float = 0.0
    x_max: float = 1.0
    v_max: float = Field(default=6.0, gt=0, description="vlasov velocity cut-off")
    ic: str = Field(default="smooth", description="initial condition (smooth, oscillatory)")
    seed: int = 0
    threads: int | Literal["auto"] = "auto"
    output_format: Literal["csv", "json"] = "csv"
    output: Path | None = None
    kernel: KernelVariant = KernelVariant.SPECIALIZED
    warmup_steps: int = Field(default=5, ge=0)
    repeats: int = Field(default=5, ge=5)
    streaming: bool = False
    sweep: bool = False
    landau_alpha: float = 0.01
    wave_number: float = Field(default=0.5, gt=0)
    free_streaming: bool = False
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"

    @property
    def resolved_steps(self) -> int:
        """Steps, falling back to the per-command default."""
        return DEFAULT_STEPS[self.command] if self.steps is None else self.steps

    @property
    def resolved_cells(self) -> int:
        """Cells, falling back to the per-command default."""
        return DEFAULT_CELLS[self.command] if self.cells is None else self.cells

    def to_text(self) -> str:
        """``key=value`` lines (flag spelling) for every set field."""
        lines = [
            f"{flag_name(name)}={value}"
            for name, value in self.model_dump(mode="json").items()
            if value is not None
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, **overrides: Any) -> RunConfig:
        """Build a config from ``key=value`` text; ``overrides`` win over the text."""
        return cls(**{**parse_config_text(text), **overrides})


def flag_name(field: str) -> str:
    """Command-line spelling of a field (``double_coeffs`` -> ``double-coeffs``)."""
    return "format" if field == "output_format" else field.replace("_", "-")


def field_name(flag: str) -> str:
    """Field for a command-line spelling."""
    name = flag.strip().lstrip("-").replace("-", "_")
    return "output_format" if name == "format" else name


def parse_config_text(text: str) -> dict[str, str]:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are ignored.

    Raises:
        ValueError: On a line without ``=``.
    """
    values: dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            msg = f"config line {number}: expected key=value, got {raw!r}"
            raise ValueError(msg)
        values[field_name(key)] = value.strip()
    return values


def load_config_file(path: Path) -> dict[str, str]:
    """Read and parse a config file."""
    return parse_config_text(path.read_text(encoding="utf-8"))
