from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

if sys.version_info >= (3, 11):
    import tomllib
else:
    try:
        import tomli as tomllib  # type: ignore[import-not-found]
    except ModuleNotFoundError:
        tomllib = None  # type: ignore[assignment]

SOLVER_ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(SOLVER_ROOT / "src"))

project = "mixed-sldg"
author = "mixed-sldg maintainers"


def _solver_version(default: str = "0.0.0") -> str:
    """Version from the solver's pyproject.toml, or ``default`` when it cannot be read."""
    pyproject_path = SOLVER_ROOT / "pyproject.toml"
    if tomllib is None or not pyproject_path.is_file():
        return default
    try:
        with pyproject_path.open("rb") as f:
            data: dict[str, Any] = tomllib.load(f)
    except (OSError, tomllib.TOMLDecodeError) as exc:  # type: ignore[union-attr]
        logger.warning("Could not read %s; using version %s.", pyproject_path, default, exc_info=exc)
        return default
    version: str = data.get("project", {}).get("version") or default
    return version


version = _solver_version()
release = version

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
]

try:
    import sphinx_autodoc_typehints  # noqa: F401  # pyright: ignore[reportUnusedImport]

    extensions.append("sphinx_autodoc_typehints")
except ImportError:
    logger.warning("sphinx_autodoc_typehints not installed; type hints stay in signatures.")

autosummary_generate = True
autodoc_typehints = "description"
autodoc_mock_imports = ["numba"]
autodoc_default_options = {
    "members": True,
    "undoc-members": True,
    "show-inheritance": True,
}

napoleon_google_docstring = True
napoleon_numpy_docstring = False

templates_path: list[str] = []
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

html_theme = "alabaster"
html_static_path: list[str] = []
