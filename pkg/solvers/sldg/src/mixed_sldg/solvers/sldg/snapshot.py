"""Binary grid snapshots.

Layout: ``b"SLDG1"``, then ``N``, ``o``, ``d`` as little-endian int64 and ``x_min``, ``x_max`` as
little-endian float64, followed by the raw float64 wide buffer and the raw float32 narrow buffer
(both little-endian, cell-major).
"""

from __future__ import annotations

import logging
import struct
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError, SnapshotFormatError
from .legendre import Domain1D
from .storage import CoefficientGrid, PrecisionLayout, require_finite

logger = logging.getLogger(__name__)

MAGIC = b"SLDG1"
_HEADER = struct.Struct("<5sqqqdd")


def snapshot_bytes(grid: CoefficientGrid) -> bytes:
    """Serialise ``grid``."""
    dom = grid.domain
    header = _HEADER.pack(MAGIC, dom.n_cells, grid.layout.order, grid.layout.n_double, dom.x_min, dom.x_max)
    return header + grid.wide.astype("<f8").tobytes() + grid.narrow.astype("<f4").tobytes()


def grid_from_bytes(payload: bytes, source: str = "<bytes>") -> CoefficientGrid:
    """Rebuild a grid from :func:`snapshot_bytes` output.

    Raises:
        SnapshotFormatError: On a bad magic, header, size or non-finite payload.
    """
    if len(payload) < _HEADER.size:
        raise SnapshotFormatError(source, "truncated header")
    magic, n_cells, order, n_double, x_min, x_max = _HEADER.unpack_from(payload)
    if magic != MAGIC:
        raise SnapshotFormatError(source, f"bad magic {magic!r}")
    try:
        grid = CoefficientGrid(Domain1D(x_min, x_max, n_cells), PrecisionLayout(order, n_double))
    except InvalidArgumentError as exc:
        raise SnapshotFormatError(source, str(exc)) from exc

    wide_bytes = grid.wide.size * 8
    expected = _HEADER.size + wide_bytes + grid.narrow.size * 4
    if len(payload) != expected:
        raise SnapshotFormatError(source, f"expected {expected} bytes, got {len(payload)}")
    body = memoryview(payload)[_HEADER.size :]
    grid.wide[...] = np.frombuffer(body[:wide_bytes], dtype="<f8").reshape(grid.wide.shape)
    grid.narrow[...] = np.frombuffer(body[wide_bytes:], dtype="<f4").reshape(grid.narrow.shape)
    try:
        require_finite(grid.coefficients(), "payload")
    except InvalidArgumentError as exc:
        raise SnapshotFormatError(source, str(exc)) from exc
    return grid


def write_snapshot(grid: CoefficientGrid, path: Path) -> int:
    """Write ``grid`` to ``path``; returns the file size in bytes."""
    payload = snapshot_bytes(grid)
    path.write_bytes(payload)
    logger.debug("wrote snapshot %s (%d bytes)", path, len(payload))
    return len(payload)


def read_snapshot(path: Path) -> CoefficientGrid:
    """Read a grid written by :func:`write_snapshot`."""
    return grid_from_bytes(path.read_bytes(), str(path))
