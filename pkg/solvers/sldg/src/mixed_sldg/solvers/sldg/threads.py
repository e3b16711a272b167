"""Worker-thread configuration for the numba kernels."""

from __future__ import annotations

import logging
from typing import Literal

import numba

from .errors import ParameterRangeError

logger = logging.getLogger(__name__)

ThreadSpec = int | Literal["auto"]


def available_threads() -> int:
    """Size of the numba thread pool for this process."""
    return int(numba.config.NUMBA_NUM_THREADS)


def configure_threads(threads: ThreadSpec) -> int:
    """Set the kernel worker count and return it.

    ``"auto"`` uses the whole pool; larger requests are clamped to the pool with a warning.

    Raises:
        ParameterRangeError: If ``threads`` is neither ``"auto"`` nor a positive integer.
    """
    pool = available_threads()
    if threads == "auto":
        count = pool
    elif isinstance(threads, int) and not isinstance(threads, bool) and threads >= 1:
        count = threads
        if count > pool:
            logger.warning("requested %d threads but the pool has %d; using %d", count, pool, pool)
            count = pool
    else:
        raise ParameterRangeError("threads", threads, "'auto' or a positive integer")
    numba.set_num_threads(count)
    logger.debug("kernel threads set to %d", count)
    return count


def current_threads() -> int:
    """Worker count the kernels currently run with."""
    return int(numba.get_num_threads())
