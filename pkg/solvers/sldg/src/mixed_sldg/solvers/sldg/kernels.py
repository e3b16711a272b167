"""Parallel SLDG update kernels over split float64/float32 coefficient buffers.

Destination cell ``i`` reads source cells ``far = i - shift - 1`` and ``near = i - shift``
(mod ``n``) with ``0 <= shift < n`` and computes, in float64,
``out_j = sum_m A_jm c[far, m] + B_jm c[near, m]``. Coefficients ``j < d`` go to ``wide_out``,
the rest are rounded to float32. Every kernel returns the number of float32 stores that
overflowed. The accumulation order is the same in all kernels and independent of the thread
count.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from enum import Enum
from functools import lru_cache

import numba
import numpy as np
from numpy.typing import NDArray

logger = logging.getLogger(__name__)

KernelFn = Callable[..., int]


class KernelVariant(str, Enum):
    """Which update kernel runs the 1D sweep."""

    SPECIALIZED = "specialized"
    GENERIC = "generic"


@lru_cache(maxsize=None)
def specialized_kernel(order: int, n_double: int) -> KernelFn:
    """Kernel with ``order`` and ``n_double`` frozen as compile-time constants, parallel over cells."""
    o = order
    d = n_double

    @numba.njit(parallel=True, nogil=True)  # type: ignore[misc]
    def kernel(  # pragma: no cover - compiled by numba
        wide_in: NDArray[np.float64],
        narrow_in: NDArray[np.float32],
        a_mat: NDArray[np.float64],
        b_mat: NDArray[np.float64],
        shift: int,
        n: int,
        wide_out: NDArray[np.float64],
        narrow_out: NDArray[np.float32],
    ) -> int:
        overflow = 0
        for i in numba.prange(n):
            far = (i - shift - 1 + n) % n
            near = (i - shift + n) % n
            for j in range(o):
                acc = 0.0
                for m in range(d):
                    acc += a_mat[j, m] * wide_in[far, m] + b_mat[j, m] * wide_in[near, m]
                for m in range(d, o):
                    acc += a_mat[j, m] * np.float64(narrow_in[far, m - d]) + b_mat[j, m] * np.float64(
                        narrow_in[near, m - d]
                    )
                if j < d:
                    wide_out[i, j] = acc
                else:
                    value = np.float32(acc)
                    if not np.isfinite(value):
                        overflow += 1
                    narrow_out[i, j - d] = value
        return overflow

    logger.debug("built specialized kernel for order=%d n_double=%d", order, n_double)
    return kernel  # type: ignore[no-any-return]


@numba.njit(parallel=True, nogil=True)  # type: ignore[misc]
def _generic_kernel(  # pragma: no cover - compiled by numba
    wide_in: NDArray[np.float64],
    narrow_in: NDArray[np.float32],
    a_mat: NDArray[np.float64],
    b_mat: NDArray[np.float64],
    shift: int,
    n: int,
    order: int,
    n_double: int,
    wide_out: NDArray[np.float64],
    narrow_out: NDArray[np.float32],
) -> int:
    overflow = 0
    # one degree of freedom per iteration; index arithmetic and precision branches at run time
    for k in numba.prange(n * order):
        i = k // order
        j = k - i * order
        far = (i - shift - 1 + n) % n
        near = (i - shift + n) % n
        acc = 0.0
        for m in range(order):
            if m < n_double:
                c_far = wide_in[far, m]
                c_near = wide_in[near, m]
            else:
                c_far = np.float64(narrow_in[far, m - n_double])
                c_near = np.float64(narrow_in[near, m - n_double])
            acc += a_mat[j, m] * c_far + b_mat[j, m] * c_near
        if j < n_double:
            wide_out[i, j] = acc
        else:
            value = np.float32(acc)
            if not np.isfinite(value):
                overflow += 1
            narrow_out[i, j - n_double] = value
    return overflow


def generic_kernel(order: int, n_double: int) -> KernelFn:
    """Single kernel for every configuration, with ``order`` and ``n_double`` passed at run time."""

    def kernel(
        wide_in: NDArray[np.float64],
        narrow_in: NDArray[np.float32],
        a_mat: NDArray[np.float64],
        b_mat: NDArray[np.float64],
        shift: int,
        n: int,
        wide_out: NDArray[np.float64],
        narrow_out: NDArray[np.float32],
    ) -> int:
        return int(_generic_kernel(wide_in, narrow_in, a_mat, b_mat, shift, n, order, n_double, wide_out, narrow_out))

    return kernel


def select_kernel(variant: KernelVariant | str, order: int, n_double: int) -> KernelFn:
    """Kernel for ``variant`` and the given precision split."""
    if KernelVariant(variant) is KernelVariant.SPECIALIZED:
        return specialized_kernel(order, n_double)
    return generic_kernel(order, n_double)
