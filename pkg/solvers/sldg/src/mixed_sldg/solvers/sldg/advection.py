"""Semi-Lagrangian DG steps for ``u_t + a u_x = 0`` on the Legendre coefficient grids.

With ``nu = a dt / h = i_star + alpha`` the translated solution on target cell ``i`` comes from
source cell ``i - i_star - 1`` on the local interval ``xi in [-1, 2 alpha - 1]`` and from source
cell ``i - i_star`` on ``[2 alpha - 1, 1]``. Projecting those two pieces back onto ``P_j`` gives

    c_ij <- sum_l A_jl c[i - i_star - 1, l] + sum_l B_jl c[i - i_star, l]

with ``A_jl = (2j+1)/2 int_{-1}^{2 alpha - 1} P_l(xi + 2 - 2 alpha) P_j(xi) dxi`` and
``B_jl = (2j+1)/2 int_{2 alpha - 1}^{1} P_l(xi - 2 alpha) P_j(xi) dxi``. For ``0 < nu < 1``
this is the upwind pair of cells and the scheme reproduces ``u(x - a dt)`` projected.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import AliasedBufferError, GridMismatchError, NarrowingOverflowError, ParameterRangeError
from .kernels import KernelVariant, select_kernel
from .legendre import gauss_legendre_rule, legendre_eval_all
from .phase_space import Axis, PhaseSpaceGrid
from .storage import CoefficientGrid, require_finite
from .validators import require_finite_numbers

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShiftDecomposition:
    """CFL number split into ``i_star = floor(nu)`` and ``alpha in [0, 1)``."""

    nu: float
    i_star: int
    alpha: float


@dataclass(frozen=True)
class ShiftMatrices:
    """Update weights for the farther (``a``) and nearer (``b``) upwind source cell."""

    alpha: float
    order: int
    a: NDArray[np.float64]
    b: NDArray[np.float64]


@require_finite_numbers("nu")
def shift_decompose(nu: float) -> ShiftDecomposition:
    """Split ``nu`` into integer and fractional parts, flooring toward minus infinity.

    Raises:
        NonFiniteValueError: If ``nu`` is NaN or infinite.
    """
    i_star = math.floor(nu)
    alpha = float(nu) - i_star
    if alpha >= 1.0:
        # nu within one ulp below an integer
        i_star += 1
        alpha = 0.0
    return ShiftDecomposition(nu=float(nu), i_star=int(i_star), alpha=alpha)


def compute_shift_matrices(alpha: float, order: int) -> ShiftMatrices:
    """Build ``A(alpha)`` and ``B(alpha)`` exactly with an ``order``-point Gauss rule per piece.

    Raises:
        ParameterRangeError: If ``alpha`` is outside ``[0, 1)`` or ``order < 1``.
    """
    if order < 1:
        raise ParameterRangeError("order", order, ">= 1")
    if not 0.0 <= alpha < 1.0:
        raise ParameterRangeError("alpha", alpha, "in [0, 1)")

    if alpha == 0.0:
        a_mat = np.zeros((order, order))
        b_mat = np.eye(order)
    else:
        rule = gauss_legendre_rule(order)
        eta, w = rule.nodes, rule.weights
        scale = (2.0 * np.arange(order) + 1.0) / 2.0
        p = order - 1

        xi_far = -1.0 + alpha * (eta + 1.0)
        target = legendre_eval_all(p, xi_far) * (alpha * w)
        a_mat = scale[:, None] * (target @ legendre_eval_all(p, xi_far + 2.0 - 2.0 * alpha).T)

        xi_near = 2.0 * alpha - 1.0 + (1.0 - alpha) * (eta + 1.0)
        target = legendre_eval_all(p, xi_near) * ((1.0 - alpha) * w)
        b_mat = scale[:, None] * (target @ legendre_eval_all(p, xi_near - 2.0 * alpha).T)

    a_mat.setflags(write=False)
    b_mat.setflags(write=False)
    return ShiftMatrices(alpha=alpha, order=order, a=a_mat, b=b_mat)


def _require_distinct(src_arrays: tuple[NDArray[np.generic], ...], dst_arrays: tuple[NDArray[np.generic], ...]) -> None:
    for s, d in zip(src_arrays, dst_arrays, strict=True):
        if s.size and d.size and np.may_share_memory(s, d):
            raise AliasedBufferError


def advect_constant(
    src: CoefficientGrid,
    nu: float,
    dst: CoefficientGrid,
    kernel: KernelVariant | str = KernelVariant.SPECIALIZED,
) -> ShiftDecomposition:
    """Advance ``src`` by the CFL number ``nu`` into ``dst``.

    Arithmetic is float64 after promotion; only the store into ``dst`` rounds the float32
    slots. Integer shifts rotate the buffers bit-exactly.

    Raises:
        AliasedBufferError: If ``dst`` shares storage with ``src``.
        GridMismatchError: If the grids differ in domain or layout.
        NonFiniteValueError: If ``nu`` is not finite.
        NarrowingOverflowError: If a result does not fit float32; ``dst`` is left zeroed.
    """
    if src is dst:
        raise AliasedBufferError
    _require_distinct((src.wide, src.narrow), (dst.wide, dst.narrow))
    src.require_same_discretisation(dst, "dst")
    shift = shift_decompose(nu)
    n = src.n_cells

    if shift.alpha == 0.0:
        offset = shift.i_star % n
        dst.wide[...] = np.roll(src.wide, offset, axis=0)
        dst.narrow[...] = np.roll(src.narrow, offset, axis=0)
        return shift

    matrices = compute_shift_matrices(shift.alpha, src.order)
    step = select_kernel(kernel, src.order, src.layout.n_double)
    overflow = step(src.wide, src.narrow, matrices.a, matrices.b, shift.i_star % n, n, dst.wide, dst.narrow)
    if overflow:
        dst.wide[...] = 0.0
        dst.narrow[...] = 0.0
        raise NarrowingOverflowError("dst", int(overflow))
    return shift


def advect_lines(lines: ArrayLike, nus: ArrayLike) -> NDArray[np.float64]:
    """Advance independent float64 lines ``(L, N, o)``, each by its own CFL number.

    Matrices are built once per distinct fractional shift.

    Raises:
        GridMismatchError: If ``nus`` does not hold one value per line.
        NonFiniteValueError: If a CFL number is not finite.
    """
    data = np.asarray(lines, dtype=np.float64)
    cfl = np.asarray(nus, dtype=np.float64).reshape(-1)
    n_lines, n, order = data.shape
    if cfl.shape[0] != n_lines:
        raise GridMismatchError("nus", f"expected {n_lines} CFL numbers, got {cfl.shape[0]}")
    require_finite(cfl, "nus")

    i_star = np.floor(cfl)
    alpha = cfl - i_star
    rounded_up = alpha >= 1.0
    i_star[rounded_up] += 1.0
    alpha[rounded_up] = 0.0

    near_index = (np.arange(n)[None, :] - np.mod(i_star, n).astype(np.intp)[:, None]) % n
    near = np.take_along_axis(data, near_index[:, :, None], axis=1)
    far = np.take_along_axis(data, ((near_index - 1) % n)[:, :, None], axis=1)

    distinct, inverse = np.unique(alpha, return_inverse=True)
    cache = [compute_shift_matrices(float(value), order) for value in distinct]
    logger.debug("advecting %d lines with %d distinct shift matrices", n_lines, len(cache))
    a_stack = np.stack([m.a for m in cache])[inverse.reshape(-1)]
    b_stack = np.stack([m.b for m in cache])[inverse.reshape(-1)]

    out = np.einsum("ljm,lnm->lnj", a_stack, far) + np.einsum("ljm,lnm->lnj", b_stack, near)
    integer = alpha == 0.0
    out[integer] = near[integer]
    return out


def advect_rows(
    src: PhaseSpaceGrid,
    nus: ArrayLike,
    axis: Axis | str,
    dst: PhaseSpaceGrid,
) -> None:
    """Advance every phase-space line along ``axis`` with its own CFL number.

    A line is one Gauss node of one perpendicular cell, so ``nus`` has shape
    ``(N_perpendicular, o)``. The perpendicular direction is transformed modal -> nodal, each line
    gets an independent 1D step, and the result is transformed back and stored into ``dst``.

    Raises:
        AliasedBufferError: If ``dst`` shares storage with ``src``.
        GridMismatchError: If grids differ or ``nus`` has the wrong size.
    """
    if src is dst:
        raise AliasedBufferError
    _require_distinct((src.wide, src.narrow), (dst.wide, dst.narrow))
    src.require_same_discretisation(dst, "dst")
    direction = Axis(axis)
    perpendicular = src.dom_v if direction is Axis.X else src.dom_x
    cfl = np.asarray(nus, dtype=np.float64)
    expected = perpendicular.n_cells * src.order
    if cfl.size != expected:
        raise GridMismatchError("nus", f"expected {expected} CFL numbers for axis '{direction.value}', got {cfl.size}")
    lines = src.nodal_lines(direction)
    dst.assign_nodal_lines(advect_lines(lines, cfl.reshape(-1)), direction)
