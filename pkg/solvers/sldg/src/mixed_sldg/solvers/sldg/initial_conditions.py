"""Built-in initial conditions for the accuracy, advection and benchmark commands."""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
from numpy.typing import NDArray

from .errors import UnknownInitialConditionError
from .legendre import Domain1D

InitialCondition = Callable[[NDArray[np.float64]], NDArray[np.float64]]
OSCILLATORY_MODES = 8


def smooth(dom: Domain1D, seed: int = 0) -> InitialCondition:
    """``sin(2 pi x / L)``."""
    wave = 2.0 * math.pi / dom.length

    def u0(x: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.sin(wave * (x - dom.x_min))

    return u0


def oscillatory(dom: Domain1D, seed: int = 0) -> InitialCondition:
    """``sum_{m=1..8} sin(2 pi m x / L + phi_m) / m`` with phases drawn from ``seed``."""
    phases = np.random.default_rng(seed).uniform(0.0, 2.0 * math.pi, OSCILLATORY_MODES)
    modes = np.arange(1, OSCILLATORY_MODES + 1, dtype=np.float64)
    wave = 2.0 * math.pi / dom.length

    def u0(x: NDArray[np.float64]) -> NDArray[np.float64]:
        arg = wave * modes * (np.asarray(x)[..., None] - dom.x_min) + phases
        return np.sum(np.sin(arg) / modes, axis=-1)

    return u0


INITIAL_CONDITIONS: dict[str, Callable[[Domain1D, int], InitialCondition]] = {
    "smooth": smooth,
    "oscillatory": oscillatory,
}


def initial_condition(name: str, dom: Domain1D, seed: int = 0) -> InitialCondition:
    """Look up a built-in initial condition.

    Raises:
        UnknownInitialConditionError: If ``name`` is not built in.
    """
    try:
        factory = INITIAL_CONDITIONS[name]
    except KeyError:
        raise UnknownInitialConditionError(name, INITIAL_CONDITIONS) from None
    return factory(dom, seed)
