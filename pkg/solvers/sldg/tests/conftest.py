"""Shared oracles for the solver tests."""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable

import numpy as np
import pytest

from mixed_sldg.solvers.sldg.legendre import gauss_legendre_rule, legendre_eval_all

TranslationOracle = Callable[[np.ndarray, float], np.ndarray]


def translate_and_reproject(coefficients: np.ndarray, nu: float) -> np.ndarray:
    """Reconstruct, shift by nu cells and project back with a Gauss rule on each smooth piece."""
    n, order = coefficients.shape
    rule = gauss_legendre_rule(order)
    alpha = nu - math.floor(nu)
    breaks = [-1.0, 2.0 * alpha - 1.0, 1.0]
    scale = (2.0 * np.arange(order) + 1.0) / 2.0
    out = np.zeros_like(coefficients)
    for lower, upper in itertools.pairwise(breaks):
        if upper <= lower:
            continue
        xi = lower + 0.5 * (upper - lower) * (rule.nodes + 1.0)
        weights = 0.5 * (upper - lower) * rule.weights
        # departure points in cells, measured from the left edge of the target cell
        s = 0.5 * (xi + 1.0) - nu
        offset = np.floor(s)
        basis = legendre_eval_all(order - 1, 2.0 * (s - offset) - 1.0)
        target = legendre_eval_all(order - 1, xi) * weights
        for i in range(n):
            cell = (i + offset.astype(int)) % n
            values = np.einsum("qj,jq->q", coefficients[cell], basis)
            out[i] += scale * (target @ values)
    return out


@pytest.fixture
def translation_oracle() -> TranslationOracle:
    """Exact translation of a periodic modal line followed by L2 projection."""
    return translate_and_reproject
