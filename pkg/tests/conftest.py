"""Shared fixtures and curve generators for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

import helfrev as hv


@pytest.fixture(scope="session")
def constants() -> hv.ConstantsTable:
    return hv.compute_constants()


def random_admissible(
    alpha: float,
    grid: hv.Grid,
    rng: np.random.Generator,
    amplitude: float,
    n_modes: int = 6,
) -> hv.ProfileCurve:
    """Random smooth admissible curve: a cylinder plus clamped cosine bumps.

    The window (1 - x^2)^2 vanishes to second order at x = 1, so every
    curve keeps the boundary value and slope of the cylinder, and the
    per-mode damping keeps the curve positive at moderate amplitudes.
    """
    x = grid.nodes
    values = np.full_like(x, float(alpha))
    derivs = np.zeros_like(x)
    window = (1.0 - x * x) ** 2
    d_window = -4.0 * x * (1.0 - x * x)
    for k in range(n_modes):
        c_k = rng.uniform(-1.0, 1.0) * amplitude / (k + 1)
        phase = k * np.pi * x
        values = values + c_k * window * np.cos(phase)
        derivs = derivs + c_k * (
            d_window * np.cos(phase) - window * k * np.pi * np.sin(phase)
        )
    return hv.build_profile(alpha, grid, values, derivs)
