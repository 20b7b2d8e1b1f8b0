"""Pointwise residual of the conformal-frame Klein-Gordon equation."""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ..geometry import potential
from ..model import ModelParams, RegimeTag, classify

# PT samples stay this fraction of the half-width away from the walls.
WALL_MARGIN = 0.05
STEP_FACTOR = 1e-2
WALL_STEP_FACTOR = 5e-3


def second_derivative(u, x, h):
    """5-point central difference."""
    return (-u(x + 2 * h) + 16 * u(x + h) - 30 * u(x) + 16 * u(x - h) - u(x - 2 * h)) / (12 * h * h)


def sample_window(params: ModelParams, state) -> float:
    """Half-width of the region where |state| exceeds 1e-6 of its peak.

    PT windows stay WALL_MARGIN of the half-width clear of the walls.
    """
    lo, hi = getattr(state, "support", (None, None))
    if hi is None or not math.isfinite(hi):
        raise ValueError("pass half_width for states without a finite support")
    limit = hi
    if classify(params).tag is RegimeTag.PT:
        limit = (1.0 - WALL_MARGIN) * hi
    x = np.linspace(0.0, limit, 4097)
    u = np.abs(np.asarray(state(x)))
    return float(x[np.nonzero(u >= 1e-6 * u.max())[0][-1]])


def default_step(params: ModelParams, energy: float, x):
    """Per-sample FD step.

    Tied to the local wavelength 1/sqrt(E^2 - m^2), and for PT also to the
    distance from the nearer wall, where U ~ d^k varies on the scale d.
    """
    h = np.full(np.shape(x), STEP_FACTOR / math.sqrt(energy**2 - params.m**2))
    if classify(params).tag is RegimeTag.PT:
        wall = math.pi / (2.0 * params.omega_hat)
        h = np.minimum(h, WALL_STEP_FACTOR * (wall - np.abs(x)))
    return h


def ode_residual(params: ModelParams, u, sample_points: int = 64, *,
                 energy: Optional[float] = None, half_width: Optional[float] = None,
                 step: Optional[float] = None) -> float:
    """max |-u'' + V u - (E^2 - m^2) u| / max |u| over interior samples.

    ``u`` is any vectorised callable with an ``energy`` attribute (bound or
    scattering state); ``energy`` overrides it for the equation only.
    """
    E = u.energy if energy is None else energy
    if half_width is None:
        half_width = sample_window(params, u)
    x = np.linspace(-half_width, half_width, sample_points + 2)[1:-1]
    h = default_step(params, u.energy, x) if step is None else step
    values = np.asarray(u(x))
    res = -second_derivative(u, x, h) + (np.asarray(potential(params, x)) - (E**2 - params.m**2)) * values
    return float(np.max(np.abs(res)) / np.max(np.abs(values)))
