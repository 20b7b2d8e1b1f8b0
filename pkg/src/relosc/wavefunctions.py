"""Bound and scattering eigenfunctions in the conformal frame.

Bound states carry a numerically computed normalisation constant (unit norm
under the flat scalar product of the conformal frame); they are positive at
the origin (even states) or rise through it (odd states). Scattering states
use N_nu = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.integrate import simpson

from .geometry import domain, potential
from .hypergeometric import hyp1f1_terminating, hyp2f1_conjugate, hyp2f1_terminating
from .model import DomainError, ModelParams, RegimeTag, classify, shape_k, shape_k_prime
from .oracle.grid import GridFunction
from .oracle.quadrature import quadrature
from .spectra import LevelIndex, level, wavenumber_nu

# RM/flat normalisation integrals are cut where the envelope drops below this
# fraction of its peak.
TRUNCATION_RTOL = 1e-14
# Largest omega_hat |xhat| at which sinh^2 stays representable.
MAX_HYPERBOLIC_ARG = 300.0


def _out(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def _log_cosh(t):
    """log cosh t, relatively accurate near 0 and overflow-free for large |t|."""
    t = np.abs(np.asarray(t, dtype=float))
    small = 0.5 * np.log1p(np.sinh(np.minimum(t, 1.0)) ** 2)
    large = t + np.log1p(np.exp(-2.0 * t)) - math.log(2.0)
    return np.where(t < 1.0, small, large)


def _log_cos(t):
    """log cos t on [-pi/2, pi/2]; -inf at the walls."""
    t = np.abs(np.asarray(t, dtype=float))
    with np.errstate(divide="ignore"):
        near = np.log(np.clip(np.cos(t), 0.0, None))
    small = 0.5 * np.log1p(-np.sin(np.minimum(t, math.pi / 4)) ** 2)
    return np.where(t < math.pi / 4, small, near)


def envelope_radius(params: ModelParams, n: int, rtol: float = TRUNCATION_RTOL) -> float:
    """Half-width beyond which the level-n envelope is below ``rtol`` of its peak.

    RM: the tail of U_n is cosh^(n-k')(omega_hat xhat); flat: Gaussian times
    a degree-n polynomial. Infinite for PT (the well has walls).
    """
    tag = classify(params).tag
    if tag is RegimeTag.PT:
        return math.inf
    if tag is RegimeTag.RM:
        decay = shape_k_prime(params) - n
        return math.acosh(rtol ** (-1.0 / decay)) / params.omega_hat
    y = math.sqrt(2 * n + 1) + math.sqrt(2.0 * math.log(1.0 / rtol))
    return y / math.sqrt(params.m * params.omega)


def _raw_bound(params: ModelParams, idx: LevelIndex, xhat):
    """Unnormalised U_n (N = 1)."""
    tag = classify(params).tag
    n_s, s = idx.n_s, idx.s
    c = s + 0.5
    xhat = np.asarray(xhat, dtype=float)
    if tag is RegimeTag.PT:
        wh = params.omega_hat
        t = wh * xhat
        if np.any(np.abs(t) > math.pi / 2):
            raise DomainError(f"xhat outside the PT well |xhat| < pi/(2 omega_hat) = {math.pi / (2 * wh)}")
        k = shape_k(params)
        sin = np.sin(t)
        # cos^k through logs: cos(t)**k would carry k * eps of noise
        return np.exp(k * _log_cos(t)) * sin**s * hyp2f1_terminating(n_s, k + s + n_s, c, sin**2)
    if tag is RegimeTag.RM:
        wh = params.omega_hat
        t = wh * xhat
        kp = shape_k_prime(params)
        b = -kp + s + n_s
        tanh = np.tanh(t)
        # Pfaff: F(-n, b; c; -sinh^2) = cosh^(2n) F(-n, c - b; c; tanh^2)
        return (np.exp((2 * n_s + s - kp) * _log_cosh(t)) * tanh**s
                * hyp2f1_terminating(n_s, c - b, c, tanh**2))
    y = math.sqrt(params.m * params.omega) * xhat
    return np.exp(-0.5 * y * y) * y**s * hyp1f1_terminating(n_s, c, y * y)


@dataclass(frozen=True)
class BoundState:
    params: ModelParams
    index: LevelIndex
    energy: float
    shape: Optional[float]  # k (PT), k' (RM), None (flat)
    norm: float
    radius: float  # integration half-width; the wall for PT
    norm_tolerance: float  # achieved relative quadrature tolerance

    def __call__(self, xhat):
        return eval_bound(self, xhat)

    @property
    def n(self) -> int:
        return self.index.n

    @property
    def support(self) -> tuple:
        return (-self.radius, self.radius)


def eval_bound(state: BoundState, xhat):
    return _out(state.norm * _raw_bound(state.params, state.index, xhat))


def normalize(params: ModelParams, n) -> BoundState:
    """Build the unit-norm bound state U_n (raises NoSuchLevelError past n_max)."""
    idx = n if isinstance(n, LevelIndex) else LevelIndex(int(n))
    energy = level(params, idx)
    tag = classify(params).tag
    if tag is RegimeTag.PT:
        radius = domain(params).hi
        shape = shape_k(params)
    else:
        radius = envelope_radius(params, idx.n)
        shape = shape_k_prime(params) if tag is RegimeTag.RM else None
    # symmetric integrand: integrate the right half and double it
    res = quadrature(lambda x: _raw_bound(params, idx, x) ** 2, 0.0, radius, panels=8)
    return BoundState(params, idx, energy, shape, 1.0 / math.sqrt(2.0 * res.value), radius, res.error)


def bound_states(params: ModelParams, count: int) -> list:
    return [normalize(params, n) for n in range(count)]


@dataclass(frozen=True)
class ScatteringState:
    params: ModelParams
    s: int
    energy: float
    nu: float

    def __call__(self, xhat):
        return eval_scattering(self, xhat)


def scattering_state(params: ModelParams, energy: float, s: int) -> ScatteringState:
    if s not in (0, 1):
        raise ValueError("parity channel s must be 0 or 1")
    if classify(params).tag is not RegimeTag.RM:
        raise DomainError("scattering states exist only in the RM regime (lambda > 0)")
    return ScatteringState(params, s, float(energy), wavenumber_nu(params, energy))


def eval_scattering(state: ScatteringState, xhat):
    """cosh^(-k') sinh^s F((s-k')/2 + i nu, (s-k')/2 - i nu; s + 1/2; -sinh^2)."""
    params = state.params
    wh = params.omega_hat
    t = wh * np.asarray(xhat, dtype=float)
    if np.any(np.abs(t) > MAX_HYPERBOLIC_ARG):
        raise DomainError(f"|omega_hat xhat| > {MAX_HYPERBOLIC_ARG} not supported")
    kp = shape_k_prime(params)
    s = state.s
    z = -np.sinh(t) ** 2
    f = hyp2f1_conjugate(0.5 * (s - kp), state.nu, s + 0.5, z)
    return _out(np.exp(-kp * _log_cosh(t)) * np.sinh(t) ** s * f)


State = Union[BoundState, GridFunction]


def _support(f) -> tuple:
    if isinstance(f, GridFunction):
        return (f.lo, f.hi)
    return f.support


def inner_product(f: State, g: State, params: Optional[ModelParams] = None) -> float:
    """Flat-frame scalar product of two real states.

    Two bound states are integrated by Gauss-Legendre over the wider support;
    if either is a grid function the other is sampled on its grid and the
    product integrated by Simpson's rule.
    """
    for state in (f, g):
        if isinstance(state, BoundState) and params is not None and state.params != params:
            raise DomainError("state belongs to a different model")
    if isinstance(f, BoundState) and isinstance(g, BoundState):
        if f.params != g.params:
            raise DomainError("states live on different domains (different models)")
        radius = max(f.radius, g.radius)
        return quadrature(lambda x: f(x) * g(x), -radius, radius, panels=16).value
    grid = f if isinstance(f, GridFunction) else g
    other = g if grid is f else f
    if isinstance(other, GridFunction):
        if not grid.same_grid(other):
            raise DomainError("grid functions sampled on different grids")
        values = other.values
    else:
        lo, hi = other.support
        if grid.lo < lo - 1e-12 * abs(lo) or grid.hi > hi + 1e-12 * abs(hi):
            raise DomainError("grid extends beyond the state's domain")
        values = np.asarray(other(grid.x))
    return float(simpson(grid.values * values, x=grid.x))


def sample(state, lo: float, hi: float, points: int) -> GridFunction:
    x = np.linspace(lo, hi, points)
    return GridFunction(lo, hi, np.asarray(state(x), dtype=float))


def count_nodes(state: BoundState, grid_points: int = 1024) -> int:
    """Interior sign changes of U_n on a uniform grid over its support."""
    if grid_points < 256:
        raise ValueError("grid_points must be >= 256")
    lo, hi = state.support
    x = np.linspace(lo, hi, grid_points)[1:-1]
    u = np.asarray(state(x))
    sign = np.sign(u[u != 0.0])
    return int(np.count_nonzero(sign[1:] != sign[:-1]))
