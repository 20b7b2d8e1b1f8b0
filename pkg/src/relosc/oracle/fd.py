"""Finite-difference eigensolver for -U'' + V U = (E^2 - m^2) U.

Second-order 3-point Laplacian on a uniform grid with Dirichlet ends (the
PT walls, or a truncation radius for RM and flat models), Sturm bisection
for the eigenvalues and one Richardson step across two grids.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..geometry import potential
from ..model import ModelParams, NoSuchLevelError, RegimeTag, classify, shape_k_prime
from ..spectra import continuum_threshold, n_max
from .grid import GridFunction
from .tridiagonal import count_below, eigvalsh_tridiagonal, eigvec_inverse_iteration


@dataclass(frozen=True)
class FdConfig:
    grid_sizes: tuple = (4097, 8193)  # total points, walls included
    count: int = 6
    envelope_tol: float = 1e-10  # target-state tail at the truncation radius
    potential_tol: float = 1e-12  # relative distance of V from its RM asymptote
    radius: float = None  # explicit truncation radius (RM/flat) overrides the policy

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.grid_sizes)
        if not sizes or any(n < 3 for n in sizes):
            raise ValueError("grid sizes must be >= 3")
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("grid sizes must be strictly increasing")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        object.__setattr__(self, "grid_sizes", sizes)


@dataclass(frozen=True)
class FdResult:
    energies: np.ndarray  # extrapolated E_n
    mu: np.ndarray  # raw eigenvalues of -d2 + V, shape (len(grid_sizes), count)
    mu_extrapolated: np.ndarray
    lo: float
    hi: float
    grid_sizes: tuple = field(default=())


def truncation_radius(params: ModelParams, top: int, cfg: FdConfig) -> float:
    """Dirichlet box half-width for RM/flat models (inf for PT)."""
    tag = classify(params).tag
    if tag is RegimeTag.PT:
        return math.inf
    if cfg.radius is not None:
        return float(cfg.radius)
    if tag is RegimeTag.RM:
        wh = params.omega_hat
        decay = (shape_k_prime(params) - top) * wh
        r_env = math.log(1.0 / cfg.envelope_tol) / decay
        # sech^2 below potential_tol
        r_pot = math.acosh(cfg.potential_tol ** -0.5) / wh
        return max(r_env, r_pot)
    y = math.sqrt(2 * top + 1) + math.sqrt(2.0 * math.log(1.0 / cfg.envelope_tol))
    return y / math.sqrt(params.m * params.omega)


def interval(params: ModelParams, top: int, cfg: FdConfig) -> tuple:
    if classify(params).tag is RegimeTag.PT:
        half = math.pi / (2.0 * params.omega_hat)
    else:
        half = truncation_radius(params, top, cfg)
    return -half, half


def operator(params: ModelParams, lo: float, hi: float, points: int):
    """Diagonal, off-diagonal and interior nodes of the discrete operator."""
    x = np.linspace(lo, hi, points)[1:-1]
    h = (hi - lo) / (points - 1)
    diag = 2.0 / h**2 + np.asarray(potential(params, x))
    off = np.full(x.size - 1, -1.0 / h**2)
    return diag, off, x


def richardson(mu_coarse, mu_fine, ratio: float = 2.0):
    """Cancel an O(h^2) error between grids whose spacing differs by ``ratio``."""
    r2 = ratio * ratio
    return (r2 * np.asarray(mu_fine) - np.asarray(mu_coarse)) / (r2 - 1.0)


def _check_count(params: ModelParams, count: int):
    if classify(params).tag is RegimeTag.RM:
        top = n_max(params)
        if count - 1 > top:
            raise NoSuchLevelError(count - 1, top)


def fd_solve(params: ModelParams, cfg: FdConfig = FdConfig()) -> FdResult:
    _check_count(params, cfg.count)
    lo, hi = interval(params, cfg.count - 1, cfg)
    mu = np.array([
        eigvalsh_tridiagonal(*operator(params, lo, hi, n)[:2], range(cfg.count))
        for n in cfg.grid_sizes
    ])
    if len(cfg.grid_sizes) > 1:
        h = [(hi - lo) / (n - 1) for n in cfg.grid_sizes[-2:]]
        mu_x = richardson(mu[-2], mu[-1], h[0] / h[1])
    else:
        mu_x = mu[-1]
    energies = np.sqrt(params.m**2 + mu_x)
    return FdResult(energies, mu, mu_x, lo, hi, cfg.grid_sizes)


def fd_eigenvalues(params: ModelParams, cfg: FdConfig = FdConfig()) -> np.ndarray:
    """Lowest ``cfg.count`` energies, Richardson-extrapolated."""
    return fd_solve(params, cfg).energies


def fd_count_below(params: ModelParams, energy: float, points: int = 8193,
                   cfg: FdConfig = FdConfig()) -> int:
    """Number of discrete levels with E < ``energy`` on one grid (Sturm count)."""
    top = n_max(params) if classify(params).tag is RegimeTag.RM else cfg.count - 1
    lo, hi = interval(params, top, cfg)
    diag, off, _ = operator(params, lo, hi, points)
    return count_below(diag, off, energy**2 - params.m**2)


def fd_bound_count(params: ModelParams, points: int = 8193, cfg: FdConfig = FdConfig()) -> int:
    """RM: discrete eigenvalues below the continuum threshold."""
    return fd_count_below(params, continuum_threshold(params), points, cfg)


def fd_eigenvector(params: ModelParams, n: int, points: int = 8193,
                   cfg: FdConfig = FdConfig()) -> GridFunction:
    """Unit-norm level-n eigenvector on the full grid (zero at the ends).

    Sign convention matches the closed form: positive just right of the origin.
    """
    _check_count(params, n + 1)
    lo, hi = interval(params, n, cfg)
    diag, off, x = operator(params, lo, hi, points)
    mu = eigvalsh_tridiagonal(diag, off, [n])[0]
    vec = eigvec_inverse_iteration(diag, off, mu)
    h = (hi - lo) / (points - 1)
    vec = vec / math.sqrt(h)
    if vec[np.searchsorted(x, 0.0, side="right")] < 0:
        vec = -vec
    return GridFunction(lo, hi, np.concatenate(([0.0], vec, [0.0])))
