"""Closed-form energy spectra for the PT, RM and flat regimes.

Energies are always the positive root of E^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .model import (
    DomainError,
    ModelParams,
    NoSuchLevelError,
    RegimeTag,
    classify,
    require,
    shape_k,
    shape_k_prime,
)


@dataclass(frozen=True)
class LevelIndex:
    """Main quantum number n = 2 n_s + s."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise ValueError(f"level index must be a nonnegative integer, got {self.n!r}")

    @property
    def n_s(self) -> int:
        return self.n // 2

    @property
    def s(self) -> int:
        return self.n % 2


def _index(n) -> LevelIndex:
    return n if isinstance(n, LevelIndex) else LevelIndex(int(n))


def pt_level(params: ModelParams, n) -> float:
    require(params, RegimeTag.PT, "pt_level")
    n = _index(n).n
    k = shape_k(params)
    wh = params.omega_hat
    return math.sqrt(params.m**2 + wh**2 * (2.0 * k * (n + 0.5) + n * n))


def largest_level_below(kp: float) -> int:
    """Largest integer strictly below ``kp``."""
    return math.ceil(kp) - 1


def n_max(params: ModelParams) -> int:
    require(params, RegimeTag.RM, "n_max")
    return largest_level_below(shape_k_prime(params))


def rm_level(params: ModelParams, n) -> float:
    require(params, RegimeTag.RM, "rm_level")
    n = _index(n).n
    top = n_max(params)
    if n > top:
        raise NoSuchLevelError(n, top)
    kp = shape_k_prime(params)
    wh = params.omega_hat
    return math.sqrt(params.m**2 + wh**2 * (2.0 * kp * (n + 0.5) - n * n))


def continuum_threshold(params: ModelParams) -> float:
    require(params, RegimeTag.RM, "continuum_threshold")
    return params.m * math.sqrt(1.0 + 1.0 / params.eps**2)


def wavenumber_nu(params: ModelParams, energy: float) -> float:
    """nu(E) = sqrt(E^2 - threshold^2) / (2 omega_hat); zero at the threshold."""
    thr = continuum_threshold(params)
    if energy < thr:
        raise DomainError(f"E={energy} is below the continuum threshold {thr}: discrete regime")
    return math.sqrt((energy - thr) * (energy + thr)) / (2.0 * params.omega_hat)


def flat_level(params: ModelParams, n) -> float:
    require(params, RegimeTag.FLAT, "flat_level")
    n = _index(n).n
    return math.sqrt(params.m**2 + 2.0 * params.m * params.omega * (n + 0.5))


def nrho_level_squared(m: float, omega: float, n: int) -> float:
    """E_n^2 of the flat limit for arbitrary (m, omega), regardless of lambda."""
    return m**2 + 2.0 * m * omega * (n + 0.5)


def level(params: ModelParams, n) -> float:
    """Closed-form E_n for whichever regime ``params`` falls in."""
    tag = classify(params).tag
    if tag is RegimeTag.PT:
        return pt_level(params, n)
    if tag is RegimeTag.RM:
        return rm_level(params, n)
    return flat_level(params, n)


def shape_parameter(params: ModelParams) -> Optional[float]:
    tag = classify(params).tag
    if tag is RegimeTag.PT:
        return shape_k(params)
    if tag is RegimeTag.RM:
        return shape_k_prime(params)
    return None


def available_levels(params: ModelParams, max_levels: int) -> int:
    """Number of levels a report holds: max_levels, further capped at n_max + 1 for RM."""
    if classify(params).tag is RegimeTag.RM:
        return min(max_levels, n_max(params) + 1)
    return max_levels


@dataclass(frozen=True)
class SpectrumReport:
    params: ModelParams
    regime: RegimeTag
    shape: Optional[float]
    levels: list = field(default_factory=list)  # (n, E_n) pairs
    threshold: Optional[float] = None
    n_max: Optional[int] = None


def spectrum_report(params: ModelParams, max_levels: int) -> SpectrumReport:
    """Levels capped at ``max_levels`` (PT, flat) or at n_max (RM)."""
    tag = classify(params).tag
    count = available_levels(params, max_levels)
    levels = [(n, level(params, n)) for n in range(count)]
    if tag is RegimeTag.RM:
        return SpectrumReport(
            params, tag, shape_k_prime(params), levels,
            threshold=continuum_threshold(params), n_max=n_max(params),
        )
    return SpectrumReport(params, tag, shape_parameter(params), levels)
