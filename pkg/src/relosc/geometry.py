"""Metric family, scalar-product weight and the conformal frame.

All position arguments accept scalars or numpy arrays; scalars in give
floats out.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DomainError, ModelParams, RegimeTag, classify


@dataclass(frozen=True)
class Domain:
    """Open interval in the conformal coordinate."""

    lo: float
    hi: float

    @property
    def finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def __contains__(self, xhat) -> bool:
        return bool(np.all((np.asarray(xhat) > self.lo) & (np.asarray(xhat) < self.hi)))


def _out(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def domain(params: ModelParams) -> Domain:
    if classify(params).tag is RegimeTag.PT:
        half = math.pi / (2.0 * params.omega_hat)
        return Domain(-half, half)
    return Domain(-math.inf, math.inf)


def _horizon_factor(params: ModelParams, x):
    x = np.asarray(x, dtype=float)
    d = 1.0 + params.lam * params.omega**2 * x**2
    if np.any(d <= 0):
        raise DomainError(
            f"position beyond the horizon: 1 + lambda omega^2 x^2 <= 0 for lambda={params.lam}"
        )
    return x, d


def metric_components(params: ModelParams, x):
    """Return ``(g00, g11)`` of the static metric at ``x``."""
    x, d = _horizon_factor(params, x)
    num = 1.0 + (1.0 + params.lam) * params.omega**2 * x**2
    return _out(num / d), _out(-num / d**2)


def weight_mu(params: ModelParams, x):
    """Scalar-product weight sqrt(-g) g^00 = 1/sqrt(1 + lambda omega^2 x^2)."""
    _, d = _horizon_factor(params, x)
    return _out(1.0 / np.sqrt(d))


def to_conformal(params: ModelParams, x):
    """Map x to the conformal coordinate xhat, with xhat(0) = 0."""
    tag = classify(params).tag
    x = np.asarray(x, dtype=float)
    if tag is RegimeTag.FLAT:
        return _out(x)
    wh = params.omega_hat
    if tag is RegimeTag.PT:
        if np.any(np.abs(wh * x) > 1.0):
            raise DomainError(f"|omega_hat x| > 1 lies beyond the horizon (omega_hat={wh})")
        return _out(np.arcsin(wh * x) / wh)
    return _out(np.arcsinh(wh * x) / wh)


def from_conformal(params: ModelParams, xhat):
    """Inverse of :func:`to_conformal`."""
    tag = classify(params).tag
    xhat = np.asarray(xhat, dtype=float)
    if tag is RegimeTag.FLAT:
        return _out(xhat)
    wh = params.omega_hat
    if tag is RegimeTag.PT:
        if np.any(np.abs(wh * xhat) >= math.pi / 2):
            raise DomainError(f"xhat outside the well (-pi/2, pi/2)/omega_hat, omega_hat={wh}")
        return _out(np.sin(wh * xhat) / wh)
    return _out(np.sinh(wh * xhat) / wh)


def potential(params: ModelParams, xhat):
    """Relativistic potential V(xhat) in the conformal frame (units of energy^2)."""
    tag = classify(params).tag
    xhat = np.asarray(xhat, dtype=float)
    m = params.m
    if tag is RegimeTag.FLAT:
        return _out((m * params.omega * xhat) ** 2)
    wh = params.omega_hat
    strength = m**2 / params.eps**2
    if tag is RegimeTag.PT:
        if np.any(np.abs(wh * xhat) >= math.pi / 2):
            raise DomainError("PT potential is infinite at and beyond the walls +-pi/(2 omega_hat)")
        return _out(strength * np.tan(wh * xhat) ** 2)
    return _out(strength * np.tanh(wh * xhat) ** 2)


def potential_asymptote(params: ModelParams) -> float:
    """sup V: m^2/eps^2 for RM, infinite otherwise."""
    if classify(params).tag is RegimeTag.RM:
        return params.m**2 / params.eps**2
    return math.inf


def conformal_factor(params: ModelParams, xhat):
    """Conformal factor of the line element, 1 + V/m^2."""
    return _out(1.0 + np.asarray(potential(params, xhat)) / params.m**2)
