"""Model parameters, regime classification and the shape parameters k, k'.

Natural units (hbar = c = 1) throughout.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class ParameterError(ValueError):
    """Invalid model parameters."""


class RegimeError(ValueError):
    """Operation called for a regime it does not apply to."""


class DomainError(ValueError):
    """Position or energy outside the admissible domain."""


class NoSuchLevelError(ValueError):
    """Requested bound state does not exist (RM above n_max)."""

    def __init__(self, n: int, n_max: int):
        super().__init__(f"no bound state n={n}: n_max={n_max}")
        self.n = n
        self.n_max = n_max


class ConvergenceError(ArithmeticError):
    """A series or iteration did not reach its tolerance."""

    def __init__(self, message: str, achieved: float = math.nan):
        super().__init__(f"{message} (achieved tolerance {achieved:.3e})")
        self.achieved = achieved


class RegimeTag(str, enum.Enum):
    PT = "PT"
    RM = "RM"
    FLAT = "Flat"


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    is_rho: bool = False


@dataclass(frozen=True)
class ModelParams:
    """Mass ``m``, frequency ``omega`` and deformation ``lam`` of the metric family.

    ``eps`` and ``omega_hat`` are derived, never stored.
    """

    m: float
    omega: float
    lam: float

    def __post_init__(self):
        for name in ("m", "omega", "lam"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ParameterError(f"{name} must be a finite real number, got {value!r}")
        if self.m <= 0:
            raise ParameterError(f"mass must be positive (m > 0), got m={self.m}")
        if self.omega <= 0:
            raise ParameterError(f"frequency must be positive (omega > 0), got omega={self.omega}")

    @property
    def eps(self) -> float:
        return math.sqrt(abs(self.lam))

    @property
    def omega_hat(self) -> float:
        return self.eps * self.omega

    @property
    def regime(self) -> Regime:
        return classify(self)


def classify(params: ModelParams) -> Regime:
    if params.lam < 0:
        return Regime(RegimeTag.PT, is_rho=params.lam == -1.0)
    if params.lam > 0:
        return Regime(RegimeTag.RM)
    return Regime(RegimeTag.FLAT)


def require(params: ModelParams, tag: RegimeTag, what: str) -> None:
    actual = classify(params).tag
    if actual is not tag:
        raise RegimeError(f"{what} needs the {tag.value} regime, got {actual.value} (lambda={params.lam})")


def coupling_ratio(params: ModelParams) -> float:
    """m^2 / (eps^2 omega_hat^2), the right-hand side of both shape quadratics."""
    return (params.m / (params.eps * params.omega_hat)) ** 2


def shape_k(params: ModelParams) -> float:
    """Positive root k > 1 of k(k-1) = m^2/(eps^2 omega_hat^2) (PT regime)."""
    require(params, RegimeTag.PT, "shape_k")
    q = coupling_ratio(params)
    return 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * q))


def shape_k_prime(params: ModelParams) -> float:
    """Positive root k' of k'(k'+1) = m^2/(eps^2 omega_hat^2) (RM regime)."""
    require(params, RegimeTag.RM, "shape_k_prime")
    q = coupling_ratio(params)
    # rationalised form avoids cancellation for small q
    return 2.0 * q / (1.0 + math.sqrt(1.0 + 4.0 * q))
