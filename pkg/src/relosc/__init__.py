"""Relativistic Poschl-Teller and Rosen-Morse oscillators in (1+1) dimensions.

The metric family is parametrised by (m, omega, lambda): lambda < 0 gives a
relativistic Poschl-Teller well, lambda > 0 a Rosen-Morse barrier with a
continuum, lambda = 0 the flat limit.
"""
__version__ = "0.1.0"

from .model import (
    ConvergenceError,
    DomainError,
    ModelParams,
    NoSuchLevelError,
    ParameterError,
    Regime,
    RegimeError,
    RegimeTag,
    classify,
    shape_k,
    shape_k_prime,
)

__all__ = [
    "ConvergenceError", "DomainError", "ModelParams", "NoSuchLevelError", "ParameterError",
    "Regime", "RegimeError", "RegimeTag", "classify", "shape_k", "shape_k_prime",
]
