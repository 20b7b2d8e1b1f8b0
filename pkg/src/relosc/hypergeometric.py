"""Gauss hypergeometric function in the configurations the eigenfunctions need.

* terminating polynomials F(-n, b; c; z) for bound states (any real z),
* conjugate pairs F(alpha + i nu, alpha - i nu; c; z), z <= 0, which are
  real, for scattering states,
* terminating confluent series 1F1(-n; c; z) for the flat limit.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.special import loggamma

from .model import ConvergenceError

TERM_RTOL = 1e-16
MIN_TERMS = 10
MAX_TERMS = 200_000
# Below this z the 1/z connection formula replaces the Pfaff series.
CONNECTION_Z = -2.0
# The connection coefficients lose ~log10(1/nu) digits; use Pfaff below this.
CONNECTION_MIN_NU = 0.05


def _out(value):
    value = np.asarray(value)
    return value.item() if value.ndim == 0 else value


_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_polyval(coeffs, z):
    """Horner in double-double arithmetic; ``coeffs`` are exact Fractions, low order first."""
    hi = [float(q) for q in coeffs]
    lo = [float(q - Fraction(h)) for q, h in zip(coeffs, hi)]
    rh = np.full_like(z, hi[-1])
    rl = np.full_like(z, lo[-1])
    for ch, cl in zip(reversed(hi[:-1]), reversed(lo[:-1])):
        p, pe = _two_prod(rh, z)
        pe = pe + rl * z
        sh, se = _two_sum(p, ch)
        se = se + pe + cl
        rh = sh + se
        rl = se - (rh - sh)
    return rh + rl


def _terminating_coeffs(n_s: int, b, c):
    b = Fraction(b) if b is not None else None
    c = Fraction(c)
    coeffs = [Fraction(1)]
    for j in range(n_s):
        ratio = Fraction(j - n_s) / ((c + j) * (j + 1))
        if b is not None:
            ratio *= b + j
        coeffs.append(coeffs[-1] * ratio)
    return coeffs


def hyp2f1_terminating(n_s: int, b: float, c: float, z):
    """F(-n_s, b; c; z) as the finite sum of n_s + 1 terms.

    Coefficients are formed exactly and the polynomial is evaluated in
    double-double, so cancellation near the zeros costs no accuracy.
    """
    if n_s < 0:
        raise ValueError("n_s must be nonnegative")
    if c <= 0:
        raise ValueError("c must be positive")
    z = np.asarray(z, dtype=float)
    return _out(_dd_polyval(_terminating_coeffs(n_s, float(b), float(c)), z))


def hyp1f1_terminating(n_s: int, c: float, z):
    """Kummer 1F1(-n_s; c; z) as a finite sum."""
    if n_s < 0:
        raise ValueError("n_s must be nonnegative")
    if c <= 0:
        raise ValueError("c must be positive")
    z = np.asarray(z, dtype=float)
    return _out(_dd_polyval(_terminating_coeffs(n_s, None, float(c)), z))


def _series(a, b, c, x, max_terms=MAX_TERMS):
    """Vectorised 2F1 power series for |x| < 1 with relative-term truncation."""
    x = np.asarray(x)
    term = np.ones(x.shape, dtype=complex)
    total = np.ones(x.shape, dtype=complex)
    small_run = 0
    for j in range(max_terms):
        term = term * ((a + j) * (b + j) / ((c + j) * (j + 1))) * x
        total = total + term
        ratio = np.max(np.abs(term) / np.maximum(np.abs(total), np.finfo(float).tiny))
        if j + 1 >= MIN_TERMS and ratio < TERM_RTOL:
            small_run += 1
            # two consecutive small terms guard against a near-zero coefficient
            if small_run >= 2:
                return total
        else:
            small_run = 0
    raise ConvergenceError(f"2F1 series not converged after {max_terms} terms", float(ratio))


def hyp2f1_conjugate_pfaff(alpha: float, nu: float, c: float, z, max_terms=MAX_TERMS):
    """F(a, conj(a); c; z) via Pfaff, a = alpha + i nu, z <= 0.

    F(a, b; c; z) = (1 - z)^(-a) F(a, c - b; c; z/(z - 1)); the real part of
    this and of its conjugate companion are averaged so the result is real.
    """
    z = np.asarray(z, dtype=float)
    a = complex(alpha, nu)
    b = a.conjugate()
    w = z / (z - 1.0)
    val = _series(a, c - b, c, w, max_terms=max_terms)
    # (1 - z)^(-a) = exp(-alpha log(1-z)) * exp(-i nu log(1-z))
    log1mz = np.log1p(-z)
    pref = np.exp(-alpha * log1mz) * np.exp(-1j * nu * log1mz)
    return _out((pref * val).real)


def hyp2f1_conjugate_connection(alpha: float, nu: float, c: float, z, max_terms=MAX_TERMS):
    """F(a, conj(a); c; z) for z < -1 via the 1/z connection formula.

    The two connection terms are complex conjugates, so F = 2 Re(first term).
    Requires nu > 0.
    """
    if nu <= 0:
        raise ValueError("connection formula needs nu > 0")
    z = np.asarray(z, dtype=float)
    a = complex(alpha, nu)
    b = a.conjugate()
    coeff = np.exp(loggamma(c) + loggamma(b - a) - loggamma(b) - loggamma(c - a))
    series = _series(a, a - c + 1.0, a - b + 1.0, 1.0 / z, max_terms=max_terms)
    log_mz = np.log(-z)
    first = coeff * np.exp(-a * log_mz) * series
    return _out(2.0 * first.real)


def hyp2f1_conjugate(alpha: float, nu: float, c: float, z, max_terms=MAX_TERMS):
    """Real value of F(alpha + i nu, alpha - i nu; c; z) for z <= 0."""
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    z = np.asarray(z, dtype=float)
    if np.any(z > 0):
        raise ValueError("hyp2f1_conjugate needs z <= 0")
    out = np.empty(z.shape, dtype=float)
    far = z < CONNECTION_Z if nu >= CONNECTION_MIN_NU else np.zeros(z.shape, dtype=bool)
    if np.any(~far):
        out[~far] = hyp2f1_conjugate_pfaff(alpha, nu, c, z[~far], max_terms=max_terms)
    if np.any(far):
        out[far] = hyp2f1_conjugate_connection(alpha, nu, c, z[far], max_terms=max_terms)
    return _out(out)
