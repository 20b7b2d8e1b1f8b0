"""Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.

Eigenvectors come from inverse iteration. Kernels are compiled with numba;
each eigenvalue is bisected independently so results do not depend on
evaluation order.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from ..model import ConvergenceError

_MAX_BISECT = 200


@njit(cache=True)
def _sturm_count(diag, off2, x, pivmin):
    """Number of eigenvalues strictly less than ``x``."""
    count = 0
    q = diag[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0:
        count += 1
    for i in range(1, diag.shape[0]):
        q = diag[i] - x - off2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


@njit(cache=True)
def _bisect(diag, off2, index, lo, hi, pivmin, max_iter):
    """Bisect for the ``index``-th (0-based) eigenvalue inside [lo, hi]."""
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid, True
        if _sturm_count(diag, off2, mid, pivmin) > index:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi), False


@njit(cache=True)
def _solve_shifted(diag, off, shift, rhs):
    """Solve (T - shift) y = rhs with partial pivoting (LAPACK gtsv style)."""
    n = diag.shape[0]
    d = diag - shift
    du = off.copy()
    dl = off.copy()
    du2 = np.zeros(max(n - 2, 0))
    b = rhs.copy()
    tiny = 1e-300
    for i in range(n - 1):
        if abs(d[i]) >= abs(dl[i]):
            if d[i] == 0.0:
                d[i] = tiny
            fact = dl[i] / d[i]
            d[i + 1] -= fact * du[i]
            b[i + 1] -= fact * b[i]
            if i < n - 2:
                du2[i] = 0.0
            dl[i] = 0.0
        else:
            fact = d[i] / dl[i]
            d[i] = dl[i]
            temp = d[i + 1]
            d[i + 1] = du[i] - fact * temp
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -fact * du2[i]
            du[i] = temp
            temp = b[i]
            b[i] = b[i + 1]
            b[i + 1] = temp - fact * b[i + 1]
    if d[n - 1] == 0.0:
        d[n - 1] = tiny
    y = np.empty(n)
    y[n - 1] = b[n - 1] / d[n - 1]
    if n > 1:
        y[n - 2] = (b[n - 2] - du[n - 2] * y[n - 1]) / d[n - 2]
    for i in range(n - 3, -1, -1):
        y[i] = (b[i] - du[i] * y[i + 1] - du2[i] * y[i + 2]) / d[i]
    return y


def gershgorin_bounds(diag, off):
    diag = np.asarray(diag, dtype=float)
    radius = np.zeros_like(diag)
    if diag.size > 1:
        a = np.abs(np.asarray(off, dtype=float))
        radius[:-1] += a
        radius[1:] += a
    return float(np.min(diag - radius)), float(np.max(diag + radius))


def _prepare(diag, off):
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.ascontiguousarray(off, dtype=float)
    if off.shape[0] != diag.shape[0] - 1:
        raise ValueError("off-diagonal must have length len(diag) - 1")
    off2 = off * off
    scale = max(float(np.max(np.abs(diag))), float(np.max(np.abs(off))) if off.size else 0.0, 1e-300)
    pivmin = np.finfo(float).tiny * max(1.0, float(np.max(off2)) if off.size else 1.0) / np.finfo(float).eps
    return diag, off, off2, scale, pivmin


def count_below(diag, off, x: float) -> int:
    """Number of eigenvalues of the tridiagonal matrix strictly below ``x``."""
    diag, _, off2, _, pivmin = _prepare(diag, off)
    return int(_sturm_count(diag, off2, float(x), pivmin))


def eigvalsh_tridiagonal(diag, off, indices) -> np.ndarray:
    """Selected eigenvalues (ascending 0-based ``indices``) by bisection."""
    diag, off, off2, _, pivmin = _prepare(diag, off)
    lo, hi = gershgorin_bounds(diag, off)
    width = hi - lo
    lo -= 1e-12 * width + pivmin
    hi += 1e-12 * width + pivmin
    out = np.empty(len(indices))
    for j, idx in enumerate(indices):
        if not 0 <= idx < diag.shape[0]:
            raise IndexError(f"eigenvalue index {idx} out of range for size {diag.shape[0]}")
        val, ok = _bisect(diag, off2, int(idx), lo, hi, pivmin, _MAX_BISECT)
        if not ok:
            raise ConvergenceError(f"bisection for eigenvalue {idx} did not converge", hi - lo)
        out[j] = val
    return out


def eigvec_inverse_iteration(diag, off, value: float, iterations: int = 3) -> np.ndarray:
    """Unit eigenvector for an accurately known eigenvalue ``value``."""
    diag, off, _, scale, _ = _prepare(diag, off)
    shift = value + 4.0 * np.finfo(float).eps * scale
    n = diag.shape[0]
    # deterministic, non-symmetric start so neither parity is missed
    y = 1.0 + np.arange(n) / n
    for _ in range(iterations):
        y = _solve_shifted(diag, off, shift, y / np.linalg.norm(y))
    y /= np.linalg.norm(y)
    return y
