"""Exit criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion, or directly with ``python tests/test_acceptance.py``.
"""
import math
import time

import numpy as np
import pytest

from oracles import direct_series_mp, terminating_mp
from relosc.geometry import domain, from_conformal, to_conformal, weight_mu
from relosc.hypergeometric import hyp2f1_conjugate, hyp2f1_terminating
from relosc.model import ModelParams, shape_k, shape_k_prime
from relosc.oracle import FdConfig, fd_bound_count, fd_eigenvalues, ode_residual
from relosc.spectra import continuum_threshold, level, n_max, pt_level, rm_level, wavenumber_nu
from relosc.wavefunctions import bound_states, count_nodes, inner_product, scattering_state

pytestmark = pytest.mark.acceptance


def report(number, ok, detail):
    print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def rel_err(a, b):
    return np.max(np.abs(np.asarray(a) - np.asarray(b)) / np.abs(np.asarray(b)))


def test_criterion_1_rho_spectrum():
    p = ModelParams(1.0, 1.0, -1.0)
    start = time.perf_counter()
    fd = fd_eigenvalues(p, FdConfig(grid_sizes=(4097, 8193), count=6))
    elapsed = time.perf_counter() - start
    closed = [p.omega_hat * (shape_k(p) + n) for n in range(6)]
    err = rel_err(fd, closed)
    report(1, err < 1e-6 and elapsed < 10.0, f"max rel err {err:.2e}, runtime {elapsed:.2f} s")


def test_criterion_2_generic_pt():
    worst = 0.0
    for m, omega, lam in [(1, 1, -0.25), (2, 1, -4), (1, 0.5, -1)]:
        p = ModelParams(m, omega, lam)
        fd = fd_eigenvalues(p, FdConfig(count=5))
        worst = max(worst, rel_err(fd, [pt_level(p, n) for n in range(5)]))
    report(2, worst < 1e-5, f"max rel err {worst:.2e}")


def test_criterion_3_rm_window():
    lines, ok = [], True
    for m in (1, 3, 10):
        p = ModelParams(m, 1.0, 1.0)
        expected = n_max(p) + 1
        count = fd_bound_count(p)
        thr = continuum_threshold(p)
        closed = np.array([rm_level(p, n) for n in range(expected)])
        fd = fd_eigenvalues(p, FdConfig(count=expected))
        err = rel_err(fd, closed)
        inside = bool(np.all((closed >= m) & (closed < thr)))
        ok &= count == expected and err < 1e-5 and inside
        lines.append(f"m={m}: count {count}/{expected}, rel err {err:.1e}")
    report(3, ok, "; ".join(lines))


def test_criterion_4_eps_one_degeneracy():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        m, omega = rng.uniform(0.05, 20.0, size=2)
        p = ModelParams(m, omega, -1.0)
        k = shape_k(p)
        for n in range(21):
            worst = max(worst, abs(pt_level(p, n) / (p.omega_hat * (k + n)) - 1.0))
    report(4, worst < 1e-12, f"max rel deviation {worst:.2e}")


def test_criterion_5_flat_limit():
    m = omega = 1.0
    eps = 1e-3
    worst_e = 0.0
    for sign in (-1.0, 1.0):
        p = ModelParams(m, omega, sign * eps**2)
        for n in range(3):
            worst_e = max(worst_e, abs(level(p, n) ** 2 - (m**2 + 2 * m * omega * (n + 0.5))))
    eps = 1e-2
    dk = abs(eps**2 * shape_k(ModelParams(m, omega, -eps**2)) - m / omega)
    dkp = abs(eps**2 * shape_k_prime(ModelParams(m, omega, eps**2)) - m / omega)
    ok = worst_e < 1e-4 and dk < 1e-2 and dkp < 1e-2
    report(5, ok, f"max |dE^2| {worst_e:.2e}, |eps^2 k - m/omega| {dk:.1e}, |eps^2 k' - m/omega| {dkp:.1e}")


def test_criterion_6_eigenfunctions():
    rho = ModelParams(1.0, 1.0, -1.0)
    first = bound_states(rho, 6)
    gram = np.array([[inner_product(a, b) for b in first] for a in first])
    gram_err = float(np.max(np.abs(gram - np.eye(6))))
    nodes_ok = all(count_nodes(u) == u.n for u in first)
    family = [ModelParams(*t) for t in [(1, 1, -0.25), (2, 1, -4), (1, 0.5, -1), (1, 1, 0),
                                        (1, 1, 1), (3, 1, 1), (10, 1, 1)]]
    states = list(first)
    for p in family:
        states += bound_states(p, min(6, n_max(p) + 1) if p.lam > 0 else 6)
    worst = max(ode_residual(u.params, u) for u in states)
    ok = worst < 1e-6 and gram_err < 1e-8 and nodes_ok
    report(6, ok, f"{len(states)} states, max residual {worst:.1e}, gram err {gram_err:.1e}, nodes ok {nodes_ok}")


def test_criterion_7_scattering():
    p = ModelParams(1.0, 1.0, 1.0)
    worst = 0.0
    for energy in (1.5, 2.0, 3.0):
        for s in (0, 1):
            u = scattering_state(p, energy, s)
            assert u.nu == wavenumber_nu(p, energy)
            worst = max(worst, ode_residual(p, u, half_width=5.0))
    at_threshold = wavenumber_nu(p, continuum_threshold(p))
    report(7, worst < 1e-6 and at_threshold == 0.0, f"max residual {worst:.1e}, nu(threshold) = {at_threshold}")


def test_criterion_8_hypergeometric():
    rng = np.random.default_rng(8)
    worst_t = 0.0
    for _ in range(200):
        n_s = int(rng.integers(0, 15))
        b, c = rng.uniform(-12, 12), rng.uniform(0.5, 8)
        z = rng.uniform(-5, 0)
        ref = float(terminating_mp(n_s, b, c, z))
        got = hyp2f1_terminating(n_s, b, c, z)
        worst_t = max(worst_t, abs(got - ref) / max(abs(ref), 1e-300))
    worst_c, real_only = 0.0, True
    for _ in range(200):
        alpha, nu = rng.uniform(-6, 2), rng.uniform(0, 5)
        c = rng.choice([0.5, 1.5])
        z = -rng.uniform(0, 0.95)
        got = hyp2f1_conjugate(alpha, nu, c, z)
        real_only &= not np.iscomplexobj(got)
        ref = direct_series_mp(complex(alpha, nu), complex(alpha, -nu), c, z)
        worst_c = max(worst_c, abs(got - ref.real) / max(abs(ref), 1e-300))
    ok = worst_t < 1e-12 and worst_c < 1e-10 and real_only
    report(8, ok, f"terminating rel err {worst_t:.1e}, conjugate rel err {worst_c:.1e}, real output {real_only}")


def test_criterion_9_geometry():
    worst_d, worst_r = 0.0, 0.0
    for lam in (-1.0, 0.0, 1.0):
        p = ModelParams(1.0, 1.0, lam)
        if lam < 0:
            edge = 0.99 / p.omega_hat
        else:
            edge = 10.0
        x = np.linspace(-edge, edge, 401)
        h = 1e-5
        deriv = (to_conformal(p, x + h) - to_conformal(p, x - h)) / (2 * h)
        worst_d = max(worst_d, float(np.max(np.abs(deriv - weight_mu(p, x)) / weight_mu(p, x))))
        dom = domain(p)
        xhat_edge = 0.999 * dom.hi if math.isfinite(dom.hi) else 10.0
        xhat = np.linspace(-xhat_edge, xhat_edge, 401)
        back = to_conformal(p, from_conformal(p, xhat))
        worst_r = max(worst_r, float(np.max(np.abs(back - xhat))))
        fwd = from_conformal(p, to_conformal(p, x))
        worst_r = max(worst_r, float(np.max(np.abs(fwd - x) / np.maximum(1.0, np.abs(x)))))
    report(9, worst_d < 1e-6 and worst_r < 1e-13, f"derivative err {worst_d:.1e}, round trip err {worst_r:.1e}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-s", "-q"]))
