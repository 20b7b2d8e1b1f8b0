import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import conjugate_mp, direct_series, terminating_mp
from relosc.hypergeometric import (
    hyp1f1_terminating,
    hyp2f1_conjugate,
    hyp2f1_conjugate_connection,
    hyp2f1_conjugate_pfaff,
    hyp2f1_terminating,
)
from relosc.model import ConvergenceError


@given(st.floats(-50, 50), st.sampled_from([0.5, 1.5, 2.7]), st.floats(-1e3, 1e3))
def test_terminating_n0_is_one(b, c, z):
    assert hyp2f1_terminating(0, b, c, z) == 1.0


@given(st.integers(0, 12), st.floats(-20, 20), st.sampled_from([0.5, 1.5]))
def test_terminating_at_zero(n, b, c):
    assert hyp2f1_terminating(n, b, c, 0.0) == 1.0


@pytest.mark.parametrize("b, c, z", [(3.0, 0.5, 0.25), (-2.3, 1.5, -40.0), (7.1, 1.5, 0.9)])
def test_terminating_one_term(b, c, z):
    assert hyp2f1_terminating(1, b, c, z) == pytest.approx(1 - b / c * z, rel=1e-15)


def test_terminating_pochhammer_example():
    expected = 1 - (2 * 3 / 0.5) * 0.25 + ((-2) * (-1) * 3 * 4 / (0.5 * 1.5 * 2)) * 0.0625
    assert expected == -1.0
    assert hyp2f1_terminating(2, 3.0, 0.5, 0.25) == pytest.approx(expected, abs=1e-15)
    assert hyp2f1_terminating(2, 3.0, 0.5, 0.25) == pytest.approx(float(terminating_mp(2, 3.0, 0.5, 0.25)), rel=1e-15)


def test_terminating_vectorised():
    z = np.linspace(-30, 1, 17)
    vec = hyp2f1_terminating(4, 2.5, 1.5, z)
    assert vec.shape == z.shape
    np.testing.assert_array_equal(vec, [hyp2f1_terminating(4, 2.5, 1.5, v) for v in z])


def test_terminating_near_zero_keeps_relative_accuracy():
    # a zero of the Jacobi-type polynomial: cancellation is severe here
    b, c, n = 6.3, 0.5, 5
    z = 0.0472
    ref = terminating_mp(n, b, c, z)
    assert abs(hyp2f1_terminating(n, b, c, z) - float(ref)) <= 2e-16 * abs(float(ref)) + 1e-300


def test_hyp1f1_matches_hermite():
    from numpy.polynomial.hermite import hermval
    y = np.linspace(-3, 3, 13)
    # H_4 ∝ 1F1(-2; 1/2; y^2), H_5 ∝ y 1F1(-2; 3/2; y^2)
    h4 = hermval(y, [0, 0, 0, 0, 1])
    h5 = hermval(y, [0, 0, 0, 0, 0, 1])
    np.testing.assert_allclose(hyp1f1_terminating(2, 0.5, y * y) * 12, h4, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(y * hyp1f1_terminating(2, 1.5, y * y) * 120, h5, rtol=1e-12, atol=1e-12)


def test_conjugate_at_zero():
    assert hyp2f1_conjugate(-0.4, 0.7, 0.5, 0.0) == 1.0
    assert hyp2f1_conjugate(-0.4, 0.0, 1.5, 0.0) == 1.0


def test_conjugate_is_real():
    v = hyp2f1_conjugate(-0.3, 1.1, 0.5, np.linspace(-50, 0, 9))
    assert v.dtype == np.float64


def test_conjugate_example_literal_parameters():
    # a = -k' + s + i nu with k' = 0.618, s = 0, nu = 0.7071; 50-digit reference
    z = -math.sinh(1.0) ** 2
    frozen = -0.9174244082987805446997681
    assert float(conjugate_mp(-0.618, 0.7071, 0.5, z)) == pytest.approx(frozen, rel=1e-15)
    assert hyp2f1_conjugate(-0.618, 0.7071, 0.5, z) == pytest.approx(frozen, rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.floats(-3, 1), st.floats(0, 3), st.sampled_from([0.5, 1.5]), st.floats(-0.95, 0))
def test_pfaff_vs_direct_series(alpha, nu, c, z):
    direct = direct_series(complex(alpha, nu), complex(alpha, -nu), c, z)
    pfaff = hyp2f1_conjugate_pfaff(alpha, nu, c, z)
    assert abs(direct.imag) <= 1e-14 * max(1.0, abs(direct))
    assert pfaff == pytest.approx(direct.real, rel=1e-12, abs=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 0.5), st.floats(0.05, 3), st.sampled_from([0.5, 1.5]), st.floats(-1e6, -1.1))
def test_conjugate_against_mpmath(alpha, nu, c, z):
    ref = float(conjugate_mp(alpha, nu, c, z))
    assert hyp2f1_conjugate(alpha, nu, c, z) == pytest.approx(ref, rel=1e-11, abs=1e-13)


@pytest.mark.parametrize("z", [-2.5, -4.0, -9.0])
def test_connection_agrees_with_pfaff(z):
    assert hyp2f1_conjugate_connection(-0.8, 0.6, 0.5, z) == pytest.approx(
        hyp2f1_conjugate_pfaff(-0.8, 0.6, 0.5, z), rel=1e-13)


def test_pfaff_reports_nonconvergence():
    with pytest.raises(ConvergenceError) as err:
        hyp2f1_conjugate_pfaff(-0.3, 0.01, 0.5, -1e12, max_terms=1000)
    assert err.value.achieved > 0


def test_small_nu_falls_back_to_pfaff():
    z = -30.0
    ref = float(conjugate_mp(-0.4, 0.01, 0.5, z))
    assert hyp2f1_conjugate(-0.4, 0.01, 0.5, z) == pytest.approx(ref, rel=1e-11)


def test_conjugate_rejects_positive_z():
    with pytest.raises(ValueError):
        hyp2f1_conjugate(-0.3, 0.2, 0.5, 0.1)
