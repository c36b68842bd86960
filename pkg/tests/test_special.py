import math

import mpmath
import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings
from hypothesis import strategies as st

from riesz_stencil.errors import ConvergenceError, SymmetryError, ValidationError
from riesz_stencil.special import (
    DftPlan,
    compensated_sum,
    dft_odd,
    gamma,
    hyp1f2_regularized,
    idft_odd,
    pochhammer,
)


@given(st.floats(0.05, 40.0))
def test_gamma_matches_scipy(x):
    assert gamma(x) == pytest.approx(scipy.special.gamma(x), rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_gamma_rejects_nonpositive(x):
    with pytest.raises(ValidationError):
        gamma(x)


def test_pochhammer():
    assert pochhammer(3.0, 0) == 1.0
    assert pochhammer(1.0, 5) == 120.0
    assert pochhammer(0.5, 3) == pytest.approx(float(mpmath.rf(0.5, 3)), rel=1e-15)
    with pytest.raises(ValidationError):
        pochhammer(1.0, -1)


def test_compensated_sum_recovers_cancelled_bits():
    vals = [1e16, 1.0, -1e16, 1.0]
    assert sum(vals) != 2.0
    assert compensated_sum(vals) == 2.0


# Regularized 1F2 oracle values: mpmath.hyp1f2 * rgamma(b1) * rgamma(b2) at 50 digits.
HYP_CASES = [
    (1.0, 0.9, 1.4, -0.5, 0.67978588742621312213),
    (2.0, 1.9, 2.4, -30.0, -0.0090290876549552657787),
    (3.0, 2.9, 3.4, -1200.0, -6.8374718912055300572e-6),
    (1.0, 0.5, 1.0, 2.5, 6.6762449497768623092),
    (1.0, 1.0, 1.5, -380.0, 0.027793223624581036834),
]


@pytest.mark.parametrize("a,b1,b2,z,expected", HYP_CASES)
def test_hyp1f2_frozen(a, b1, b2, z, expected):
    assert hyp1f2_regularized(a, b1, b2, z) == pytest.approx(expected, rel=1e-13)


def test_hyp1f2_zero_argument_and_pole():
    assert hyp1f2_regularized(1.0, 2.0, 3.0, 0.0) == pytest.approx(1.0 / (1.0 * 2.0))
    # 1/Gamma(0) = 0, so the k = 0 term drops out
    z = -0.3
    ref = mpmath.nsum(
        lambda k: mpmath.rf(1, k) * z**k * mpmath.rgamma(k) * mpmath.rgamma(1 + k) / mpmath.factorial(k),
        [1, mpmath.inf],
    )
    assert hyp1f2_regularized(1.0, 0.0, 1.0, z) == pytest.approx(float(ref), rel=1e-13)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 1.9), st.floats(-3000.0, -0.01))
def test_hyp1f2_matches_mpmath(alpha, z):
    b1, b2 = (3 - alpha) / 2, (4 - alpha) / 2
    with mpmath.workdps(60):
        ref = mpmath.hyp1f2(1, b1, b2, z) * mpmath.rgamma(b1) * mpmath.rgamma(b2)
    got = hyp1f2_regularized(1.0, b1, b2, z)
    assert abs(got - float(ref)) <= 1e-12 * max(abs(float(ref)), 1e-3 * abs(z) ** -0.5)


def test_hyp1f2_term_cap():
    with pytest.raises(ConvergenceError):
        hyp1f2_regularized(1.0, 1.5, 2.0, -1e4, max_terms=20)


@pytest.mark.parametrize("length", [0, 2, -3, 10])
def test_dft_plan_needs_odd_positive_length(length):
    with pytest.raises(ValidationError):
        DftPlan(length)


def test_dft_matches_brute_force():
    rng = np.random.default_rng(3)
    c = rng.standard_normal(5)
    plan = DftPlan(11)
    n = np.arange(11)
    padded = np.concatenate([c, np.zeros(6)])
    brute = np.array([np.sum(padded * np.exp(-2j * np.pi * m * n / 11)) for m in n])
    assert np.allclose(dft_odd(c, plan), brute, rtol=0, atol=1e-13)
    assert np.allclose(idft_odd(brute, plan)[:5], c, rtol=0, atol=1e-14)


def test_dft_rejects_overlong_input():
    with pytest.raises(ValidationError):
        dft_odd(np.ones(8), DftPlan(7))


def test_idft_detects_asymmetric_spectrum():
    plan = DftPlan(7)
    spec = np.zeros(7, dtype=complex)
    spec[1] = 1.0
    with pytest.raises(SymmetryError):
        idft_odd(spec, plan)
    with pytest.raises(ValidationError):
        idft_odd(np.zeros(5), plan)
