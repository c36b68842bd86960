import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riesz_stencil.errors import ValidationError
from riesz_stencil.filters import (
    FilterSpec,
    build_filter,
    build_filter_direct,
    cosine_moment_matrix,
    fractional_power_series_dft,
    fractional_power_series_miller,
    sinc_maclaurin,
    vandermonde_inverse_bjorck,
    vandermonde_inverse_specialized,
)
from riesz_stencil.special import DftPlan

alphas = st.floats(0.05, 2.0)
orders = st.sampled_from(range(2, 17, 2))

# Exact filters from a symbolic series solve in rational arithmetic.
EXACT = {
    (1.0, 6): (1067 / 960, -29 / 480, 3 / 640),
    (1.0, 8): (30251 / 26880, -7621 / 107520, 159 / 17920, -5 / 7168),
    (0.5, 6): (4049 / 3840, -169 / 5760, 49 / 23040),
    (0.5, 8): (2052481 / 1935360, -87497 / 2580480, 5101 / 1290240, -2357 / 7741440),
    (1.5, 6): (1499 / 1280, -179 / 1920, 59 / 7680),
    (1.5, 8): (2312483 / 1935360, -286571 / 2580480, 19111 / 1290240, -9199 / 7741440),
}


@pytest.mark.parametrize("key", sorted(EXACT))
def test_filter_matches_exact_rationals(key):
    g = build_filter(FilterSpec(*key)).coeffs
    assert np.allclose(g, EXACT[key], rtol=1e-13, atol=0)


def test_order_two_filter_is_identity():
    assert build_filter(FilterSpec(0.7, 2)).coeffs.tolist() == [1.0]


@pytest.mark.parametrize(
    "alpha,order",
    [(1.0, 5), (1.0, 0), (1.0, 3.5), (0.0, 4), (-0.5, 4), (2.5, 4), (float("nan"), 4)],
)
def test_spec_validation(alpha, order):
    with pytest.raises(ValidationError):
        FilterSpec(alpha, order)


def test_half_width():
    assert [FilterSpec(1.0, n).half_width for n in (2, 4, 10, 16)] == [0, 1, 4, 7]


def test_sinc_series_matches_mpmath():
    a = sinc_maclaurin(8).coeffs
    ref = mpmath.taylor(lambda x: mpmath.sinc(x / 2), 0, 14)[::2]
    assert np.allclose(a, [float(r) for r in ref], rtol=1e-15, atol=0)


@pytest.mark.parametrize("alpha", [-1.3, -0.4, 0.5, 1.7])
def test_miller_matches_mpmath_taylor(alpha):
    c = fractional_power_series_miller(sinc_maclaurin(9), alpha).coeffs
    with mpmath.workdps(40):
        ref = mpmath.taylor(lambda x: mpmath.sinc(x / 2) ** alpha, 0, 16)[::2]
    for n, (got, want) in enumerate(zip(c, ref)):
        assert abs(got - float(want)) <= 1e-14 * max(abs(float(want)), (2 * math.pi) ** (-2 * n))


@settings(max_examples=40, deadline=None)
@given(alphas, orders)
def test_dft_power_matches_miller(alpha, order):
    p = sinc_maclaurin(FilterSpec(alpha, order))
    d = fractional_power_series_dft(p, -alpha).coeffs
    m = fractional_power_series_miller(p, -alpha).coeffs
    n = np.arange(d.size)
    scale = np.maximum(np.abs(m), (2 * np.pi) ** (-2.0 * n))
    assert np.all(np.abs(d - m) <= 1e-11 * scale)


def test_minimal_transform_aliases_and_padding_fixes_it():
    p = sinc_maclaurin(4)
    exact = fractional_power_series_miller(p, -1.0).coeffs
    tight = fractional_power_series_dft(p, -1.0, DftPlan(7)).coeffs
    padded = fractional_power_series_dft(p, -1.0).coeffs
    assert np.max(np.abs(tight - exact)) > 1e-4
    assert np.max(np.abs(padded - exact)) < 1e-15
    with pytest.raises(ValidationError):
        fractional_power_series_dft(p, -1.0, DftPlan(5))


def test_power_series_requires_unit_constant():
    with pytest.raises(ValidationError):
        fractional_power_series_miller([2.0, 1.0], 0.5)
    with pytest.raises(ValidationError):
        fractional_power_series_dft([0.5, 1.0], 0.5)


@pytest.mark.parametrize("nh", range(0, 9))
def test_specialized_inverse_against_dense_inverse(nh):
    inv = vandermonde_inverse_specialized(nh).matrix()
    dense = np.linalg.inv(cosine_moment_matrix(nh))
    assert np.allclose(inv, dense, rtol=1e-9, atol=1e-12 * np.max(np.abs(dense)))


@pytest.mark.parametrize("nodes", [[0.0, 1.0], [-1.0, 0.0, 1.0], [-2, -1, 0, 1, 2], [0.1, 0.7, 1.3, 2.9, 3.0]])
def test_bjorck_inverse(nodes):
    x = np.asarray(nodes, dtype=float)
    v = np.vander(x, increasing=True)
    assert np.allclose(vandermonde_inverse_bjorck(x) @ v, np.eye(x.size), atol=1e-10)


def test_bjorck_rejects_repeated_nodes():
    with pytest.raises(ValidationError):
        vandermonde_inverse_bjorck([0.0, 1.0, 1.0])


@settings(max_examples=40, deadline=None)
@given(alphas, orders)
def test_routes_agree_and_gain_is_one(alpha, order):
    spec = FilterSpec(alpha, order)
    g = build_filter(spec)
    d = build_filter_direct(spec)
    assert np.allclose(g.coeffs, d.coeffs, rtol=0, atol=1e-12)
    assert g.dc_gain() == pytest.approx(1.0, abs=1e-13)


def test_filter_arrays_are_read_only():
    g = build_filter(FilterSpec(1.0, 6))
    with pytest.raises(ValueError):
        g.coeffs[0] = 0.0
    assert g.mirrored().tolist() == [*g.coeffs[:0:-1], *g.coeffs]
