import math

import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from hypercross.errors import DomainError, InvalidParameterError, PrecisionError
from hypercross.volume import (log_excess, volume, volume_bounds, volume_closed_polynomial,
                               volume_quadrature_oracle)


def scipy_volume(s, T, a):
    """Region volume by nested scipy quadrature over the bounding coordinates."""
    if s == 1:
        return max(T - a, 0.0)
    if s == 2:
        return integrate.quad(lambda x: max(T / (x + a) - a, 0.0), 0, max(T / a - a, 0),
                              epsabs=0, epsrel=1e-12, limit=200)[0]
    return integrate.quad(lambda x: scipy_volume(s - 1, T / (x + a), a),
                          0, max(T / a ** (s - 1) - a, 0), epsabs=0, epsrel=1e-11, limit=200)[0]


def test_unit_value():
    assert volume(2, math.e, 1.0).value == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("s,T,a", [(1, 7.5, 0.5), (2, 10, 1), (2, 50, 0.75), (3, 20, 1),
                                   (3, 100, 1.5), (2, 4.01, 2)])
def test_against_scipy(s, T, a):
    assert volume(s, T, a).value == pytest.approx(scipy_volume(s, T, a), rel=1e-8)


@pytest.mark.parametrize("s,T,a", [(2, 10, 1), (3, 20, 1), (4, 200, 0.5), (5, 300, 1.5)])
def test_against_quadrature_oracle(s, T, a):
    assert volume(s, T, a).value == pytest.approx(
        volume_quadrature_oracle(s, T, a, tol=1e-7).value, rel=1e-6)


@pytest.mark.parametrize("s,T,a", [(2, 10, 1), (3, 20, 1), (6, 1e4, 2)])
def test_closed_polynomial(s, T, a):
    assert volume_closed_polynomial(s, T, a).value == pytest.approx(volume(s, T, a).value,
                                                                     rel=1e-10)


def test_closed_polynomial_limits():
    with pytest.raises(PrecisionError):
        volume_closed_polynomial(30, 1e10, 1)
    with pytest.raises(DomainError):
        volume_closed_polynomial(2, 0.5, 1)


def test_empty_region():
    v = volume(3, 0.9, 1.0)
    assert v.value == 0.0 and v.log_value == -math.inf


def test_log_excess_near_boundary():
    T = 8.0 * (1 + 1e-13)
    assert log_excess(3, T, 2.0) == pytest.approx(math.log1p(1e-13), rel=1e-2)
    assert log_excess(400, 1.0, 10.0) == pytest.approx(-400 * math.log(10.0))


def test_huge_dimension_in_log_space():
    v = volume(300, 1e200, 1.5)
    assert math.isfinite(v.log_value)
    b = volume_bounds(300, 1e200, 1.5)
    assert b.log_lower < v.log_value < b.log_upper


def test_invalid():
    with pytest.raises(InvalidParameterError):
        volume(0, 2, 1)
    with pytest.raises(InvalidParameterError):
        volume_quadrature_oracle(6, 10, 1)


vol_params = dict(s=st.integers(1, 8), T=st.floats(1.0, 1e6), a=st.floats(0.2, 3))


@given(**vol_params)
def test_bracket(s, T, a):
    v = volume(s, T, a)
    if v.value == 0:
        return
    b = volume_bounds(s, T, a)
    assert b.log_lower < v.log_value < b.log_upper


@given(**vol_params, f=st.floats(1.0, 5.0))
def test_monotone(s, T, a, f):
    assert volume(s, T, a).log_value <= volume(s, T * f, a).log_value
    assert volume(s, T, a * f).log_value <= volume(s, T, a).log_value


@given(s=st.integers(1, 3), T=st.floats(1.0, 200), a=st.floats(0.5, 2))
def test_matches_scipy_property(s, T, a):
    ref = scipy_volume(s, T, a)
    if ref < 1e-8:
        return
    assert volume(s, T, a).value == pytest.approx(ref, rel=1e-7)
