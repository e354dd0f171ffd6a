import math

import pytest
from hypothesis import assume, given, strategies as st

from hypercross.bounds import (check_t_star, corner_upper_asymptotic, exponential_upper,
                               find_t_star, inverse_bounds, inverse_threshold,
                               shift_sandwich, symmetric_sandwich, upper_bound_delta,
                               verify_exponential_upper, verify_inverse_bounds,
                               verify_upper_bound_delta, volume_sandwich)
from hypercross.counting import Kind, cardinality
from hypercross.errors import DomainError, InvalidParameterError
from hypercross.volume import volume


def test_count_volume_shift_spot():
    # |Gamma(2,10,2)| = 8 < I(2,10,1) = 14.03 < |Gamma(2,10,1)| = 27
    r = shift_sandwich(2, 10, 1)
    assert (r.lower_expr.value, r.upper_expr.value) == (8, 27)
    assert r.middle_expr.value == pytest.approx(10 * (math.log(10) - 1) + 1)
    assert r.holds and not r.vacuous


def test_vacuous_when_volume_is_zero():
    r = shift_sandwich(2, 0.5, 1)
    assert r.vacuous and r.holds


def test_symmetric_sandwich_spot():
    r = symmetric_sandwich(2, 10, 1)
    assert r.middle_expr.value == 69
    assert r.lower_expr.value < 69 < r.upper_expr.value


def test_domains():
    with pytest.raises(DomainError):
        symmetric_sandwich(2, 10, 0.5)
    with pytest.raises(DomainError):
        upper_bound_delta(2, 10, 1, 1.0)
    with pytest.raises(DomainError):
        upper_bound_delta(2, 10, 2, 1.5)
    with pytest.raises(DomainError):
        find_t_star(2, 0.5, 100)
    with pytest.raises(InvalidParameterError):
        find_t_star(2, 1, 100, predicate="other")
    with pytest.raises(DomainError):
        inverse_bounds(1, 2, 1, 10)


def test_delta_bound_formulas():
    b = upper_bound_delta(2, 10, 1.5, 0.5)
    v = volume(2, 10, 1.0).value
    assert b.corner == pytest.approx(4 * v)
    assert b.symmetric == pytest.approx(16 * v)
    e = exponential_upper(2, 10, 2.0, 1.0)
    assert e.corner == pytest.approx(100.0)
    assert e.symmetric == pytest.approx(2 * 1000.0)


grid = dict(s=st.integers(1, 4), T=st.floats(0.3, 300), a=st.floats(0.5, 3.0))


@given(**grid)
def test_count_volume_shift_property(s, T, a):
    assert shift_sandwich(s, T, a).holds
    assert volume_sandwich(s, T, a).holds


@given(s=st.integers(1, 4), T=st.floats(1.0, 300), a=st.floats(0.55, 3.0))
def test_symmetric_property(s, T, a):
    assert symmetric_sandwich(s, T, a).holds


@given(**grid, d=st.sampled_from([0.5, 0.75, 1.0]), kind=st.sampled_from(list(Kind)))
def test_one_sided_bounds_property(s, T, a, d, kind):
    assume(a > d and T >= d ** s)
    assert verify_upper_bound_delta(s, T, a, d, kind).holds
    assert verify_exponential_upper(s, T, a, d, kind).holds


def test_t_star_witness_two_dims():
    res = find_t_star(2, 1.0, 1e4, ratio=1.05 ** (1 / 16))
    assert res.found
    ok, bad = check_t_star(res, samples=200)
    assert ok, bad[:3]
    b = corner_upper_asymptotic(2, 2 * res.t_star, 1.0, res.t_star)
    assert b.valid and cardinality(2, 2 * res.t_star, 1.0) <= b.value


def test_t_star_absent_in_one_dim():
    # floor(T - a) + 1 <= T - a + 1/2 fails whenever frac(T - a) < 1/2
    res = find_t_star(1, 1.0, 1e4)
    ok, _ = check_t_star(res) if res.found else (False, [])
    assert not ok


def test_coarse_grid_can_miss_violations():
    coarse = find_t_star(2, 1.5, 1e3)
    ok, bad = check_t_star(coarse, samples=400)
    fine = find_t_star(2, 1.5, 1e3, ratio=1.05 ** (1 / 16))
    assert fine.t_star >= coarse.t_star
    assert ok or min(bad) < fine.t_star


def test_asymptotic_bound_flags():
    assert not corner_upper_asymptotic(2, 100, 1).valid
    assert corner_upper_asymptotic(2, 100, 1, t_star=50).valid
    assert math.isnan(corner_upper_asymptotic(2, 0.2, 1).value)


def test_inverse_thresholds():
    assert inverse_threshold(2, 1.5, 1.0, Kind.SYMMETRIC) == pytest.approx(4 * math.e ** 2)
    assert inverse_threshold(2, 2.0, 1.0, Kind.CORNER) == pytest.approx(4 * math.e ** 2)
    assert inverse_threshold(2, 2.0, 0.5, Kind.CORNER) is None
    assert inverse_threshold(2, 2.0, 0.5, Kind.CORNER, t_star=100.0) == 100.0
    assert not verify_inverse_bounds(2, 1e-3, 2.0).applicable


@given(s=st.integers(2, 4), T=st.floats(1.0, 1e4), a=st.floats(1.05, 3.0),
       kind=st.sampled_from(list(Kind)))
def test_inverse_bracket_property(s, T, a, kind):
    rep = verify_inverse_bounds(s, T, a, 1.0, kind)
    assert rep.holds
    if rep.applicable:
        assert rep.bounds.lower < 1 / T < rep.bounds.upper


def test_integer_edge_is_an_equality_in_one_dim():
    # |Gamma(1,5,2)| = 4 = I(1,5,1): the left inequality is tight, not strict
    r = shift_sandwich(1, 5.0, 1.0)
    assert r.lower_expr.value == 4 and r.middle_expr.value == pytest.approx(4.0, rel=1e-15)
    assert shift_sandwich(1, 5.1, 1.0).lower_expr.value < shift_sandwich(1, 5.1, 1.0).middle_expr.value
