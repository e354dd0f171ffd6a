import itertools
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from hypercross.errors import DomainError, EnumerationOverflowError, InvalidParameterError
from hypercross.widths import (SmoothnessParams, TractabilityClass, WidthKind,
                               classify_tractability, dN_bounds_sharp, dN_upper_q, exact_dN,
                               exact_n_eps, jump_ratios, n_eps_bounds_sharp, n_eps_upper_q,
                               normalized_error_transform, normalized_n_eps,
                               small_a_lower_bounds, singular_values, solve_a0,
                               spectrum_thresholds, width_report_eps, width_report_N)

P, NP = WidthKind.PERIODIC, WidthKind.NONPERIODIC


def brute_sigma(r, a, s, kind, box=12):
    """All lambda_a(k)**-r for k in a box, sorted descending."""
    rng = range(-box, box + 1) if kind is P else range(box + 1)
    prods = [math.prod(abs(k) + a for k in idx) for idx in itertools.product(rng, repeat=s)]
    return np.sort(np.array(prods, dtype=float) ** -r)[::-1]


def test_singular_value_spot():
    assert singular_values(SmoothnessParams(1, 1, 1), 4) == pytest.approx([1, .5, .5, 1 / 3])
    assert singular_values(SmoothnessParams(1, 1, 2), 3) == pytest.approx([1, .5, .5])
    assert exact_n_eps(SmoothnessParams(1, 1, 1), 0.4) == 3


@pytest.mark.parametrize("r,a,s,kind", [(1, 1, 2, P), (0.5, 0.75, 2, P), (2, 1.5, 3, NP),
                                        (1, 2, 2, NP)])
def test_widths_against_brute_force(r, a, s, kind):
    sigma = brute_sigma(r, a, s, kind)
    sp = SmoothnessParams(r, a, s, kind)
    # a box of 12 holds every product below 13 * a**(s-1)
    safe = int(np.sum(sigma > (13 * a ** (s - 1)) ** -r))
    for N in range(0, min(safe - 1, 200)):
        assert exact_dN(sp, N) == pytest.approx(sigma[N], rel=1e-12)
    for eps in (0.9, 0.3, 0.123):
        if eps > (13 * a ** (s - 1)) ** -r:
            assert exact_n_eps(sp, eps) == int(np.sum(sigma > eps))


def test_q_bound_examples():
    b = dN_upper_q(SmoothnessParams(1, 2, 1), 4, 2)
    assert b.value == pytest.approx(2 * 0.5 ** (1 / 3))
    assert b.value >= exact_dN(SmoothnessParams(1, 2, 1), 4) == 0.25
    assert n_eps_upper_q(SmoothnessParams(1, 2, 1), 0.4, 2).value == pytest.approx(31.25)


def test_q_bound_domains():
    with pytest.raises(DomainError):
        dN_upper_q(SmoothnessParams(1, 2, 1), 4, 1.5)
    with pytest.raises(DomainError):
        dN_upper_q(SmoothnessParams(1, 1, 1), 4, 2)
    with pytest.raises(DomainError):
        dN_upper_q(SmoothnessParams(1, 1, 1, NP), 4, 1)
    with pytest.raises(DomainError):
        dN_upper_q(SmoothnessParams(1, 2, 1), 0, 2)


def test_printed_nonperiodic_exponent_is_flagged_and_fails():
    # with lambda > 1 the q r s exponent undershoots d_N
    sp = SmoothnessParams(1, 2, 3, NP)
    b = dN_upper_q(sp, 50, 3, printed_exponent=True)
    assert not b.valid
    assert not b.brackets(exact_dN(sp, 50))
    assert dN_upper_q(sp, 50, 3).brackets(exact_dN(sp, 50))


q_params = dict(r=st.sampled_from([0.5, 1.0, 2.0]), a=st.floats(0.6, 3.0),
                s=st.integers(1, 3), kind=st.sampled_from([P, NP]))


@given(**q_params, N=st.integers(1, 3000), q=st.floats(1.0, 8.0))
def test_q_bounds_dominate(r, a, s, kind, N, q):
    sp = SmoothnessParams(r, a, s, kind)
    try:
        b = dN_upper_q(sp, N, q)
    except DomainError:
        return
    assert b.brackets(exact_dN(sp, N))


@given(**q_params, eps=st.floats(0.01, 1.0), q=st.floats(1.0, 8.0))
def test_q_count_bounds_dominate(r, a, s, kind, eps, q):
    sp = SmoothnessParams(r, a, s, kind)
    try:
        b = n_eps_upper_q(sp, eps, q)
    except DomainError:
        return
    assert b.brackets(exact_n_eps(sp, eps))


@given(r=st.sampled_from([0.5, 1.0, 2.0]), a=st.sampled_from([0.75, 1.0, 1.5, 2.0]),
       s=st.integers(1, 3), kind=st.sampled_from([P, NP]), i=st.integers(0, 400))
def test_threshold_sandwich(r, a, s, kind, i):
    sp = SmoothnessParams(r, a, s, kind)
    spec = spectrum_thresholds(sp, 100.0)
    assume(i < len(spec.values))
    T, N = float(spec.values[i]), int(spec.counts[i])
    assert exact_dN(sp, N) <= T ** -r <= exact_dN(sp, N - 1)


@given(a=st.floats(1.0, 4.0), s=st.integers(1, 3), kind=st.sampled_from([P, NP]))
def test_jump_ratio_at_most_two_for_unit_shift(a, s, kind):
    j = jump_ratios(spectrum_thresholds(SmoothnessParams(1, a, s, kind), 4 * a ** s))
    assert len(j) and j.max() <= 2.0


def test_jump_ratio_exceeds_two_below_unit_shift():
    j = jump_ratios(spectrum_thresholds(SmoothnessParams(1, 0.75, 1), 10.0))
    assert j[0] == pytest.approx(1.75 / 0.75)


@pytest.mark.parametrize("kind", [P, NP])
@pytest.mark.parametrize("a", [0.75, 1.5, 2.5])
def test_sharp_bounds_valid_flags_hold(kind, a):
    for s in (2, 3):
        sp = SmoothnessParams(1.0, a, s, kind)
        for N in (1, 5, 40, 300, 3000):
            rep = width_report_N(sp, N)
            assert rep.consistent, rep.violations()
        for eps in (0.5, 0.05, 0.005):
            rep = width_report_eps(sp, eps)
            assert rep.consistent, rep.violations()


def test_sharp_bound_domains():
    with pytest.raises(DomainError):
        dN_bounds_sharp(SmoothnessParams(1, 0.5, 2), 10)
    with pytest.raises(DomainError):
        n_eps_bounds_sharp(SmoothnessParams(1, 2, 1), 0.1)


def test_sharp_periodic_flags_follow_preconditions():
    sp = SmoothnessParams(1, 1.5, 2)
    up, lo = n_eps_bounds_sharp(sp, 0.5)[:2]
    assert up.valid and not lo.valid  # 0.5 < 1 but 0.5 > 2**-2


def test_tractability_classes():
    want = {0.5: TractabilityClass.INTRACTABLE, 1.0: TractabilityClass.WEAK,
            1.2: TractabilityClass.EXPONENTIAL, 2.0: TractabilityClass.EXPONENTIAL}
    for a, cls in want.items():
        assert classify_tractability(a, 1.0, s_max=6).cls is cls
    assert classify_tractability(2.0, 1.0).p_exp_upper == 3.0
    assert classify_tractability(1.5, 2.0).p_exp_upper == pytest.approx(2.5)
    assert classify_tractability(1.5, 1.0, NP).p_exp_upper == 2.0


def test_tractability_evidence():
    v = classify_tractability(0.5, 1.0, s_max=12, cap=10 ** 9)
    assert all(n >= 2 ** (s - 1) for s, n in v.evidence)
    w = [n for _, n in classify_tractability(2.0, 1.0, s_max=12).evidence]
    assert all(x >= y for x, y in zip(w, w[1:]))


def test_a0_and_small_a_bounds():
    a0 = solve_a0(1.0)
    assert a0 * (a0 + 1) ** 2 == pytest.approx(1.0)
    assert a0 == pytest.approx(0.46557, abs=1e-5)
    rb = small_a_lower_bounds(0.3, 1.0, 5)
    assert rb.bound.value == pytest.approx(16) and not rb.asymptotic
    assert small_a_lower_bounds(0.7, 1.0, 20).asymptotic
    with pytest.raises(DomainError):
        small_a_lower_bounds(1.0, 1.0, 3)


@pytest.mark.parametrize("a,s", [(0.2, 3), (0.4, 6), (0.46, 8)])
def test_small_a_binary_bound_holds(a, s):
    sp = SmoothnessParams(1.0, a, s)
    rb = small_a_lower_bounds(a, 1.0, s)
    assert exact_n_eps(sp, 1.0) >= rb.bound.value


def test_normalized_transform():
    sp = SmoothnessParams(1.0, 2.0, 2)
    q = normalized_error_transform(sp, eps=0.4)
    assert q.scale == 4.0 and q.eps_absolute == pytest.approx(0.1)
    assert normalized_n_eps(sp, 0.4) == exact_n_eps(sp, 0.1)
    assert normalized_error_transform(sp, eps=8.0).note
    with pytest.raises(InvalidParameterError):
        normalized_error_transform(sp)


def test_cap():
    sp = SmoothnessParams(1.0, 0.5, 10)
    with pytest.raises(EnumerationOverflowError):
        exact_n_eps(sp, 0.5, cap=1000)
    with pytest.raises(EnumerationOverflowError):
        exact_dN(sp, 5000, cap=1000)


def test_n_eps_at_a_tied_threshold():
    # k = -1 and k = 1 share the product 2, so the strict count drops by two
    sp = SmoothnessParams(1.0, 1.0, 1)
    assert exact_n_eps(sp, 0.5) == 1
    assert exact_n_eps(sp, 0.4) == 3  # off the tie the count sits in [3 - 1, 3]
