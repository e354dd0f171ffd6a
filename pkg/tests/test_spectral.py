import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from hypercross.counting import Kind
from hypercross.errors import (DomainError, InvalidParameterError, SupportViolationError,
                               UndefinedRatioError)
from hypercross.spectral import (JacobiParams, SparseCoefficients, applicable_bounds,
                                 bernstein_check, boundary_witness, gauss_jacobi,
                                 gram_deviation, interior_witness, jackson_check, jacobi_eval,
                                 korobov_norm, l2_norm, lambda_a, nonperiodic_project_demo,
                                 project, random_sparse, tridiagonal_eigenvalues)


def unit(idx, kind=Kind.SYMMETRIC):
    return SparseCoefficients(len(idx), {tuple(idx): 1.0}, kind)


def scipy_orthonormal(k, al, be, x):
    if k == 0:
        h = 2 ** (al + be + 1) * special.beta(al + 1, be + 1)
        return np.full_like(x, 1 / math.sqrt(h))
    h = (2 ** (al + be + 1) / (2 * k + al + be + 1)
         * math.exp(math.lgamma(k + al + 1) + math.lgamma(k + be + 1)
                    - math.lgamma(k + al + be + 1) - math.lgamma(k + 1)))
    return special.eval_jacobi(k, al, be, x) / math.sqrt(h)


def test_norm_examples():
    assert korobov_norm(unit((0, 0, 0)), 2, 1.5) == pytest.approx(1.5 ** 6)
    assert korobov_norm(unit((2,)), 2, 1) == 9
    c = SparseCoefficients(2, {(1, -2): 1 + 1j, (0, 3): -2})
    assert korobov_norm(c.scaled(-3j), 1, 1) == pytest.approx(3 * korobov_norm(c, 1, 1))


def test_project_examples():
    c = SparseCoefficients(1, {(k,): 1.0 for k in range(-3, 4)})
    assert sorted(project(c, 2, 1).entries) == [(-1,), (0,), (1,)]
    c2 = SparseCoefficients(2, {(1, 4): 1.0})  # product exactly 10
    assert len(project(c2, 10, 1)) == 1


def test_jackson_examples():
    assert jackson_check(unit((2,)), 2, 2, 1) == pytest.approx(4 / 9)
    assert jackson_check(unit((1,)), 2, 2, 1) == 0.0
    T = 10.0
    w = boundary_witness(2, T, 1.0)
    lam = lambda_a(w, 1.0)
    assert lam == 11.0
    assert jackson_check(unit(w), T, 1, 1.0) == pytest.approx(T / lam)


def test_bernstein_examples():
    assert bernstein_check(unit((0, 0)), 5, 1, 2) == pytest.approx(4 / 5)
    w = interior_witness(2, 10, 1.0)
    assert lambda_a(w, 1.0) == 10.0
    assert bernstein_check(unit(w), 10, 1, 1.0) == pytest.approx(1.0)
    mixed = SparseCoefficients(1, {(0,): 1.0, (2,): 1.0})
    assert bernstein_check(mixed, 3, 1, 1) == pytest.approx(math.sqrt(10 / 2) / 3)


def test_errors():
    with pytest.raises(UndefinedRatioError):
        jackson_check(SparseCoefficients(1, {(0,): 0.0}), 2, 1, 1)
    with pytest.raises(SupportViolationError):
        bernstein_check(unit((5,)), 2, 1, 1)
    with pytest.raises(DomainError):
        jackson_check(unit((1,)), 0.5, 1, 1)
    with pytest.raises(InvalidParameterError):
        SparseCoefficients(2, {(1,): 1.0})
    with pytest.raises(InvalidParameterError):
        SparseCoefficients(1, {(-1,): 1.0}, Kind.CORNER)
    with pytest.raises(InvalidParameterError):
        JacobiParams(-1, 0)
    with pytest.raises(DomainError):
        jacobi_eval(2, JacobiParams(0, 0), 1.5)


def test_json_round_trip():
    c = random_sparse(3, 10, seed=7)
    back = SparseCoefficients.from_json(c.to_json())
    assert back == c
    recs = c.to_records()
    assert set(recs[0]) == {"index", "re", "im"}


def test_random_sparse_is_reproducible():
    assert random_sparse(2, 8, seed=3) == random_sparse(2, 8, seed=3)
    assert all(min(k) >= 0 for k in random_sparse(2, 8, seed=3, kind=Kind.CORNER).entries)


coeffs = st.dictionaries(st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
                         st.complex_numbers(max_magnitude=10, allow_nan=False,
                                            allow_infinity=False), min_size=1, max_size=15)


@given(c=coeffs, T=st.floats(1, 60), a=st.floats(0.3, 3))
def test_projection_orthogonality_and_idempotence(c, T, a):
    c = SparseCoefficients(2, c)
    p = project(c, T, a)
    rest = SparseCoefficients(2, {k: v for k, v in c.entries.items() if k not in p.entries})
    assert l2_norm(c) ** 2 == pytest.approx(l2_norm(p) ** 2 + l2_norm(rest) ** 2, abs=1e-9)
    assert project(p, T, a) == p


@given(c=coeffs)
def test_parseval_weight_one(c):
    c = SparseCoefficients(2, c)
    assert korobov_norm(c, 0.0, 1.0) == pytest.approx(l2_norm(c))


@given(c=coeffs, T=st.floats(1, 60), r=st.floats(0.25, 3), a=st.floats(0.3, 3))
def test_jackson_and_bernstein_at_most_one(c, T, r, a):
    c = SparseCoefficients(2, c)
    if korobov_norm(c, r, a) > 0:
        assert jackson_check(c, T, r, a) <= 1 + 1e-12
    p = project(c, T, a)
    if l2_norm(p) > 0:
        assert bernstein_check(p, T, r, a) <= 1 + 1e-12


@given(s=st.integers(1, 3), T=st.floats(1, 40), a=st.floats(0.5, 2), r=st.floats(0.5, 2))
def test_worst_case_sharpness(s, T, a, r):
    w = boundary_witness(s, T, a)
    t_next = lambda_a(w, a)
    assert t_next > T
    assert jackson_check(unit(w), T, r, a) >= (T / t_next) ** r * (1 - 1e-12)


def test_jacobi_low_degree():
    jp = JacobiParams(0, 0)
    x = np.linspace(-1, 1, 7)
    assert np.allclose(jacobi_eval(0, jp, x), 1 / math.sqrt(2))
    assert np.allclose(jacobi_eval(1, jp, x), math.sqrt(1.5) * x)
    assert np.allclose(jacobi_eval(5, jp, -x), -jacobi_eval(5, jp, x))


@pytest.mark.parametrize("al,be", [(0, 0), (-0.5, -0.5), (1, 2), (2.5, -0.3)])
def test_jacobi_against_scipy(al, be):
    jp = JacobiParams(al, be)
    x = np.linspace(-0.99, 0.99, 41)
    for k in (0, 1, 2, 7, 50, 120, 200):
        ref = scipy_orthonormal(k, al, be, x)
        got = jacobi_eval(k, jp, x)
        scale = np.max(np.abs(ref))
        assert np.max(np.abs(got - ref)) <= 1e-11 * scale


def test_gauss_jacobi_examples():
    x, w = gauss_jacobi(1, JacobiParams(0, 0))
    assert x[0] == pytest.approx(0, abs=1e-15) and w[0] == pytest.approx(2)
    x, w = gauss_jacobi(2, JacobiParams(0, 0))
    assert np.allclose(x, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-12, rtol=0)
    assert np.allclose(w, [1, 1], atol=1e-12)
    assert gram_deviation(9, JacobiParams(0, 0), 10) <= 1e-10


@pytest.mark.parametrize("al,be", [(0, 0), (-0.5, -0.5), (1, 2)])
def test_gauss_jacobi_against_scipy(al, be):
    jp = JacobiParams(al, be)
    for n in (3, 17, 60):
        x, w = gauss_jacobi(n, jp)
        xs, ws = special.roots_jacobi(n, al, be)
        assert np.allclose(x, xs, atol=1e-12, rtol=0)
        assert np.allclose(w, ws, rtol=1e-10)
        assert np.all((x > -1) & (x < 1)) and np.all(w > 0)
        assert w.sum() == pytest.approx(math.exp(jp.log_mass))
    assert gram_deviation(50, jp, 60) <= 1e-10


@pytest.mark.parametrize("n", [1, 4, 9])
def test_gauss_jacobi_exactness(n):
    jp = JacobiParams(0.5, 1.5)
    x, w = gauss_jacobi(n, jp)
    xr, wr = special.roots_jacobi(40, jp.alpha, jp.beta)  # exact to degree 79
    for deg in range(2 * n):
        assert np.sum(w * x ** deg) == pytest.approx(np.sum(wr * xr ** deg), abs=1e-12)


def test_tridiagonal_solver():
    rng = np.random.default_rng(0)
    d, e = rng.standard_normal(30), rng.standard_normal(29)
    A = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    assert np.allclose(tridiagonal_eigenvalues(d, e), np.linalg.eigvalsh(A), atol=1e-12)


def test_nonperiodic_demo():
    d = nonperiodic_project_demo(JacobiParams(1, 1), 1.0, 5.0, s=2)
    assert d.jackson_ratio <= 1
    assert d.quadrature_error == pytest.approx(d.error, rel=1e-9)
    inside = nonperiodic_project_demo(JacobiParams(0, 0), 1.0, 4.0, s=1,
                                      coeff=lambda k: 1.0 if lambda_a(k, 0.5) <= 4 else 0.0)
    assert inside.error == 0.0
    legendre = applicable_bounds(JacobiParams(0, 0).a)
    assert legendre["jackson_bernstein(a>0)"] and not legendre["sharp_widths(a>1/2)"]
    with pytest.raises(DomainError):
        nonperiodic_project_demo(JacobiParams(-0.9, -0.9), 1.0, 2.0)
