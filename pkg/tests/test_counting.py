import itertools
import math

import pytest
from hypothesis import assume, given, strategies as st

from hypercross import _kernels_py
from hypercross._backend import compiled
from hypercross.counting import (CrossParams, Kind, cardinality, count_1d, count_bruteforce,
                                 count_by_support_decomposition, count_recursive,
                                 enumerate_cross)
from hypercross.errors import EnumerationOverflowError, InvalidParameterError, RangeError


def naive(s, T, a, kind="corner", strict=False):
    """Independent oracle: depth-first scan, pruned by the minimal tail product."""
    def fits(p):
        return p < T if strict else p <= T

    def walk(prefix, depth):
        if depth == s:
            p = 1.0
            for kj in prefix:
                p *= abs(kj) + a
            return int(fits(p))
        n, k = 0, 0
        while True:
            p = 1.0
            for kj in prefix:
                p *= abs(kj) + a
            p *= k + a
            if p * a ** (s - depth - 1) > T * (1 + 1e-9):
                return n
            m = walk(prefix + (k,), depth + 1)
            n += m if (k == 0 or kind == "corner") else 2 * m
            k += 1

    return walk((), 0)


@pytest.mark.parametrize("s,T,a,kind,want", [
    (2, 10, 1, "corner", 27),
    (2, 10, 1, "symmetric", 69),
    (2, 10, 2, "corner", 8),
    (1, 5, 1, "corner", 5),
    (1, 0.5, 1, "corner", 0),
    (3, 1, 1, "symmetric", 1),
])
def test_spot_values(s, T, a, kind, want):
    assert naive(s, T, a, kind) == want
    p = CrossParams(s, T, a, kind)
    assert cardinality(s, T, a, kind) == want
    assert count_bruteforce(p).exact == want
    assert count_by_support_decomposition(p).exact == want


def test_boundary_point_is_included():
    # (1+1)(4+1) = 10 exactly
    assert (1, 4) in set(enumerate_cross(CrossParams(2, 10, 1)))
    assert cardinality(2, 10, 1, strict=True) == 27 - 4  # 1*10, 2*5, 5*2, 10*1


def test_count_1d():
    assert count_1d(5.5, 1.0) == 5
    assert count_1d(0.9, 1.0) == 0
    assert count_1d(3.0, 0.5) == 3


def test_enumeration_is_lexicographic_and_unique():
    pts = list(enumerate_cross(CrossParams(3, 20, 1, "symmetric")))
    assert pts == sorted(pts)
    assert len(pts) == len(set(pts)) == naive(3, 20, 1, "symmetric")


def test_enumeration_cap():
    with pytest.raises(EnumerationOverflowError) as info:
        count_bruteforce(CrossParams(2, 100, 1), cap=10)
    assert info.value.cap == 10


@pytest.mark.parametrize("bad", [dict(s=0, T=1, a=1), dict(s=2, T=-1, a=1),
                                 dict(s=2, T=1, a=0), dict(s=1.5, T=1, a=1),
                                 dict(s=2, T=math.nan, a=1)])
def test_invalid_params(bad):
    with pytest.raises(InvalidParameterError):
        CrossParams(**bad)


def test_range_guard():
    with pytest.raises(RangeError):
        cardinality(2, 1e301, 1.0)


small = dict(s=st.integers(1, 3), T=st.floats(0.1, 60), a=st.floats(0.3, 3.0),
             kind=st.sampled_from(["corner", "symmetric"]))


@given(**small)
def test_methods_agree(s, T, a, kind):
    p = CrossParams(s, T, a, kind)
    n = count_recursive(p).exact
    assert n == count_bruteforce(p).exact == count_by_support_decomposition(p).exact
    assert n == naive(s, T, a, kind)


@given(**small, f=st.floats(1.0, 3.0))
def test_monotone_in_T(s, T, a, kind, f):
    assert cardinality(s, T, a, kind) <= cardinality(s, T * f, a, kind)


@given(**small, d=st.floats(0.0, 1.0))
def test_antitone_in_a(s, T, a, kind, d):
    assert cardinality(s, T, a + d, kind) <= cardinality(s, T, a, kind)


@given(s=st.integers(1, 3), T=st.floats(0.1, 60), a=st.floats(0.3, 3.0))
def test_symmetric_dominates_corner(s, T, a):
    c, m = cardinality(s, T, a), cardinality(s, T, a, "symmetric")
    assert c <= m <= 2 ** s * c


@given(s=st.integers(1, 3), T=st.floats(0.1, 60), a=st.floats(0.3, 3.0))
def test_empty_iff_below_corner(s, T, a):
    assume(abs(T - a ** s) > 1e-9)
    assert (cardinality(s, T, a) == 0) == (T < a ** s)


@pytest.mark.skipif(compiled is None, reason="compiled kernels not built")
@given(**small, strict=st.booleans())
def test_backends_agree(s, T, a, kind, strict):
    sym = kind == "symmetric"
    assert (compiled.count_cross(s, T, a, sym, strict)
            == _kernels_py.count_cross(s, T, a, sym, strict))
    pc, mc = compiled.cross_products(s, T, a, sym, strict)
    pp, mp = _kernels_py.cross_products(s, T, a, sym, strict)
    assert sorted(zip(pc.tolist(), mc.tolist())) == sorted(zip(pp.tolist(), mp.tolist()))


def test_products_match_enumeration():
    prods, mult = _kernels_py.cross_products(2, 12.0, 1.0, True, False)
    assert int(mult.sum()) == cardinality(2, 12.0, 1.0, "symmetric")
    assert prods.max() <= 12.0


def test_env_switch_selects_python_backend():
    import os
    import subprocess
    import sys
    env = dict(os.environ, HYPERCROSS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c",
                          "import hypercross as h; print(h.BACKEND, h.cardinality(2, 10, 1))"],
                         capture_output=True, text=True, env=env, check=True).stdout.split()
    assert out == ["python", "27"]
