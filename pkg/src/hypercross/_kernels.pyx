# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels (see ``_kernels_py`` for the reference twin).

Products are accumulated left to right from 1.0 exactly as the Python twin
does, so both paths return identical counts.
"""

from libc.math cimport floor
import numpy as np

cdef unsigned long long _OVF = 0xFFFFFFFFFFFFFFFFULL
cdef unsigned long long _LIM = 0x4000000000000000ULL


cdef inline bint _fits(double x, double T, bint strict) nogil:
    if strict:
        return x < T
    return x <= T


cdef inline double _floor_tail(double P, double a, int rem) nogil:
    cdef int i
    for i in range(rem):
        P *= a
    return P


cdef long long _last_count(double P, double T, double a, bint strict) nogil:
    cdef double q = T / P - a
    cdef long long k
    if q != q or q < -1.0:
        k = -1
    elif q > 4.0e18:
        return -2  # signals overflow to the caller
    else:
        k = <long long> floor(q)
    while _fits(P * (<double> (k + 1) + a), T, strict):
        k += 1
    while k >= 0 and not _fits(P * (<double> k + a), T, strict):
        k -= 1
    return k + 1


cdef unsigned long long _count(int level, double P, double T, double a,
                               bint symmetric, bint strict) nogil:
    cdef int rem = level - 1
    cdef long long n
    cdef unsigned long long total = 0, sub
    cdef long long k = 0
    cdef double Q
    if rem == 0:
        n = _last_count(P, T, a, strict)
        if n < 0:
            return _OVF
        if symmetric:
            return <unsigned long long> (2 * n - 1) if n else 0
        return <unsigned long long> n
    while True:
        Q = P * (<double> k + a)
        if not _fits(_floor_tail(Q, a, rem), T, strict):
            break
        sub = _count(rem, Q, T, a, symmetric, strict)
        if sub == _OVF:
            return _OVF
        if symmetric and k:
            sub *= 2
        if sub > _LIM or total > _LIM - sub:
            return _OVF
        total += sub
        k += 1
    return total


def count_cross(int s, double T, double a, bint symmetric=False,
                bint strict=False):
    cdef unsigned long long res
    with nogil:
        res = _count(s, 1.0, T, a, symmetric, strict)
    if res == _OVF:
        raise OverflowError("cross cardinality exceeds 64-bit range")
    return int(res)


cdef Py_ssize_t _fill(int level, double P, double T, double a,
                      bint symmetric, bint strict, long long mult,
                      double[::1] prods, long long[::1] mults,
                      Py_ssize_t pos) nogil:
    cdef int rem = level - 1
    cdef long long k = 0
    cdef long long m
    cdef double Q
    while True:
        Q = P * (<double> k + a)
        if not _fits(_floor_tail(Q, a, rem), T, strict):
            return pos
        m = 2 * mult if (symmetric and k) else mult
        if rem == 0:
            prods[pos] = Q
            mults[pos] = m
            pos += 1
        else:
            pos = _fill(rem, Q, T, a, symmetric, strict, m, prods, mults, pos)
        k += 1


def cross_products(int s, double T, double a, bint symmetric=False,
                   bint strict=False):
    cdef Py_ssize_t n = count_cross(s, T, a, False, strict)
    prods = np.empty(n, dtype=np.float64)
    mults = np.empty(n, dtype=np.int64)
    cdef double[::1] pv = prods
    cdef long long[::1] mv = mults
    cdef Py_ssize_t got
    with nogil:
        got = _fill(s, 1.0, T, a, symmetric, strict, 1, pv, mv, 0)
    assert got == n
    return prods, mults
