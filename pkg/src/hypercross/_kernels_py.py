"""Pure-Python counting kernels.

Reference twin of ``_kernels.pyx``; selected when the compiled module is not
available or ``HYPERCROSS_PURE_PYTHON=1`` is set. Both must return identical
results for identical inputs.

Membership is always decided on the product ``(k_1+a)(k_2+a)...(k_s+a)``
accumulated left to right from 1.0 in binary floating point, so the counts
agree bit-for-bit with a brute-force enumeration that forms the same product.
"""

import math

import numpy as np


def _fits(x, T, strict):
    return x < T if strict else x <= T


def _floor_tail(P, a, rem):
    # smallest leaf product reachable from prefix product P: pad with zeros
    for _ in range(rem):
        P *= a
    return P


def last_count(P, T, a, strict):
    """Number of k >= 0 with ``P*(k+a)`` inside the threshold."""
    q = T / P - a
    if q != q or q < -1.0:
        k = -1
    elif q > 9.0e15:
        k = int(q)
    else:
        k = int(math.floor(q))
    while _fits(P * ((k + 1) + a), T, strict):
        k += 1
    while k >= 0 and not _fits(P * (k + a), T, strict):
        k -= 1
    return k + 1


def _count(level, P, T, a, symmetric, strict):
    rem = level - 1
    if rem == 0:
        n = last_count(P, T, a, strict)
        if symmetric:
            return 2 * n - 1 if n else 0
        return n
    total = 0
    k = 0
    while True:
        Q = P * (k + a)
        if not _fits(_floor_tail(Q, a, rem), T, strict):
            break
        sub = _count(rem, Q, T, a, symmetric, strict)
        total += 2 * sub if (symmetric and k) else sub
        k += 1
    return total


def count_cross(s, T, a, symmetric=False, strict=False):
    """Cardinality of the (corner or symmetric) cross, no index materialised."""
    return _count(s, 1.0, T, a, symmetric, strict)


def cross_products(s, T, a, symmetric=False, strict=False):
    """Products of all corner members plus their sign multiplicities.

    Returns ``(products, multiplicity)``; for the corner cross every
    multiplicity is 1, for the symmetric cross it is ``2**nnz(k)``.
    """
    prods = []
    mults = []

    def walk(level, P, mult):
        rem = level - 1
        k = 0
        while True:
            Q = P * (k + a)
            if not _fits(_floor_tail(Q, a, rem), T, strict):
                return
            m = 2 * mult if (symmetric and k) else mult
            if rem == 0:
                prods.append(Q)
                mults.append(m)
            else:
                walk(rem, Q, m)
            k += 1

    walk(s, 1.0, 1)
    return (np.asarray(prods, dtype=np.float64),
            np.asarray(mults, dtype=np.int64))
