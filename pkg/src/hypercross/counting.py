"""Exact enumeration and counting of corner and symmetric hyperbolic crosses.

The corner cross with parameters ``(s, T, a)`` is the set of ``k`` in
``N_0^s`` with ``prod(k_i + a) <= T``; the symmetric cross allows signed
entries and uses ``|k_i|``. Products are formed left to right in binary
floating point, and every counting route in this module agrees with the
enumeration bit for bit except :func:`count_by_support_decomposition`, whose
sub-thresholds ``T * a**(j - s)`` are rounded separately (it matches
everywhere away from exact ties).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator

from . import _backend
from .errors import EnumerationOverflowError, InvalidParameterError, RangeError

T_MAX = 1e300
DEFAULT_ENUM_CAP = 10_000_000


class Kind(str, enum.Enum):
    CORNER = "corner"
    SYMMETRIC = "symmetric"


class CountMethod(str, enum.Enum):
    BRUTEFORCE = "bruteforce"
    RECURSIVE = "recursive"
    DECOMPOSITION = "decomposition"


@dataclass(frozen=True)
class CrossParams:
    """Hyperbolic-cross parameters: dimension, threshold, shift, variant."""

    s: int
    T: float
    a: float
    kind: Kind = Kind.CORNER

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if isinstance(self.s, bool) or int(self.s) != self.s or self.s < 1:
            raise InvalidParameterError(f"s must be a positive integer, got {self.s!r}")
        object.__setattr__(self, "s", int(self.s))
        _check_positive(T=self.T, a=self.a)

    @property
    def symmetric(self) -> bool:
        return self.kind is Kind.SYMMETRIC


@dataclass(frozen=True)
class CountReport:
    exact: int
    params: CrossParams
    method: CountMethod


def _check_positive(**values):
    for name, v in values.items():
        if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v)):
            raise InvalidParameterError(f"{name} must be positive and finite, got {v!r}")


def _check_range(T):
    if T > T_MAX:
        raise RangeError(f"T={T!r} exceeds the supported range (<= {T_MAX:g})")


def count_1d(T: float, a: float) -> int:
    """Return ``#{k >= 0 : k + a <= T}``, i.e. ``floor(T - a) + 1`` when ``T >= a``."""
    _check_positive(T=T, a=a)
    _check_range(T)
    return _backend.pure.last_count(1.0, float(T), float(a), False)


def cardinality(s: int, T: float, a: float, kind: Kind | str = Kind.CORNER,
                strict: bool = False) -> int:
    """Fast exact cardinality; ``strict=True`` counts products ``< T``.

    Uses the compiled kernel when available.
    """
    kind = Kind(kind)
    if s == 0:
        return 1 if (T > 1.0 if strict else T >= 1.0) else 0
    _check_range(T)
    return _backend.count_cross(int(s), float(T), float(a),
                                kind is Kind.SYMMETRIC, bool(strict))


def enumerate_cross(params: CrossParams,
                    cap: int = DEFAULT_ENUM_CAP) -> Iterator[tuple[int, ...]]:
    """Yield every member of the cross once, in lexicographic order.

    A prefix is abandoned as soon as its partial product, padded with the
    minimal factor ``a`` for the remaining coordinates, exceeds ``T``.
    Raises :class:`EnumerationOverflowError` after ``cap`` members.
    """
    s, T, a = params.s, float(params.T), float(params.a)
    _check_range(T)
    symmetric = params.symmetric
    produced = 0

    def kmax(P, rem):
        # largest |k| whose padded product still fits
        k = -1
        while True:
            Q = P * ((k + 1) + a)
            for _ in range(rem):
                Q *= a
            if Q > T:
                return k
            k += 1

    def walk(prefix, P):
        nonlocal produced
        rem = s - len(prefix) - 1
        top = kmax(P, rem)
        if top < 0:
            return
        values = range(-top, top + 1) if symmetric else range(top + 1)
        for k in values:
            Q = P * (abs(k) + a)
            if rem == 0:
                produced += 1
                if produced > cap:
                    raise EnumerationOverflowError(cap, produced - 1)
                yield prefix + (k,)
            else:
                yield from walk(prefix + (k,), Q)

    yield from walk((), 1.0)


# Public alias; shadows the builtin only inside this namespace.
enumerate = enumerate_cross  # noqa: A001


def count_bruteforce(params: CrossParams,
                     cap: int = DEFAULT_ENUM_CAP) -> CountReport:
    """Count by full enumeration, re-checking each member's product.

    This is the reference oracle for the faster routes.
    """
    T, a = float(params.T), float(params.a)
    n = 0
    for k in enumerate_cross(params, cap):
        p = 1.0
        for ki in k:
            p *= abs(ki) + a
        if p <= T:
            n += 1
    return CountReport(n, params, CountMethod.BRUTEFORCE)


def count_recursive(params: CrossParams) -> CountReport:
    """Count by recursion over the leading coordinate without materialising indices.

    Cost is proportional to the number of distinct ``(s-1)``-prefixes.
    """
    _check_range(params.T)
    n = cardinality(params.s, params.T, params.a, params.kind)
    return CountReport(n, params, CountMethod.RECURSIVE)


def count_by_support_decomposition(params: CrossParams) -> CountReport:
    """Count by splitting members according to the size of their support.

    A member with ``j`` non-zero entries is a ``j``-dimensional member of the
    cross with shift ``a + 1`` and threshold ``T * a**(j - s)``; there are
    ``C(s, j)`` supports of size ``j`` and, in the symmetric case, ``2**j``
    sign patterns. The ``j = 0`` term is the zero vector, present iff
    ``a**s <= T``.
    """
    s, T, a = params.s, float(params.T), float(params.a)
    _check_range(T)
    total = 0
    for j in range(s + 1):
        Tj = T / a ** (s - j)
        if j == 0:
            sub = 1 if Tj >= 1.0 else 0
        else:
            sub = cardinality(j, Tj, a + 1.0, Kind.CORNER)
        weight = math.comb(s, j) * (2 ** j if params.symmetric else 1)
        total += weight * sub
    return CountReport(total, params, CountMethod.DECOMPOSITION)
