"""Cardinality and volume inequalities for hyperbolic crosses, with verifiers.

Every evaluator returns linear and log-space values; comparisons are made in
log space so that ``(s-1)!`` and large powers of ``T`` never overflow.
Exact integer sides are compared without tolerance, volume sides get a
relative slack of ``VOLUME_SLACK``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .counting import CrossParams, Kind, cardinality
from .errors import DomainError, InvalidParameterError
from .volume import log_excess, volume, volume_bounds

VOLUME_SLACK = 1e-12
T_STAR_RATIO = 1.05


@dataclass(frozen=True)
class Bound:
    """A labeled number; ``label`` doubles as its provenance tag."""

    label: str
    value: float
    log_value: float
    valid: bool = True
    exact: bool = False

    @classmethod
    def count(cls, label: str, n: int) -> Bound:
        return cls(label, float(n), math.log(n) if n > 0 else -math.inf, True, True)

    @classmethod
    def from_log(cls, label: str, log_value: float, valid: bool = True) -> Bound:
        return cls(label, _exp(log_value), log_value, valid)


@dataclass(frozen=True)
class SandwichReport:
    params: CrossParams
    lower_expr: Bound
    middle_expr: Bound
    upper_expr: Bound
    holds: bool
    vacuous: bool = False


@dataclass(frozen=True)
class DominanceReport:
    """``exact < bound`` check for a one-sided estimate."""

    params: CrossParams
    exact: Bound
    bound: Bound
    holds: bool
    vacuous: bool = False


class BoundPair(NamedTuple):
    corner: float
    symmetric: float
    log_corner: float
    log_symmetric: float


class InverseBounds(NamedTuple):
    lower: float
    upper: float
    log_lower: float
    log_upper: float
    valid: bool


@dataclass(frozen=True)
class ThresholdSearch:
    s: int
    a: float
    horizon: float
    t_star: float | None
    samples_checked: int
    last_violation: float | None = None
    predicate: str = "half_shift"

    @property
    def found(self) -> bool:
        return self.t_star is not None


def _exp(x):
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _log(x):
    return math.log(x) if x > 0 else -math.inf


def _less(x: Bound, y: Bound, strict: bool = True) -> bool:
    if x.exact and y.exact:
        return x.value < y.value if strict else x.value <= y.value
    if x.log_value == -math.inf:
        return y.log_value > -math.inf or not strict
    if y.log_value == -math.inf:
        return False
    return x.log_value < y.log_value + VOLUME_SLACK


def _vol(label, s, T, a):
    v = volume(s, T, a)
    return Bound(label, v.value, v.log_value)


def _params(s, T, a, kind=Kind.CORNER):
    return CrossParams(s, T, a, kind)


# ---------------------------------------------------------------------------
# sandwiches

def shift_sandwich(s: int, T: float, a: float) -> SandwichReport:
    """``|Gamma(s,T,a+1)| < I(s,T,a) < |Gamma(s,T,a)|``.

    When ``T <= a**s`` the volume vanishes and the report is marked vacuous.
    """
    p = _params(s, T, a)
    lo = Bound.count("exact:count(a+1)", cardinality(s, T, a + 1.0))
    mid = _vol("oracle:volume(a)", s, T, a)
    hi = Bound.count("exact:count(a)", cardinality(s, T, a))
    if mid.value == 0.0:
        return SandwichReport(p, lo, mid, hi, lo.value == 0.0, vacuous=True)
    return SandwichReport(p, lo, mid, hi, _less(lo, mid) and _less(mid, hi))


def symmetric_sandwich(s: int, T: float, a: float) -> SandwichReport:
    """``2**s I(s,T,a+1/2) < |Gamma_pm(s,T,a)| < 2**s I(s,T,a-1/2)``."""
    if not a > 0.5:
        raise DomainError(f"symmetric sandwich needs a > 1/2, got a={a}")
    if not T >= 1.0:
        raise DomainError(f"symmetric sandwich needs T >= 1, got T={T}")
    p = _params(s, T, a, Kind.SYMMETRIC)
    ln2s = s * math.log(2.0)
    vlo = volume(s, T, a + 0.5)
    vhi = volume(s, T, a - 0.5)
    lo = Bound.from_log("bound:symmetric_volume(a+1/2)", vlo.log_value + ln2s)
    hi = Bound.from_log("bound:symmetric_volume(a-1/2)", vhi.log_value + ln2s)
    mid = Bound.count("exact:count_symmetric", cardinality(s, T, a, Kind.SYMMETRIC))
    if mid.value == 0.0:
        return SandwichReport(p, lo, mid, hi, lo.value == 0.0, vacuous=True)
    return SandwichReport(p, lo, mid, hi, _less(lo, mid) and _less(mid, hi))


def volume_sandwich(s: int, T: float, a: float) -> SandwichReport:
    """Closed-form bracket around ``I(s,T,a)``; vacuous when ``T <= a**s``."""
    p = _params(s, T, a)
    mid = _vol("oracle:volume", s, T, a)
    if mid.value == 0.0:
        z = Bound("bound:volume_lower", 0.0, -math.inf)
        return SandwichReport(p, z, mid, Bound("bound:volume_upper", 0.0, -math.inf),
                              True, vacuous=True)
    b = volume_bounds(s, T, a)
    lo = Bound("bound:volume_lower", b.lower, b.log_lower)
    hi = Bound("bound:volume_upper", b.upper, b.log_upper)
    # both sides are closed forms of the same t, compare without slack
    holds = b.log_lower < mid.log_value < b.log_upper
    return SandwichReport(p, lo, mid, hi, holds)


# ---------------------------------------------------------------------------
# one-sided upper bounds

def _check_delta(delta):
    if not 0.0 < delta <= 1.0:
        raise DomainError(f"delta must lie in (0, 1], got {delta}")


def upper_bound_delta(s: int, T: float, a: float, delta: float) -> BoundPair:
    """``delta**-s I(s,T,a-delta)`` (corner) and ``(2/delta)**s I(s,T,a-delta)``."""
    _check_delta(delta)
    if not a > delta:
        raise DomainError(f"need a > delta, got a={a}, delta={delta}")
    if not T >= delta ** s:
        raise DomainError(f"need T >= delta**s, got T={T}")
    lv = volume(s, T, a - delta).log_value
    lc = lv - s * math.log(delta)
    ls = lv + s * math.log(2.0 / delta)
    return BoundPair(_exp(lc), _exp(ls), lc, ls)


def exponential_upper(s: int, T: float, a: float, delta: float) -> BoundPair:
    """Power-law upper bounds ``T**(1+1/delta)`` and ``T**(1+2/delta)`` with
    a factor decaying exponentially in ``s`` when ``a - delta > 1``."""
    _check_delta(delta)
    if not a > delta:
        raise DomainError(f"need a > delta, got a={a}, delta={delta}")
    if not T > 0:
        raise DomainError("T must be positive")
    lam = math.log(a - delta)
    lnT = math.log(T)
    lc = -math.log(delta) + (1.0 + 1.0 / delta) * lnT - (s / delta) * lam
    ls = math.log(2.0 / delta) + (1.0 + 2.0 / delta) * lnT - (2.0 * s / delta) * lam
    return BoundPair(_exp(lc), _exp(ls), lc, ls)


def _dominance(p, exact_n, label, log_bound):
    exact = Bound.count("exact:count_" + p.kind.value, exact_n)
    bound = Bound.from_log(label, log_bound)
    if exact_n == 0:
        return DominanceReport(p, exact, bound, bound.value >= 0.0, vacuous=True)
    return DominanceReport(p, exact, bound, _less(exact, bound))


def verify_upper_bound_delta(s: int, T: float, a: float, delta: float,
                             kind: Kind | str = Kind.CORNER) -> DominanceReport:
    kind = Kind(kind)
    b = upper_bound_delta(s, T, a, delta)
    p = _params(s, T, a, kind)
    lb = b.log_symmetric if kind is Kind.SYMMETRIC else b.log_corner
    return _dominance(p, cardinality(s, T, a, kind), f"bound:volume_shift(delta={delta:g})", lb)


def verify_exponential_upper(s: int, T: float, a: float, delta: float,
                             kind: Kind | str = Kind.CORNER) -> DominanceReport:
    kind = Kind(kind)
    b = exponential_upper(s, T, a, delta)
    p = _params(s, T, a, kind)
    lb = b.log_symmetric if kind is Kind.SYMMETRIC else b.log_corner
    return _dominance(p, cardinality(s, T, a, kind), f"bound:exponential(delta={delta:g})", lb)


# ---------------------------------------------------------------------------
# asymptotic corner bound and its threshold

def corner_upper_asymptotic(s: int, T: float, a: float,
                            t_star: float | None = None) -> Bound:
    """``T t**s / ((s-1)! (t + s - 1))`` with ``t = ln T - s ln(a - 1/2)``.

    Only an upper bound for ``|Gamma(s,T,a)|`` once ``T`` is beyond the
    empirical threshold; ``valid`` is true only when ``t_star`` is given and
    ``T >= t_star``.
    """
    if not a > 0.5:
        raise DomainError(f"need a > 1/2, got a={a}")
    t = log_excess(s, T, a - 0.5)
    label = "bound:corner_asymptotic"
    if not t > 0:
        return Bound(label, math.nan, math.nan, valid=False)
    lv = math.log(T) + s * math.log(t) - math.lgamma(s) - math.log(t + s - 1)
    ok = t_star is not None and T >= t_star
    return Bound.from_log(label, lv, valid=ok)


def _half_shift_holds(s, T, a):
    n = cardinality(s, T, a)
    if n == 0:
        return True
    lv = volume(s, T, a - 0.5).log_value
    return math.log(n) <= lv + VOLUME_SLACK


def find_t_star(s: int, a: float, horizon: float, predicate: str = "half_shift",
                ratio: float = T_STAR_RATIO) -> ThresholdSearch:
    """Smallest sample ``T`` of the geometric grid ``max(a**s, 1) * ratio**i``
    after which ``|Gamma(s,T,a)| <= I(s,T,a-1/2)`` holds at every later
    sample up to ``horizon``. ``t_star`` is ``None`` if the last sample
    violates it.

    Nothing is certified between samples; a coarse grid can step over
    violations, so re-test with :func:`check_t_star`.
    """
    if predicate != "half_shift":
        raise InvalidParameterError(f"unknown predicate {predicate!r}")
    if not a > 0.5:
        raise DomainError(f"need a > 1/2, got a={a}")
    if int(s) != s or s < 1:
        raise InvalidParameterError("s must be a positive integer")
    start = max(a ** s, 1.0)
    if not ratio > 1.0:
        raise InvalidParameterError("ratio must exceed 1")
    if not horizon > start:
        raise InvalidParameterError("horizon must exceed max(a**s, 1)")
    candidate = None
    last_bad = None
    n = 0
    i = 0
    while True:
        T = start * ratio ** i
        if T > horizon:
            break
        n += 1
        if _half_shift_holds(s, T, a):
            if candidate is None:
                candidate = T
        else:
            candidate = None
            last_bad = T
        i += 1
    return ThresholdSearch(s, a, horizon, candidate, n, last_bad, predicate)


def check_t_star(search: ThresholdSearch, samples: int = 200,
                 upto: float | None = None) -> tuple[bool, list[float]]:
    """Re-test the predicate on ``samples`` fresh geometric points in
    ``[t_star, upto]`` (default ``horizon``), offset from the search grid.

    Returns ``(all_hold, failing_T)``.
    """
    if search.t_star is None:
        return False, []
    hi = search.horizon if upto is None else upto
    ratio = (hi / search.t_star) ** (1.0 / samples)
    bad = []
    for j in range(samples):
        T = search.t_star * ratio ** (j + 0.5)
        if not _half_shift_holds(search.s, T, search.a):
            bad.append(T)
    return not bad, bad


# ---------------------------------------------------------------------------
# inverse estimates: 1/T in terms of N

def inverse_bounds(s: int, a: float, delta: float, N: int,
                   kind: Kind | str = Kind.CORNER) -> InverseBounds:
    """Bracket for ``1/T`` given ``N = |Gamma(s,T,a)|`` (or ``|Gamma_pm|``).

    The ``valid`` flag only reports whether both expressions are defined;
    the largeness condition on ``T`` is checked by :func:`verify_inverse_bounds`.
    ``delta`` is ignored for the symmetric cross.
    """
    kind = Kind(kind)
    if int(s) != s or s < 2:
        raise DomainError("inverse bounds need s >= 2")
    if not N >= 1:
        raise DomainError("N must be a positive integer")
    lnM = math.log(N) + math.lgamma(s)
    if kind is Kind.CORNER:
        if not 0.5 <= delta <= 1.0:
            raise DomainError(f"delta must lie in [1/2, 1], got {delta}")
        if not a > delta:
            raise DomainError(f"need a > delta, got a={a}, delta={delta}")
        lnP = lnM
        l_top, l_bot = s * math.log(a), s * math.log(a - delta)
    else:
        if not a > 0.5:
            raise DomainError(f"need a > 1/2, got a={a}")
        lnP = lnM - s * math.log(2.0)
        l_top, l_bot = s * math.log(2 * a + 1), s * math.log(2 * a - 1)
    big = lnM - l_bot
    valid = big > 0
    log_upper = -lnP + (s - 1) * _log(big) if big > 0 else math.nan
    # big is already ln(M / bottom), so ln ln(...) is ln(big)
    inner = lnM - l_top - (s - 1) * math.log(big) if big > 0 else math.nan
    if inner > 0:
        log_lower = math.log(2.0 / (s + 2)) - lnP + (s - 1) * math.log(inner)
    else:
        # expression not positive; fall back to the trivial lower bound
        log_lower = -math.inf
        valid = valid and not math.isnan(inner)
    return InverseBounds(_exp(log_lower), _exp(log_upper), log_lower, log_upper, valid)


@dataclass(frozen=True)
class InverseReport:
    params: CrossParams
    N: int
    bounds: InverseBounds
    applicable: bool
    holds: bool
    reason: str = field(default="")


def inverse_threshold(s: int, a: float, delta: float, kind: Kind | str,
                      t_star: float | None = None) -> float | None:
    """Smallest ``T`` for which the inverse bracket is asserted, or ``None``."""
    kind = Kind(kind)
    if kind is Kind.SYMMETRIC:
        return (a + 0.5) ** s * math.e ** 2
    base = a ** s * math.e ** 2
    if delta == 1.0:
        return base
    return None if t_star is None else max(base, t_star)


def verify_inverse_bounds(s: int, T: float, a: float, delta: float = 1.0,
                          kind: Kind | str = Kind.CORNER,
                          t_star: float | None = None) -> InverseReport:
    kind = Kind(kind)
    p = _params(s, T, a, kind)
    N = cardinality(s, T, a, kind)
    if N == 0:
        nan = math.nan
        return InverseReport(p, N, InverseBounds(nan, nan, nan, nan, False),
                             False, True, "empty cross")
    b = inverse_bounds(s, a, delta, N, kind)
    t_min = inverse_threshold(s, a, delta, kind, t_star)
    if t_min is None:
        return InverseReport(p, N, b, False, True, "threshold unknown")
    if T < t_min:
        return InverseReport(p, N, b, False, True, "T below threshold")
    lt = -math.log(T)
    holds = b.log_lower < lt < b.log_upper
    return InverseReport(p, N, b, True, holds)
