"""Volume ``I(s, T, a)`` of the smooth hyperbolic cross ``{x >= 0 : prod(x_j + a) <= T}``.

The volume is ``T * F_s(ln T - s ln a)`` for ``T > a**s`` and zero otherwise.
Two independent cross-checks are provided: the closed alternating polynomial
in ``ln T - s ln a`` (small ``s`` only) and nested adaptive quadrature that
never touches the remainder code.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, InvalidParameterError, NumericError, PrecisionError
from .remainder import remainder_stable


class VolumeMethod(str, enum.Enum):
    REMAINDER = "remainder_formula"
    POLYNOMIAL = "closed_polynomial"
    QUADRATURE = "quadrature_oracle"


@dataclass(frozen=True)
class VolumeEval:
    s: int
    T: float
    a: float
    value: float
    log_value: float
    method: VolumeMethod


class VolumeBounds(NamedTuple):
    lower: float
    upper: float
    log_lower: float
    log_upper: float


def _check(s, T, a):
    if int(s) != s or s < 1:
        raise InvalidParameterError(f"s must be a positive integer, got {s!r}")
    for name, v in (("T", T), ("a", a)):
        if not (v > 0 and math.isfinite(v)):
            raise InvalidParameterError(f"{name} must be positive and finite, got {v!r}")


def log_excess(s: int, T: float, a: float) -> float:
    """``t = ln T - s ln a``, accurate near the boundary ``T = a**s``."""
    try:
        base = a ** s
    except OverflowError:
        base = math.inf
    ratio = T / base if 0.0 < base < math.inf else math.nan
    if 1e-300 < ratio < 1e300:
        return math.log(ratio)
    return math.log(T) - s * math.log(a)


def _exp(x):
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def volume(s: int, T: float, a: float) -> VolumeEval:
    """``I(s, T, a)`` via the remainder function; zero when ``T <= a**s``."""
    _check(s, T, a)
    t = log_excess(s, T, a)
    if not t > 0:
        return VolumeEval(s, T, a, 0.0, -math.inf, VolumeMethod.REMAINDER)
    r = remainder_stable(s, t)
    lv = math.log(T) + r.log_value
    return VolumeEval(s, T, a, _exp(lv), lv, VolumeMethod.REMAINDER)


def volume_closed_polynomial(s: int, T: float, a: float) -> VolumeEval:
    """Alternating closed form; only trusted for ``s <= 25`` and ``t <= 30``."""
    _check(s, T, a)
    t = log_excess(s, T, a)
    if not t > 0:
        raise DomainError("closed polynomial requires T > a**s")
    if s > 25 or t > 30:
        raise PrecisionError(f"closed polynomial unreliable for s={s}, t={t:.3g}")
    acc = (-1) ** (s + 1) * (T - a ** s)
    term = 1.0
    parts = [acc]
    for n in range(1, s):
        term *= t / n
        parts.append(T * term * (-1) ** (s - 1 - n))
    value = math.fsum(parts)
    lv = math.log(value) if value > 0 else -math.inf
    return VolumeEval(s, T, a, value, lv, VolumeMethod.POLYNOMIAL)


# ---------------------------------------------------------------------------
# quadrature oracle

def _simpson(f, lo, hi, tol, floor=1e-13, max_depth=48):
    """Adaptive Simpson with Richardson correction; absolute tolerance ``tol``.

    ``floor`` is the relative noise level of ``f`` itself. Because the
    integrand is non-negative, accepting a panel at that relative level keeps
    the accumulated error at that level too.
    """
    m = 0.5 * (lo + hi)
    flo, fm, fhi = f(lo), f(m), f(hi)
    whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi)

    def rec(lo, hi, flo, fm, fhi, whole, tol, depth):
        m = 0.5 * (lo + hi)
        lm, rm = 0.5 * (lo + m), 0.5 * (m + hi)
        flm, frm = f(lm), f(rm)
        left = (m - lo) / 6.0 * (flo + 4.0 * flm + fm)
        right = (hi - m) / 6.0 * (fm + 4.0 * frm + fhi)
        diff = left + right - whole
        if abs(diff) <= max(15.0 * tol, floor * abs(left + right)):
            return left + right + diff / 15.0
        if depth >= max_depth:
            raise NumericError("adaptive Simpson exceeded maximum depth")
        return (rec(lo, m, flo, flm, fm, left, 0.5 * tol, depth + 1)
                + rec(m, hi, fm, frm, fhi, right, 0.5 * tol, depth + 1))

    return rec(lo, hi, flo, fm, fhi, whole, tol, 0)


def _quad_volume(s, T, a, rel_tol, level):
    if T <= a ** s:
        return 0.0
    if s == 1:
        return T - a
    # substitute x + a = a e^u, u in [0, ln(T / a**s)]
    umax = math.log(T / a ** s)
    if umax < 1e-8:
        # two-term expansion; avoids integrating a rounding-level sliver
        return a ** s * umax ** s / math.factorial(s) * (1.0 + s * umax / (s + 1))
    inner_tol = rel_tol / 3.0

    def integrand(u):
        w = a * math.exp(u)
        return w * _quad_volume(s - 1, T / w, a, inner_tol, level + 1)

    # coarse magnitude estimate turns the relative target into an absolute one
    scale = abs(_simpson_fixed(integrand, 0.0, umax, 8)) or 1.0
    return _simpson(integrand, 0.0, umax, rel_tol * scale / 3.0,
                    floor=max(inner_tol, 1e-13) if s > 2 else 1e-13)


def _simpson_fixed(f, lo, hi, n):
    h = (hi - lo) / (2 * n)
    acc = f(lo) + f(hi)
    for i in range(1, 2 * n):
        acc += (4.0 if i % 2 else 2.0) * f(lo + i * h)
    return acc * h / 3.0


def volume_quadrature_oracle(s: int, T: float, a: float, tol: float = 1e-8) -> VolumeEval:
    """Nested 1-D adaptive quadrature of ``I(s-1, T/(x+a), a)`` over ``x``.

    The tolerance shrinks by a factor 3 per nesting level. Independent of the
    remainder module; intended for ``s <= 5``.
    """
    _check(s, T, a)
    if s > 5:
        raise InvalidParameterError("quadrature oracle is limited to s <= 5")
    if not tol > 0:
        raise InvalidParameterError("tol must be positive")
    value = _quad_volume(s, float(T), float(a), tol, 0)
    lv = math.log(value) if value > 0 else -math.inf
    return VolumeEval(s, T, a, value, lv, VolumeMethod.QUADRATURE)


def volume_bounds(s: int, T: float, a: float) -> VolumeBounds:
    """Two-sided bound ``T t**s / ((s-1)! (t+s)) < I < T t**s / ((s-1)! (t+s-1))``.

    Here ``t = ln T - s ln a``; requires ``T > a**s``.
    """
    _check(s, T, a)
    t = log_excess(s, T, a)
    if not t > 0:
        raise DomainError("volume bounds require T > a**s")
    common = math.log(T) + s * math.log(t) - math.lgamma(s)
    lo = common - math.log(t + s)
    hi = common - math.log(t + s - 1)
    return VolumeBounds(_exp(lo), _exp(hi), lo, hi)
