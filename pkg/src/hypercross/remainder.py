"""The Taylor-remainder function ``F_s(t)`` of ``exp(-t)`` and its ratio sequence.

``F_s(t) = (-1)**s * sum_{n >= s} (-t)**n / n!`` is the absolute value of the
``s``-th remainder; ``p_s(t) = t**s / s!`` and ``h_s(t) = F_{s+1}(t) / p_s(t)``.
The ratios obey ``h_0 = 1 - exp(-t)`` and ``h_k = 1 - (k/t) h_{k-1}``; the
forward direction is stable while ``k <= t`` and the backward direction
``h_{k-1} = (t/k)(1 - h_k)`` is stable for ``k > t``.

Every value is also carried as a natural logarithm because ``p_{s-1}(t)``
overflows double precision once ``s ln t`` passes roughly 709.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidParameterError, PrecisionError

_LN2 = math.log(2.0)
# relative seed error tolerated after backward contraction
_BACKWARD_TARGET = 1e-17
_MIN_MARGIN = 40


class RemainderMethod(str, enum.Enum):
    SERIES = "series"
    FORWARD = "forward_recurrence"
    BACKWARD = "backward_recurrence"


@dataclass(frozen=True)
class RemainderEval:
    s: int
    t: float
    value: float
    log_value: float
    lower: float
    upper: float
    method: RemainderMethod
    log_lower: float = -math.inf
    log_upper: float = -math.inf


class Bracket(NamedTuple):
    lower: float
    upper: float
    log_lower: float
    log_upper: float


def _exp(x):
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _check(s, t, s_min=1):
    if int(s) != s or s < s_min:
        raise InvalidParameterError(f"s must be an integer >= {s_min}, got {s!r}")
    if not (t >= 0 and math.isfinite(t)):
        raise InvalidParameterError(f"t must be finite and non-negative, got {t!r}")


def power_term_log(s: int, t: float) -> float:
    """``ln p_s(t) = s ln t - ln Gamma(s+1)``."""
    _check(s, t, s_min=0)
    if s == 0:
        return 0.0
    if t == 0:
        return -math.inf
    return s * math.log(t) - math.lgamma(s + 1)


def remainder_bounds(s: int, t: float) -> Bracket:
    """Two-sided bound ``t/(t+s) p_{s-1} < F_s < t/(t+s-1) p_{s-1}``."""
    _check(s, t)
    if t == 0:
        return Bracket(0.0, 0.0, -math.inf, -math.inf)
    lp = power_term_log(s - 1, t)
    lo = lp + math.log(t) - math.log(t + s)
    hi = lp + math.log(t) - math.log(t + s - 1)
    return Bracket(_exp(lo), _exp(hi), lo, hi)


# ---------------------------------------------------------------------------
# double-double arithmetic for the series oracle

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_mul_d(xh, xl, b):
    p, e = _two_prod(xh, b)
    return _quick_two_sum(p, e + xl * b)


def _dd_div_d(xh, xl, b):
    q = xh / b
    p, e = _two_prod(q, b)
    return _quick_two_sum(q, ((xh - p) - e + xl) / b)


def _dd_add(xh, xl, yh, yl):
    s, e = _two_sum(xh, yh)
    return _quick_two_sum(s, e + xl + yl)


def remainder_series(s: int, t: float, target_rel_err: float = 1e-14) -> RemainderEval:
    """Reference evaluation by direct summation in double-double precision.

    For ``s >= t`` the alternating tail ``p_s - p_{s+1} + ...`` is summed
    (terms decrease monotonically, so the first omitted term bounds the
    truncation). For ``s < t`` the equivalent finite form
    ``sum_{n<s} (-1)**(s-1-n) p_n + (-1)**s exp(-t)`` is used instead, which
    avoids the ``exp(t)``-sized intermediate terms of the tail. Terms are
    produced by the recursion ``p_n = p_{n-1} t / n`` and rescaled by exact
    powers of two, so no term under- or overflows.

    Raises :class:`PrecisionError` when the estimated rounding error, driven
    by ``sum |terms| / |result|``, exceeds ``target_rel_err``.
    """
    _check(s, t)
    if not target_rel_err > 0:
        raise InvalidParameterError("target_rel_err must be positive")
    if t == 0:
        return RemainderEval(s, t, 0.0, -math.inf, 0.0, 0.0, RemainderMethod.SERIES)

    # running term p_n and sum, both in units of 2**E
    th, tl, E = 1.0, 0.0, 0
    sh, sl = 0.0, 0.0
    abs_sum = 0.0
    nterms = 0

    def rescale(th, tl, sh, sl, E):
        e = math.frexp(th)[1]
        if -400 < e < 400:
            return th, tl, sh, sl, E
        return (math.ldexp(th, -e), math.ldexp(tl, -e),
                math.ldexp(sh, -e), math.ldexp(sl, -e), E + e)

    if s < t:
        # finite form
        for n in range(s):
            if n:
                th, tl = _dd_mul_d(th, tl, t)
                th, tl = _dd_div_d(th, tl, float(n))
                th, tl, sh, sl, E = rescale(th, tl, sh, sl, E)
            sign = 1.0 if (s - 1 - n) % 2 == 0 else -1.0
            sh, sl = _dd_add(sh, sl, sign * th, sign * tl)
            abs_sum += abs(th)
            nterms += 1
        et = math.ldexp(math.exp(-t), -E) if E > -1000 else 0.0
        sign = 1.0 if s % 2 == 0 else -1.0
        sh, sl = _dd_add(sh, sl, sign * et, 0.0)
        abs_sum += et
        extra_err = 2.3e-16 * et
    else:
        # tail form starting at p_s
        for n in range(1, s + 1):
            th, tl = _dd_mul_d(th, tl, t)
            th, tl = _dd_div_d(th, tl, float(n))
            th, tl, sh, sl, E = rescale(th, tl, sh, sl, E)
        sign = 1.0
        n = s
        while True:
            sh, sl = _dd_add(sh, sl, sign * th, sign * tl)
            abs_sum += abs(th)
            nterms += 1
            n += 1
            th, tl = _dd_mul_d(th, tl, t)
            th, tl = _dd_div_d(th, tl, float(n))
            sign = -sign
            if abs(th) <= 1e-3 * min(target_rel_err, 1e-20) * abs(sh) or th == 0.0:
                break
            if nterms > 1_000_000:
                raise PrecisionError(f"series for F_{s}({t}) did not converge")
        extra_err = abs(th)
    if not sh > 0:
        raise PrecisionError(f"series for F_{s}({t}) lost all significance")
    est = (abs_sum * (nterms + 2) * 2.0 ** -102 + extra_err) / sh
    if est > target_rel_err:
        raise PrecisionError(
            f"series for F_{s}({t}): estimated relative error {est:.2e} "
            f"exceeds target {target_rel_err:.2e}")
    log_value = math.log(sh) + math.log1p(sl / sh) + E * _LN2
    b = remainder_bounds(s, t)
    return RemainderEval(s, t, _exp(log_value), log_value, b.lower, b.upper,
                         RemainderMethod.SERIES, b.log_lower, b.log_upper)


# ---------------------------------------------------------------------------
# recurrences

def _backward_start(t: float, top: int) -> int:
    """Start index for the backward sweep so that ``h_top`` is accurate.

    The seed's relative error (about half the bracket width, ``1/(2(t+S))``)
    is multiplied by ``t/k`` for each step ``k = S, ..., top+1``. Starting at
    ``max(top, ceil(t)) + 40`` is not always enough when ``top`` is only just
    above ``t``, so the start is pushed further until the contracted seed
    error drops below ``1e-17``.
    """
    S = max(top + 1, math.ceil(t)) + _MIN_MARGIN
    logc = sum(math.log(t / k) for k in range(top + 1, S + 1))
    target = math.log(_BACKWARD_TARGET)
    while logc - math.log(2.0 * (t + S)) > target:
        S += 1
        logc += math.log(t / S)
    return S


def _forward(t: float, kmax: int) -> list[float]:
    h = [-math.expm1(-t)]
    for k in range(1, kmax + 1):
        h.append(1.0 - (k / t) * h[-1])
    return h


def _backward(t: float, lo: int, hi: int) -> list[float]:
    """``h_lo ... h_hi`` for ``t < lo`` by the backward sweep."""
    S = _backward_start(t, hi)
    h = t / (t + S + 0.5)  # midpoint of the bracket for h_S
    out = [0.0] * (hi - lo + 1)
    for k in range(S, lo, -1):
        h = (t / k) * (1.0 - h)  # h_{k-1}
        if k - 1 <= hi:
            out[k - 1 - lo] = h
    return out


def h_sequence(s_max: int, t: float) -> list[float]:
    """Ratios ``h_0(t), ..., h_{s_max}(t)``; strictly decreasing inside (0, 1)."""
    _check(s_max, t, s_min=0)
    if t == 0:
        raise InvalidParameterError("t must be positive")
    kf = min(s_max, math.floor(t))
    h = _forward(t, kf)
    if s_max > kf:
        h.extend(_backward(t, kf + 1, s_max))
    return h


def _h_single(k: int, t: float) -> tuple[float, RemainderMethod]:
    if k <= t:
        return _forward(t, k)[k], RemainderMethod.FORWARD
    return _backward(t, k, k)[0], RemainderMethod.BACKWARD


def remainder_stable(s: int, t: float) -> RemainderEval:
    """``F_s(t) = p_{s-1}(t) h_{s-1}(t)`` via the stable recurrence direction."""
    _check(s, t)
    if t == 0:
        return RemainderEval(s, t, 0.0, -math.inf, 0.0, 0.0, RemainderMethod.SERIES)
    h, method = _h_single(s - 1, t)
    if s == 1:
        # 1 - exp(-t) rounds to 1 for t > ~37; its log does not
        log_h = math.log1p(-math.exp(-t))
    else:
        log_h = math.log(h)
    log_value = power_term_log(s - 1, t) + log_h
    b = remainder_bounds(s, t)
    return RemainderEval(s, t, _exp(log_value), log_value, b.lower, b.upper,
                         method, b.log_lower, b.log_upper)
