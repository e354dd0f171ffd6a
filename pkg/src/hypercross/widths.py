"""Kolmogorov N-widths and epsilon-dimensions of modified Korobov balls.

The embedding into L2 is diagonal with singular values
``lambda_a(k)**-r = prod(|k_j| + a)**-r``, so ``d_N`` is the ``(N+1)``-th
largest of them and ``n_eps`` counts those above ``eps``. Both are computed
exactly from the cross spectrum and compared against the closed-form
estimates below.
"""

from __future__ import annotations

import enum
import math
import os
import threading
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _backend
from .counting import Kind, cardinality
from .errors import DomainError, EnumerationOverflowError, InvalidParameterError

DEFAULT_CAP = 10_000_000
SLACK = 1e-12


def default_cap() -> int:
    """Lattice cap; ``HYPERCROSS_CAP`` overrides the built-in ``10**7``."""
    raw = os.environ.get("HYPERCROSS_CAP")
    if raw:
        try:
            cap = int(float(raw))
        except ValueError:
            raise InvalidParameterError(f"HYPERCROSS_CAP={raw!r} is not a number") from None
        if cap > 0:
            return cap
    return DEFAULT_CAP


class WidthKind(str, enum.Enum):
    PERIODIC = "periodic_symmetric"
    NONPERIODIC = "nonperiodic_corner"


class TractabilityClass(str, enum.Enum):
    EXPONENTIAL = "exponentially_tractable"
    WEAK = "weakly_tractable_poly_intractable"
    INTRACTABLE = "intractable"


@dataclass(frozen=True)
class SmoothnessParams:
    r: float
    a: float
    s: int
    kind: WidthKind = WidthKind.PERIODIC

    def __post_init__(self):
        object.__setattr__(self, "kind", WidthKind(self.kind))
        if not (self.r > 0 and math.isfinite(self.r)):
            raise InvalidParameterError(f"r must be positive, got {self.r!r}")
        if not (self.a > 0 and math.isfinite(self.a)):
            raise InvalidParameterError(f"a must be positive, got {self.a!r}")
        if isinstance(self.s, bool) or int(self.s) != self.s or self.s < 1:
            raise InvalidParameterError(f"s must be a positive integer, got {self.s!r}")
        object.__setattr__(self, "s", int(self.s))

    @property
    def cross_kind(self) -> Kind:
        return Kind.SYMMETRIC if self.kind is WidthKind.PERIODIC else Kind.CORNER

    @property
    def periodic(self) -> bool:
        return self.kind is WidthKind.PERIODIC


@dataclass(frozen=True)
class LabeledBound:
    label: str
    side: str  # "lower" or "upper"
    value: float
    log_value: float
    valid: bool
    note: str = ""

    def brackets(self, exact: float) -> bool:
        """Whether the bound is on the correct side of ``exact`` (slack 1e-12)."""
        if math.isnan(self.value):
            return False
        le = math.log(exact) if exact > 0 else -math.inf
        if self.side == "upper":
            if le == -math.inf:
                return True
            return le <= self.log_value + SLACK
        if self.log_value == -math.inf:
            return True
        return self.log_value <= le + SLACK


@dataclass(frozen=True)
class WidthReport:
    query: tuple[str, float]
    exact: float
    bounds: list[LabeledBound] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(b.brackets(self.exact) for b in self.bounds if b.valid)

    def violations(self) -> list[LabeledBound]:
        return [b for b in self.bounds if b.valid and not b.brackets(self.exact)]


@dataclass(frozen=True)
class TractabilityVerdict:
    a: float
    r: float
    cls: TractabilityClass
    p_exp_upper: float | None
    evidence: list[tuple[int, int]]
    eps: float
    kind: WidthKind = WidthKind.PERIODIC


@dataclass(frozen=True)
class SmallABound:
    a0: float
    bound: LabeledBound
    asymptotic: bool


@dataclass(frozen=True)
class NormalizedQuery:
    """Absolute-criterion equivalent of a normalized-criterion query."""

    sp: SmoothnessParams
    scale: float  # a**(r s): normalized d_N = scale * d_N
    N: int | None = None
    eps: float | None = None
    eps_absolute: float | None = None
    cls: TractabilityClass = TractabilityClass.WEAK
    note: str = ""


def _exp(x):
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _bound(label, side, log_value, valid, note=""):
    return LabeledBound(label, side, _exp(log_value), log_value, valid, note)


def _nan_bound(label, side, note):
    return LabeledBound(label, side, math.nan, math.nan, False, note)


# ---------------------------------------------------------------------------
# spectrum

@dataclass(frozen=True)
class Spectrum:
    """Distinct lattice products up to ``T`` with cumulative multiplicities.

    ``counts[i]`` is the number of lattice points whose product is at most
    ``values[i]``.
    """

    s: int
    a: float
    kind: Kind
    T: float
    values: np.ndarray
    counts: np.ndarray

    @property
    def size(self) -> int:
        return int(self.counts[-1]) if len(self.counts) else 0

    def product_at(self, n: int) -> float:
        """The ``n``-th smallest product (1-based, with multiplicity)."""
        i = int(np.searchsorted(self.counts, n, side="left"))
        return float(self.values[i])


def build_spectrum(s: int, a: float, kind: Kind | str, T: float) -> Spectrum:
    kind = Kind(kind)
    prods, mults = _backend.cross_products(int(s), float(T), float(a),
                                           kind is Kind.SYMMETRIC, False)
    if len(prods) == 0:
        return Spectrum(s, a, kind, T, np.empty(0), np.empty(0, dtype=np.int64))
    values, inv = np.unique(prods, return_inverse=True)
    weights = np.bincount(inv, weights=mults).astype(np.int64)
    return Spectrum(s, a, kind, T, values, np.cumsum(weights))


_cache: dict[tuple, Spectrum] = {}
_cache_lock = threading.Lock()


def spectrum_for_count(sp: SmoothnessParams, need: int, cap: int | None = None) -> Spectrum:
    """Smallest cached spectrum holding at least ``need`` lattice points."""
    cap = default_cap() if cap is None else cap
    if need > cap:
        raise EnumerationOverflowError(cap, 0)
    key = (sp.s, sp.a, sp.cross_kind)
    with _cache_lock:
        spec = _cache.get(key)
    if spec is not None and spec.size >= need:
        return spec
    kind = sp.cross_kind
    T = max(sp.a ** sp.s, 1e-300) * 2.0
    while True:
        n = cardinality(sp.s, T, sp.a, kind)
        if n >= need:
            break
        if n > cap:
            raise EnumerationOverflowError(cap, n)
        T *= 1.5 if n > 1000 else 2.0
    spec = build_spectrum(sp.s, sp.a, kind, T)
    with _cache_lock:
        old = _cache.get(key)
        if old is None or old.size < spec.size:
            _cache[key] = spec
    return spec


def spectrum_thresholds(sp: SmoothnessParams, T_max: float) -> Spectrum:
    """All distinct products ``<= T_max`` (the jump points of ``N(T)``)."""
    return build_spectrum(sp.s, sp.a, sp.cross_kind, T_max)


def jump_ratios(spec: Spectrum) -> np.ndarray:
    """Ratios of consecutive distinct products."""
    v = spec.values
    return v[1:] / v[:-1] if len(v) > 1 else np.empty(0)


# ---------------------------------------------------------------------------
# exact oracles

def singular_values(sp: SmoothnessParams, count: int, cap: int | None = None) -> list[float]:
    """The ``count`` largest singular values, ties kept with multiplicity."""
    if count < 0:
        raise InvalidParameterError("count must be non-negative")
    if count == 0:
        return []
    spec = spectrum_for_count(sp, count, cap)
    idx = np.arange(1, count + 1)
    pos = np.searchsorted(spec.counts, idx, side="left")
    return [float(v) ** -sp.r for v in spec.values[pos]]


def exact_dN(sp: SmoothnessParams, N: int, cap: int | None = None) -> float:
    """``d_N`` = the ``(N+1)``-th largest singular value."""
    if int(N) != N or N < 0:
        raise InvalidParameterError(f"N must be a non-negative integer, got {N!r}")
    spec = spectrum_for_count(sp, int(N) + 1, cap)
    return spec.product_at(int(N) + 1) ** -sp.r


def _eps_threshold(eps, r):
    if not 0 < eps <= 1:
        raise InvalidParameterError(f"eps must lie in (0, 1], got {eps!r}")
    return eps ** (-1.0 / r)


def exact_n_eps(sp: SmoothnessParams, eps: float, cap: int | None = None) -> int:
    """``#{k : lambda_a(k)**-r > eps}``, the least ``N`` with ``d_N <= eps``."""
    T = _eps_threshold(eps, sp.r)
    cap = default_cap() if cap is None else cap
    n = cardinality(sp.s, T, sp.a, sp.cross_kind, strict=True)
    if n > cap:
        raise EnumerationOverflowError(cap, n)
    return n


# ---------------------------------------------------------------------------
# explicit bounds with a free parameter q

def _q_lambda(sp, q):
    if sp.periodic:
        if not q >= 2:
            raise DomainError(f"q must be >= 2 in the periodic setting, got {q}")
        lam = sp.a - 2.0 / q
    else:
        if not q >= 1:
            raise DomainError(f"q must be >= 1 in the non-periodic setting, got {q}")
        lam = sp.a - 1.0 / q
    if not lam > 0:
        raise DomainError(f"lambda = {lam:.6g} must be positive")
    return lam


def dN_upper_q(sp: SmoothnessParams, N: int, q: float,
               printed_exponent: bool = False) -> LabeledBound:
    """``2**r q**(r/(1+q)) lambda**(-q r s/(1+q)) N**(-r/(1+q))``.

    Both settings share this form: it follows from the power-law count bound
    ``|cross| <= q T**(1+q) lambda**(-q s)``. ``printed_exponent=True``
    evaluates the non-periodic variant with ``lambda**(-q r s)`` instead;
    that version fails whenever ``lambda > 1`` and is kept for comparison
    only (reported with ``valid=False``).
    """
    if not N >= 1:
        raise DomainError("N must be a positive integer")
    lam = _q_lambda(sp, q)
    r, s = sp.r, sp.s
    alt = printed_exponent and not sp.periodic
    e = q * r if alt else q * r / (1 + q)
    lv = (r * math.log(2.0) + r / (1 + q) * math.log(q) - e * s * math.log(lam)
          - r / (1 + q) * math.log(N))
    if alt:
        return _bound(f"bound:dN_q_printed(q={q:g})", "upper", lv, False,
                      "printed exponent q r s; not a valid bound for lambda > 1")
    return _bound(f"bound:dN_q(q={q:g})", "upper", lv, True)


def n_eps_upper_q(sp: SmoothnessParams, eps: float, q: float) -> LabeledBound:
    """``q lambda**(-q s) eps**(-(1+q)/r)``."""
    _eps_threshold(eps, sp.r)
    lam = _q_lambda(sp, q)
    lv = math.log(q) - q * sp.s * math.log(lam) - (1 + q) / sp.r * math.log(eps)
    return _bound(f"bound:n_eps_q(q={q:g})", "upper", lv, True)


# ---------------------------------------------------------------------------
# sharpened bounds

def _cond_N(s, a):
    """Minimal ``N`` for the sharp periodic upper bound."""
    t_star = 16 * math.ceil((a + 0.5) ** s)
    lb = math.log(a - 0.5)
    lt = math.log(t_star)
    num = math.log(t_star) + s * math.log(lt - s * lb) if lt - s * lb > 0 else -math.inf
    den = lt + s * (1 - lb) - 1
    if not den > 0 or num == -math.inf:
        return math.inf
    return _exp(s * math.log(2.0) - math.lgamma(s) + num - math.log(den))


def _log_inner(lnM, l_base):
    d = lnM - l_base
    return math.log(d) if d > 0 else None


def _sharp_dN_forms(sp, N):
    """(log lower, log upper) of the sharp N-width bracket; None if undefined."""
    s, r, a = sp.s, sp.r, sp.a
    lnM = math.log(N) + math.lgamma(s)
    if sp.periodic:
        l2s = s * math.log(2.0)
        up = _log_inner(lnM, s * math.log(2 * a - 1))
        lo = _log_inner(lnM, s * math.log(2 * a + 1))
        log_up = None if up is None else r * (math.log(2.0) + l2s - lnM + (s - 1) * up)
        log_lo = None if lo is None else (
            -math.log(2.0) + r * (l2s - lnM - math.log(s + 2) + (s - 1) * lo))
    else:
        up = _log_inner(lnM, s * math.log(a - 0.5))
        lo = _log_inner(lnM, s * math.log(a))
        log_up = None if up is None else r * (math.log(2.0) - lnM + (s - 1) * up)
        log_lo = None if lo is None else (
            -math.log(2.0) + r * (-lnM - math.log(s + 2) + (s - 1) * lo))
    return log_lo, log_up


class _Search:
    """Cached empirical thresholds ``N*`` and ``eps*``."""

    def __init__(self):
        self._store: dict[tuple, float | None] = {}
        self._lock = threading.Lock()

    def get(self, key, compute):
        with self._lock:
            if key in self._store:
                return self._store[key]
        value = compute()
        with self._lock:
            self._store[key] = value
        return value

    def clear(self):
        with self._lock:
            self._store.clear()


_thresholds = _Search()
N_STAR_MAX = 200_000
N_STAR_RATIO = 1.1


def _n_grid(n_max, ratio=N_STAR_RATIO):
    out, x = [], 1.0
    while x <= n_max:
        n = int(round(x))
        if not out or n > out[-1]:
            out.append(n)
        x *= ratio
    return out


def _last_good(samples: Sequence, ok: Callable) -> object | None:
    """First sample after which ``ok`` holds on every later sample."""
    cand = None
    for x in samples:
        if ok(x):
            if cand is None:
                cand = x
        else:
            cand = None
    return cand


def find_n_star(sp: SmoothnessParams, side: str, n_max: int = N_STAR_MAX) -> int | None:
    """Empirical ``N*`` for the sharp lower (or non-periodic upper) bound.

    Scans ``N`` on a geometric grid (ratio 1.1) up to ``n_max`` and returns
    the smallest sample beyond which the bound brackets ``d_N`` at every
    later sample; ``None`` when the last sample fails.
    """
    if side not in ("lower", "upper"):
        raise InvalidParameterError("side must be 'lower' or 'upper'")

    def compute():
        spec = spectrum_for_count(sp, n_max + 1)

        def ok(N):
            dn = spec.product_at(N + 1) ** -sp.r
            lo, up = _sharp_dN_forms(sp, N)
            f = lo if side == "lower" else up
            if f is None:
                return False
            b = LabeledBound("", side, _exp(f), f, True)
            return b.brackets(dn)

        return _last_good(_n_grid(n_max), ok)

    return _thresholds.get(("N*", sp, side, n_max), compute)


def _sharp_applicable(sp):
    if sp.s < 2:
        raise DomainError("sharp bounds need s >= 2")
    if not sp.a > 0.5:
        raise DomainError(f"sharp bounds need a > 1/2, got a={sp.a}")


def dN_bounds_sharp(sp: SmoothnessParams, N: int, n_max: int = N_STAR_MAX) -> list[LabeledBound]:
    """Sharp two-sided N-width estimates with validity flags.

    Periodic upper: valid once ``N`` meets the explicit size condition.
    Lower (both settings) and non-periodic upper: valid beyond an
    empirically located ``N*``.
    """
    _sharp_applicable(sp)
    if not N >= 1:
        raise DomainError("N must be a positive integer")
    log_lo, log_up = _sharp_dN_forms(sp, N)
    tag = "periodic" if sp.periodic else "nonperiodic"
    out = []
    if log_up is None:
        out.append(_nan_bound(f"bound:dN_sharp_{tag}", "upper", "logarithm not positive"))
    elif sp.periodic:
        cond = _cond_N(sp.s, sp.a)
        out.append(_bound(f"bound:dN_sharp_{tag}", "upper", log_up, N >= cond,
                          f"requires N >= {cond:.6g}"))
    else:
        ns = find_n_star(sp, "upper", n_max)
        out.append(_bound(f"bound:dN_sharp_{tag}", "upper", log_up,
                          ns is not None and N >= ns, f"empirical N* = {ns}"))
    if log_lo is None:
        out.append(_nan_bound(f"bound:dN_sharp_{tag}", "lower", "logarithm not positive"))
    else:
        ns = find_n_star(sp, "lower", n_max)
        out.append(_bound(f"bound:dN_sharp_{tag}", "lower", log_lo,
                          ns is not None and N >= ns, f"empirical N* = {ns}"))
    return out


def _cross_form(s, lnT, base, minus_one):
    """``T t**s / ((s-1)! (ln T + s(1 - ln base) [- 1]))`` in log form."""
    lb = math.log(base)
    t = lnT - s * lb
    den = lnT + s * (1 - lb) - (1 if minus_one else 0)
    if not (t > 0 and den > 0):
        return None
    return lnT + s * math.log(t) - math.lgamma(s) - math.log(den)


def _minus_one(log_value):
    """``log(exp(x) - 1)``, or ``-inf`` when the difference is not positive."""
    if log_value is None:
        return None
    if log_value <= 0:
        return -math.inf
    return log_value + math.log(-math.expm1(-log_value))


def find_eps_star(sp: SmoothnessParams, n_max: int = N_STAR_MAX) -> float | None:
    """Empirical ``eps*`` for the non-periodic upper bound with ``a - 1/2``.

    Scans ``eps = 0.9**i`` downward while ``n_eps <= n_max`` and returns the
    largest sample below which the bound holds at every smaller sample.
    """
    def compute():
        samples = []
        e = 1.0
        while True:
            T = e ** (-1.0 / sp.r)
            if cardinality(sp.s, T, sp.a, sp.cross_kind, strict=True) > n_max:
                break
            samples.append(e)
            e *= 0.9

        def ok(eps):
            lv = _cross_form(sp.s, -math.log(eps) / sp.r, sp.a - 0.5, True)
            if lv is None:
                return False
            b = LabeledBound("", "upper", _exp(lv), lv, True)
            return b.brackets(exact_n_eps(sp, eps))

        return _largest_ok(samples, ok)

    return _thresholds.get(("eps*", sp, n_max), compute)


def _largest_ok(samples_desc, ok):
    """Largest sample such that ``ok`` holds on it and every smaller sample."""
    best = None
    for e in reversed(samples_desc):
        if ok(e):
            best = e
        else:
            break
    return best


def n_eps_bounds_sharp(sp: SmoothnessParams, eps: float,
                       n_max: int = N_STAR_MAX) -> list[LabeledBound]:
    """Two-sided epsilon-dimension estimates and their simplified forms."""
    if sp.s < 2:
        raise DomainError("sharp bounds need s >= 2")
    _eps_threshold(eps, sp.r)
    s, r, a = sp.s, sp.r, sp.a
    lnT = -math.log(eps) / r
    out = []
    if sp.periodic:
        if not a > 0.5:
            raise DomainError(f"need a > 1/2, got a={a}")
        l2s = s * math.log(2.0)
        up = _cross_form(s, lnT, a - 0.5, True)
        ok_up = eps < (a - 0.5) ** (-s * r)
        out.append(_bound("bound:n_eps_sharp_periodic", "upper", l2s + up, ok_up)
                   if up is not None else
                   _nan_bound("bound:n_eps_sharp_periodic", "upper", "outside domain"))
        lo = _cross_form(s, lnT, a + 0.5, False)
        ok_lo = eps < (a + 0.5) ** (-s * r)
        out.append(_bound("bound:n_eps_sharp_periodic", "lower",
                          _minus_one(l2s + lo), ok_lo)
                   if lo is not None else
                   _nan_bound("bound:n_eps_sharp_periodic", "lower", "outside domain"))
        out.extend(_simplified_periodic(sp, eps))
    else:
        if not a > 0.5:
            raise DomainError(f"need a > 1/2, got a={a}")
        up = _cross_form(s, lnT, a - 0.5, True)
        es = find_eps_star(sp, n_max)
        out.append(_bound("bound:n_eps_sharp_nonperiodic(a-1/2)", "upper", up,
                          es is not None and eps <= es, f"empirical eps* = {es}")
                   if up is not None else
                   _nan_bound("bound:n_eps_sharp_nonperiodic(a-1/2)", "upper",
                              "outside domain"))
        if a > 1:
            up1 = _cross_form(s, lnT, a - 1.0, True)
            ok1 = eps < (a - 1.0) ** (-s * r)
            out.append(_bound("bound:n_eps_sharp_nonperiodic(a-1)", "upper", up1, ok1)
                       if up1 is not None else
                       _nan_bound("bound:n_eps_sharp_nonperiodic(a-1)", "upper",
                                  "outside domain"))
        lo = _cross_form(s, lnT, a, False)
        ok_lo = eps < a ** (-s * r)
        out.append(_bound("bound:n_eps_sharp_nonperiodic", "lower", _minus_one(lo), ok_lo)
                   if lo is not None else
                   _nan_bound("bound:n_eps_sharp_nonperiodic", "lower", "outside domain"))
        out.extend(_simplified_nonperiodic(sp, eps))
    return out


def _simplified_periodic(sp, eps):
    s, r, a = sp.s, sp.r, sp.a
    lnT = -math.log(eps) / r
    base = s * math.log(2.0) - math.lgamma(s) + lnT
    if a >= 1.5:
        lv = base - (s - 1) * math.log(r) + _pow_log(abs(math.log(eps)), s - 1)
        return [_bound("bound:n_eps_simple_periodic(a>=3/2)", "upper", lv, True)]
    if a > 0.5:
        lv = base + _pow_log(lnT + s * abs(math.log(a - 0.5)), s - 1)
        return [_bound("bound:n_eps_simple_periodic(a<3/2)", "upper", lv, True)]
    return []


def _simplified_nonperiodic(sp, eps):
    s, r, a = sp.s, sp.r, sp.a
    lnT = -math.log(eps) / r
    base = -math.lgamma(s) + lnT
    if a >= 2:
        lv = base - (s - 1) * math.log(r) + _pow_log(abs(math.log(eps)), s - 1)
        return [_bound("bound:n_eps_simple_nonperiodic(a>=2)", "upper", lv, True)]
    if a > 1:
        lv = base + _pow_log(lnT + s * abs(math.log(a - 1.0)), s - 1)
        return [_bound("bound:n_eps_simple_nonperiodic(a<2)", "upper", lv, True)]
    return []


def _pow_log(x, k):
    """``log(x**k)`` with ``0**0 = 1``."""
    if k == 0:
        return 0.0
    return k * math.log(x) if x > 0 else -math.inf


# ---------------------------------------------------------------------------
# reports

def width_report_N(sp: SmoothnessParams, N: int, qs: Sequence[float] = (),
                   cap: int | None = None) -> WidthReport:
    """Exact ``d_N`` with every applicable estimate attached."""
    exact = exact_dN(sp, N, cap)
    bounds = []
    if N >= 1:
        for q in qs:
            try:
                bounds.append(dN_upper_q(sp, N, q))
            except DomainError:
                continue
        if sp.s >= 2 and sp.a > 0.5:
            bounds.extend(dN_bounds_sharp(sp, N))
    return WidthReport(("N", N), exact, bounds)


def width_report_eps(sp: SmoothnessParams, eps: float, qs: Sequence[float] = (),
                     cap: int | None = None) -> WidthReport:
    """Exact ``n_eps`` with every applicable estimate attached."""
    exact = exact_n_eps(sp, eps, cap)
    bounds = []
    for q in qs:
        try:
            bounds.append(n_eps_upper_q(sp, eps, q))
        except DomainError:
            continue
    if sp.s >= 2 and sp.a > 0.5:
        bounds.extend(n_eps_bounds_sharp(sp, eps))
    elif sp.s == 1:
        bounds.extend(_simplified_periodic(sp, eps) if sp.periodic
                      else _simplified_nonperiodic(sp, eps))
    return WidthReport(("eps", eps), float(exact), bounds)


# ---------------------------------------------------------------------------
# tractability

def classify_tractability(a: float, r: float, kind: WidthKind | str = WidthKind.PERIODIC,
                          s_max: int = 12, eps: float = 0.5,
                          cap: int | None = None) -> TractabilityVerdict:
    """Tractability class of ``n_eps`` as a function of the shift ``a``.

    ``evidence`` lists ``(s, n_eps)`` for ``s = 1..s_max`` at fixed ``eps``.
    """
    kind = WidthKind(kind)
    if not (a > 0 and r > 0):
        raise InvalidParameterError("a and r must be positive")
    if a > 1:
        cls = TractabilityClass.EXPONENTIAL
        if kind is WidthKind.PERIODIC:
            p = 3.0 / r if a >= 2 else (1.0 + 2.0 / (a - 1.0)) / r
        else:
            p = 2.0 / r
    elif a == 1:
        cls, p = TractabilityClass.WEAK, None
    else:
        cls, p = TractabilityClass.INTRACTABLE, None
    evidence = []
    for s in range(1, s_max + 1):
        sp = SmoothnessParams(r, a, s, kind)
        evidence.append((s, exact_n_eps(sp, eps, cap)))
    return TractabilityVerdict(a, r, cls, p, evidence, eps, kind)


def solve_a0(r: float, tol: float = 1e-12) -> float:
    """Root of ``a (a+1)**(2r) = 1`` on ``(0, 1]`` by bisection."""
    if not r > 0:
        raise InvalidParameterError("r must be positive")
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid * (mid + 1.0) ** (2 * r) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def small_a_lower_bounds(a: float, r: float, s: int) -> SmallABound:
    """Dimension-driven lower bound on ``n_eps`` for ``0 < a < 1``.

    ``2**(s-1)`` when ``a <= a0``; otherwise the binary-entropy rate
    ``exp(H(alpha) s - ln s)``, which only holds up to an unspecified
    constant factor and is flagged asymptotic.
    """
    if not 0 < a < 1:
        raise DomainError(f"need 0 < a < 1, got a={a}")
    if int(s) != s or s < 1:
        raise InvalidParameterError("s must be a positive integer")
    a0 = solve_a0(r)
    if a <= a0:
        lv = (s - 1) * math.log(2.0)
        return SmallABound(a0, _bound("bound:small_a_binary", "lower", lv, True), False)
    alpha = math.log(1 / a) / math.log((a + 1) ** (2 * r) / a)
    H = -alpha * math.log(alpha) - (1 - alpha) * math.log(1 - alpha)
    lv = H * s - math.log(s)
    b = _bound("bound:small_a_entropy", "lower", lv, False, "asymptotic, up to O(1) in the exponent")
    return SmallABound(a0, b, True)


def normalized_error_transform(sp: SmoothnessParams, N: int | None = None,
                               eps: float | None = None) -> NormalizedQuery:
    """Map a normalized-criterion query to the absolute criterion.

    The normalized ball is the absolute one scaled by ``a**(r s)``, so
    ``d_N`` scales by that factor and ``n_eps`` of the normalized ball equals
    ``n_{eps'}`` of the absolute one with ``eps' = a**(-r s) eps``.
    """
    if (N is None) == (eps is None):
        raise InvalidParameterError("give exactly one of N or eps")
    scale = sp.a ** (sp.r * sp.s)
    if N is not None:
        return NormalizedQuery(sp, scale, N=N)
    if not eps > 0:
        raise InvalidParameterError("eps must be positive")
    e_abs = eps / scale
    note = "eps' > 1: the normalized query is trivial" if e_abs > 1 else ""
    return NormalizedQuery(sp, scale, eps=eps, eps_absolute=e_abs, note=note)


def normalized_n_eps(sp: SmoothnessParams, eps: float, cap: int | None = None) -> int:
    """``n_eps`` of the normalized ball via the absolute-criterion oracle."""
    q = normalized_error_transform(sp, eps=eps)
    T = q.eps_absolute ** (-1.0 / sp.r)
    cap = default_cap() if cap is None else cap
    n = cardinality(sp.s, T, sp.a, sp.cross_kind, strict=True)
    if n > cap:
        raise EnumerationOverflowError(cap, n)
    return n
