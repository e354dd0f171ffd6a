"""Hyperbolic-cross projections of sparse spectral expansions.

Functions are represented only through finite coefficient maps: Fourier
coefficients on the symmetric lattice (periodic case) or orthonormal Jacobi
coefficients on the corner lattice (non-periodic case). Norms follow from
Parseval, so every error in this module is computed exactly on the
coefficient side. Jacobi polynomials and Gauss-Jacobi rules are provided to
check orthonormality numerically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

import numpy as np

from .counting import CrossParams, Kind, cardinality, enumerate_cross
from .errors import (DomainError, InvalidParameterError, NumericError,
                     SupportViolationError, UndefinedRatioError)

Index = tuple[int, ...]


def lambda_a(k: Iterable[int], a: float) -> float:
    """``prod(|k_j| + a)``, accumulated left to right like the counting kernels."""
    p = 1.0
    for kj in k:
        p *= abs(kj) + a
    return p


@dataclass(frozen=True)
class SparseCoefficients:
    s: int
    entries: Mapping[Index, complex]
    kind: Kind = Kind.SYMMETRIC

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        clean = {}
        for idx, v in self.entries.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != self.s:
                raise InvalidParameterError(f"index {idx} does not have length {self.s}")
            if kind is Kind.CORNER:
                if min(idx) < 0:
                    raise InvalidParameterError(f"corner index {idx} has a negative entry")
                if complex(v).imag != 0:
                    raise InvalidParameterError("non-periodic coefficients must be real")
            if not math.isfinite(abs(v)):
                raise InvalidParameterError(f"coefficient at {idx} is not finite")
            clean[idx] = complex(v)
        object.__setattr__(self, "entries", clean)

    def __len__(self) -> int:
        return len(self.entries)

    def scaled(self, factor: complex) -> SparseCoefficients:
        return SparseCoefficients(self.s, {k: factor * v for k, v in self.entries.items()},
                                  self.kind)

    def to_records(self) -> list[dict]:
        return [{"index": list(k), "re": v.real, "im": v.imag}
                for k, v in sorted(self.entries.items())]

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_records(cls, records: Iterable[Mapping], kind: Kind | str = Kind.SYMMETRIC,
                     s: int | None = None) -> SparseCoefficients:
        entries = {}
        for rec in records:
            idx = tuple(int(i) for i in rec["index"])
            entries[idx] = complex(float(rec.get("re", 0.0)), float(rec.get("im", 0.0)))
        if s is None:
            if not entries:
                raise InvalidParameterError("cannot infer s from an empty record list")
            s = len(next(iter(entries)))
        return cls(s, entries, kind)

    @classmethod
    def from_json(cls, text: str, kind: Kind | str = Kind.SYMMETRIC,
                  s: int | None = None) -> SparseCoefficients:
        return cls.from_records(json.loads(text), kind, s)


def l2_norm(c: SparseCoefficients) -> float:
    return math.sqrt(math.fsum(abs(v) ** 2 for v in c.entries.values()))


def korobov_norm(c: SparseCoefficients, r: float, a: float) -> float:
    """``sqrt(sum lambda_a(k)**(2r) |c_k|**2)``."""
    if not a > 0:
        raise InvalidParameterError("a must be positive")
    return math.sqrt(math.fsum(lambda_a(k, a) ** (2 * r) * abs(v) ** 2
                               for k, v in c.entries.items()))


def project(c: SparseCoefficients, T: float, a: float) -> SparseCoefficients:
    """Keep exactly the entries with ``lambda_a(k) <= T``."""
    kept = {k: v for k, v in c.entries.items() if lambda_a(k, a) <= T}
    return SparseCoefficients(c.s, kept, c.kind)


def residual(c: SparseCoefficients, T: float, a: float) -> SparseCoefficients:
    dropped = {k: v for k, v in c.entries.items() if lambda_a(k, a) > T}
    return SparseCoefficients(c.s, dropped, c.kind)


def jackson_check(c: SparseCoefficients, T: float, r: float, a: float) -> float:
    """``||c - P_T c|| / (T**-r ||c||_r)``; at most 1 for every ``c``."""
    if not T >= 1:
        raise DomainError(f"need T >= 1, got T={T}")
    norm = korobov_norm(c, r, a)
    if norm == 0:
        raise UndefinedRatioError("Korobov norm is zero")
    err = l2_norm(residual(c, T, a))
    return err / (T ** -r * norm)


def bernstein_check(c: SparseCoefficients, T: float, r: float, a: float) -> float:
    """``||c||_r / (T**r ||c||)`` for ``c`` supported in the cross; at most 1."""
    if not T >= 1:
        raise DomainError(f"need T >= 1, got T={T}")
    outside = [k for k in c.entries if lambda_a(k, a) > T]
    if outside:
        raise SupportViolationError(f"{len(outside)} entries outside the cross, e.g. {outside[0]}")
    base = l2_norm(c)
    if base == 0:
        raise UndefinedRatioError("coefficient norm is zero")
    return korobov_norm(c, r, a) / (T ** r * base)


def _members(s, T, a, kind):
    return list(enumerate_cross(CrossParams(s, T, a, kind)))


def boundary_witness(s: int, T: float, a: float, kind: Kind | str = Kind.SYMMETRIC) -> Index:
    """A lattice index with the smallest product strictly above ``T``."""
    kind = Kind(kind)
    hi = max(2.0 * T, a ** s * 2.0)
    while cardinality(s, hi, a, kind) == cardinality(s, T, a, kind):
        hi *= 2.0
    best = min((k for k in _members(s, hi, a, kind) if lambda_a(k, a) > T),
               key=lambda k: (lambda_a(k, a), k))
    return best


def interior_witness(s: int, T: float, a: float, kind: Kind | str = Kind.SYMMETRIC) -> Index:
    """A member of the cross with the largest product."""
    members = _members(s, T, a, Kind(kind))
    if not members:
        raise DomainError("the cross is empty")
    return max(members, key=lambda k: (lambda_a(k, a), k))


def random_sparse(s: int, n_terms: int, seed: int, kind: Kind | str = Kind.SYMMETRIC,
                  spread: int = 6) -> SparseCoefficients:
    """Reproducible random coefficient set with indices in ``[-spread, spread]``."""
    kind = Kind(kind)
    rng = np.random.default_rng(seed)
    lo = 0 if kind is Kind.CORNER else -spread
    entries = {}
    for _ in range(n_terms):
        # heavier weight on small indices, as in smooth functions
        idx = tuple(int(v) for v in np.clip(np.round(rng.standard_cauchy(s)), lo, spread))
        amp = rng.standard_normal()
        if kind is Kind.SYMMETRIC:
            amp = complex(amp, rng.standard_normal())
        entries[idx] = amp
    return SparseCoefficients(s, entries, kind)


# ---------------------------------------------------------------------------
# Jacobi polynomials

@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise InvalidParameterError("alpha and beta must exceed -1")

    @property
    def a(self) -> float:
        return (self.alpha + self.beta + 1) / 2

    @property
    def log_mass(self) -> float:
        """``log of the integral of (1-x)**alpha (1+x)**beta over [-1, 1]``."""
        al, be = self.alpha, self.beta
        return ((al + be + 1) * math.log(2.0) + math.lgamma(al + 1) + math.lgamma(be + 1)
                - math.lgamma(al + be + 2))


def jacobi_recurrence(n: int, jp: JacobiParams) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal ``a_0..a_{n-1}`` and off-diagonal ``b_1..b_{n-1}`` of the Jacobi matrix."""
    al, be = jp.alpha, jp.beta
    diag = np.empty(n)
    off = np.empty(max(n - 1, 0))
    for k in range(n):
        if k == 0:
            diag[0] = (be - al) / (al + be + 2)
        else:
            c = 2 * k + al + be
            diag[k] = (be * be - al * al) / (c * (c + 2))
    for k in range(1, n):
        c = 2 * k + al + be
        if k == 1:
            b2 = 4 * (1 + al) * (1 + be) / ((2 + al + be) ** 2 * (3 + al + be))
        else:
            b2 = 4 * k * (k + al) * (k + be) * (k + al + be) / (c * c * (c + 1) * (c - 1))
        off[k - 1] = math.sqrt(b2)
    return diag, off


def jacobi_eval(k: int, jp: JacobiParams, x):
    """Orthonormal Jacobi polynomial of degree ``k`` at ``x`` (scalar or array)."""
    if int(k) != k or k < 0:
        raise InvalidParameterError("degree must be a non-negative integer")
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1):
        raise DomainError("x must lie in [-1, 1]")
    p_prev = np.zeros_like(xa)
    p = np.full_like(xa, math.exp(-0.5 * jp.log_mass))
    if k:
        diag, off = jacobi_recurrence(k + 1, jp)
        b_prev = 0.0
        for n in range(k):
            p_next = ((xa - diag[n]) * p - b_prev * p_prev) / off[n]
            p_prev, p, b_prev = p, p_next, off[n]
    return float(p) if p.ndim == 0 else p


def jacobi_table(kmax: int, jp: JacobiParams, x) -> np.ndarray:
    """Rows ``p_0(x) .. p_kmax(x)``."""
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((kmax + 1, xa.size))
    out[0] = math.exp(-0.5 * jp.log_mass)
    diag, off = jacobi_recurrence(kmax + 1, jp)
    prev = np.zeros(xa.size)
    b_prev = 0.0
    for n in range(kmax):
        out[n + 1] = ((xa - diag[n]) * out[n] - b_prev * prev) / off[n]
        prev, b_prev = out[n], off[n]
    return out


def tridiagonal_eigenvalues(diag: np.ndarray, off: np.ndarray, max_iter: int = 60) -> np.ndarray:
    """Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL."""
    d = [float(v) for v in diag]
    n = len(d)
    e = [float(v) for v in off] + [0.0]
    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= 2.2e-16 * dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise NumericError("tridiagonal QL iteration did not converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return np.sort(np.array(d))


def gauss_jacobi(n: int, jp: JacobiParams) -> tuple[np.ndarray, np.ndarray]:
    """``n``-point Gauss-Jacobi nodes and weights (Golub-Welsch).

    Nodes are eigenvalues of the Jacobi matrix; weights use the Christoffel
    form ``1 / sum_k p_k(x_i)**2`` of the orthonormal polynomials.
    """
    if int(n) != n or n < 1:
        raise InvalidParameterError("n must be a positive integer")
    diag, off = jacobi_recurrence(n, jp)
    nodes = tridiagonal_eigenvalues(diag, off)
    nodes = np.clip(nodes, -1.0, 1.0)
    table = jacobi_table(n - 1, jp, nodes)
    weights = 1.0 / np.sum(table * table, axis=0)
    return nodes, weights


def gram_deviation(kmax: int, jp: JacobiParams, n_nodes: int) -> float:
    """``max |G - I|`` for the Gram matrix of ``p_0 .. p_kmax`` under the rule."""
    x, w = gauss_jacobi(n_nodes, jp)
    P = jacobi_table(kmax, jp, x)
    G = (P * w) @ P.T
    return float(np.max(np.abs(G - np.eye(kmax + 1))))


# ---------------------------------------------------------------------------
# non-periodic demo

@dataclass(frozen=True)
class ProjectionDemo:
    jp: JacobiParams
    s: int
    r: float
    T: float
    N: int
    terms: int
    error: float
    norm: float
    jackson_ratio: float
    gram_deviation: float
    quadrature_error: float | None
    applicable: dict = field(default_factory=dict)


def applicable_bounds(a: float) -> dict:
    """Which non-periodic estimates apply for shift ``a``."""
    return {
        "jackson_bernstein(a>0)": a > 0,
        "sharp_widths(a>1/2)": a > 0.5,
        "n_eps_upper(a-1)(a>1)": a > 1,
        "exponential_tractability(a>1)": a > 1,
        "simplified_n_eps(a>1)": a > 1,
    }


def _evaluate(c: SparseCoefficients, jp: JacobiParams, pts: np.ndarray) -> np.ndarray:
    """Tensor-product expansion at points of shape ``(m, s)``."""
    kmax = max(max(k) for k in c.entries) if c.entries else 0
    tables = [jacobi_table(kmax, jp, pts[:, j]) for j in range(c.s)]
    out = np.zeros(len(pts))
    for k, v in c.entries.items():
        term = np.full(len(pts), v.real)
        for j, kj in enumerate(k):
            term *= tables[j][kj]
        out += term
    return out


def nonperiodic_project_demo(jp: JacobiParams, r: float, T: float, s: int = 1,
                             coeff: Callable[[Index], float] | None = None,
                             support_factor: float = 4.0) -> ProjectionDemo:
    """Project a synthetic Jacobi expansion onto the corner cross at ``T``.

    ``coeff(k)`` defaults to ``lambda_a(k)**(-r-1)`` and is sampled on the
    corner cross at ``support_factor * T``. The L2(w) error is computed from
    coefficients and, for ``s <= 2``, also by tensor Gauss-Jacobi quadrature.
    """
    a = jp.a
    if not a > 0:
        raise DomainError(f"need a = (alpha+beta+1)/2 > 0, got {a}")
    if coeff is None:
        def coeff(k):
            return lambda_a(k, a) ** (-r - 1)
    members = _members(s, support_factor * T, a, Kind.CORNER)
    c = SparseCoefficients(s, {k: float(coeff(k)) for k in members}, Kind.CORNER)
    res = residual(c, T, a)
    err = l2_norm(res)
    norm = korobov_norm(c, r, a)
    ratio = jackson_check(c, T, r, a) if norm > 0 else 0.0
    kmax = max((max(k) for k in members), default=0)
    n_nodes = kmax + 2
    gd = gram_deviation(kmax, jp, n_nodes)
    qerr = None
    if s <= 2 and res.entries:
        x, w = gauss_jacobi(n_nodes, jp)
        grids = np.meshgrid(*([x] * s), indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1)
        wts = np.ones(len(pts))
        for g in np.meshgrid(*([w] * s), indexing="ij"):
            wts *= g.ravel()
        vals = _evaluate(res, jp, pts)
        qerr = math.sqrt(float(np.sum(wts * vals * vals)))
    elif s <= 2:
        qerr = 0.0
    N = cardinality(s, T, a, Kind.CORNER)
    return ProjectionDemo(jp, s, r, T, N, len(c), err, norm, ratio, gd, qerr,
                          applicable_bounds(a))
