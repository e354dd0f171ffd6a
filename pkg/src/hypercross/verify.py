"""Acceptance suite: each criterion is a function returning a :class:`CriterionResult`.

The suite is shared by ``hypercross verify`` and the test-suite, so both
report the same verdicts.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .bounds import (T_STAR_RATIO, check_t_star, find_t_star, shift_sandwich,
                     symmetric_sandwich, verify_exponential_upper, verify_inverse_bounds,
                     verify_upper_bound_delta, volume_sandwich)
from .counting import (CrossParams, Kind, cardinality, count_bruteforce,
                       count_by_support_decomposition, count_recursive)
from .errors import DomainError
from .remainder import power_term_log, remainder_bounds, remainder_series, remainder_stable
from .spectral import (JacobiParams, bernstein_check, gauss_jacobi, gram_deviation,
                       jackson_check, nonperiodic_project_demo, project, random_sparse)
from .volume import volume, volume_quadrature_oracle
from .widths import (SmoothnessParams, TractabilityClass, WidthKind, _cond_N,
                     classify_tractability, dN_bounds_sharp, dN_upper_q, exact_dN,
                     exact_n_eps, jump_ratios, n_eps_bounds_sharp, spectrum_thresholds,
                     width_report_eps, width_report_N)

GRID_A = (0.5, 0.75, 1.0, 1.5, 2.0, 3.0)
GRID_T_MAX = 200.0
# the witness search needs a finer grid than the default to avoid stepping
# over late violations
WITNESS_RATIO = T_STAR_RATIO ** (1 / 16)
WITNESS_HORIZON = 1e6
QUAD_TOL = 1e-7


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    checks: int
    seconds: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number:>2} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def t_grid(s: int, a: float, n: int = 40) -> list[float]:
    """``n`` geometric values spanning ``[a**s / 2, 200]``."""
    lo = 0.5 * a ** s
    return [lo * (GRID_T_MAX / lo) ** (i / (n - 1)) for i in range(n)]


def _summary(checks, bad, examples):
    if not bad:
        return f"{checks} checks, 0 violations"
    return f"{checks} checks, {bad} violations; first: {examples[0]}"


# ---------------------------------------------------------------------------

def c1_counting() -> tuple[bool, str, int]:
    checks = bad = 0
    ex = []
    t0 = time.perf_counter()
    for kind in Kind:
        for s in range(1, 5):
            for a in GRID_A:
                for T in t_grid(s, a):
                    p = CrossParams(s, T, a, kind)
                    x = count_recursive(p).exact
                    y = count_by_support_decomposition(p).exact
                    z = count_bruteforce(p, cap=10 ** 8).exact
                    checks += 1
                    if not x == y == z:
                        bad += 1
                        ex.append((kind.value, s, a, T, x, y, z))
    dt = time.perf_counter() - t0
    ok = not bad and dt <= 60
    return ok, _summary(checks, bad, ex) + f", counting time {dt:.1f}s (limit 60s)", checks


def c2_spot_values() -> tuple[bool, str, int]:
    want = [((2, 10, 1, Kind.CORNER), 27), ((2, 10, 1, Kind.SYMMETRIC), 69),
            ((2, 10, 2, Kind.CORNER), 8)]
    got = []
    for (s, T, a, kind), n in want:
        b = count_bruteforce(CrossParams(s, T, a, kind)).exact
        got.append((b, cardinality(s, T, a, kind), n))
    ok = all(b == c == n for b, c, n in got)
    return ok, "counts " + ", ".join(f"{c}/{n}" for _, c, n in got), len(want)


def c3_remainder() -> tuple[bool, str, int]:
    ts = [1e-3 * (2e5) ** (i / 49) for i in range(50)]
    checks = bad = 0
    worst_series = worst_id = 0.0
    ex = []
    for s in range(1, 61):
        for t in ts:
            st = remainder_stable(s, t)
            br = remainder_bounds(s, t)
            ser = remainder_series(s, t)
            nxt = remainder_stable(s + 1, t)
            e_series = abs(st.log_value - ser.log_value)
            # p_s = F_s + F_{s+1}, compared in log space
            lp = power_term_log(s, t)
            m = max(st.log_value, nxt.log_value)
            lsum = m + math.log(math.exp(st.log_value - m) + math.exp(nxt.log_value - m))
            e_id = abs(math.expm1(lsum - lp))
            worst_series = max(worst_series, e_series)
            worst_id = max(worst_id, e_id)
            encl = br.log_lower < st.log_value < br.log_upper
            checks += 3
            if not encl or e_series > 1e-10 or e_id > 1e-10:
                bad += 1
                ex.append((s, t, encl, e_series, e_id))
    detail = (_summary(checks, bad, ex)
              + f"; max stable-vs-series {worst_series:.1e}, max identity error {worst_id:.1e}")
    return not bad, detail, checks


def c4_volume() -> tuple[bool, str, int]:
    checks = bad = 0
    worst = 0.0
    ex = []
    for s in range(1, 5):
        for a in GRID_A:
            for T in t_grid(s, a):
                if T <= a ** s:
                    continue
                v = volume(s, T, a).value
                q = volume_quadrature_oracle(s, T, a, tol=QUAD_TOL).value
                err = abs(v / q - 1.0)
                worst = max(worst, err)
                checks += 1
                if err > 1e-6:
                    bad += 1
                    ex.append((s, a, T, v, q))
    e = abs(volume(2, math.e, 1.0).value - 1.0)
    checks += 1
    if e > 1e-9:
        bad += 1
        ex.append(("I(2,e,1)", e))
    return not bad, _summary(checks, bad, ex) + f"; max rel err {worst:.1e}, |I(2,e,1)-1| = {e:.1e}", checks


def c5_sandwiches() -> tuple[bool, str, int]:
    checks = bad = 0
    ex = []

    def record(ok, what):
        nonlocal checks, bad
        checks += 1
        if not ok:
            bad += 1
            ex.append(what)

    for s in range(1, 5):
        for a in GRID_A:
            for T in t_grid(s, a):
                if T <= a ** s:
                    continue  # degenerate: empty smooth cross
                r = shift_sandwich(s, T, a)
                record(r.holds, ("count_volume_shift", s, a, T))
                record(volume_sandwich(s, T, a).holds, ("volume_bracket", s, a, T))
                if a > 0.5 and T >= 1:
                    r = symmetric_sandwich(s, T, a)
                    if not r.vacuous:
                        record(r.holds, ("symmetric_volume", s, a, T))
                for d in (0.5, 0.75, 1.0):
                    if not (a > d and T >= d ** s):
                        continue
                    for kind in Kind:
                        r = verify_upper_bound_delta(s, T, a, d, kind)
                        if not r.vacuous:
                            record(r.holds, ("volume_shift_delta", kind.value, s, a, T, d))
                        r = verify_exponential_upper(s, T, a, d, kind)
                        if not r.vacuous:
                            record(r.holds, ("exponential", kind.value, s, a, T, d))
    return not bad, _summary(checks, bad, ex), checks


def c6_witness(ratio: float = WITNESS_RATIO, horizon: float = WITNESS_HORIZON
               ) -> tuple[bool, str, int]:
    parts = []
    ok_all = True
    checks = 0
    for s in (1, 2, 3):
        for a in (1.0, 1.5):
            res = find_t_star(s, a, horizon, ratio=ratio)
            checks += res.samples_checked
            if not res.found:
                ok_all = False
                parts.append(f"(s={s},a={a:g}) no witness, last violation T={res.last_violation:.6g}")
                continue
            ok, fails = check_t_star(res, samples=200)
            checks += 200
            if not ok:
                ok_all = False
                parts.append(f"(s={s},a={a:g}) t*={res.t_star:.6g} fails at {len(fails)} "
                             f"fresh samples, e.g. T={fails[0]:.6g}")
            else:
                parts.append(f"(s={s},a={a:g}) t*={res.t_star:.6g}")
    return ok_all, "; ".join(parts), checks


def c7_width_sandwich() -> tuple[bool, str, int]:
    checks = 0
    fails = {"threshold": [], "n_eps": [], "jump": []}
    worst_jump = 0.0
    Ts = [1.5 * 80.0 ** (i / 19) * math.exp(1e-6) for i in range(20)]
    for kind in WidthKind:
        for s in (1, 2, 3):
            for a in (0.75, 1.0, 2.0):
                spec = None
                for r in (0.5, 1.0, 2.0):
                    sp = SmoothnessParams(r, a, s, kind)
                    spec = spectrum_thresholds(sp, GRID_T_MAX)
                    for v, N in zip(spec.values, spec.counts):
                        N = int(N)
                        d_n = exact_dN(sp, N)
                        d_prev = exact_dN(sp, N - 1)
                        checks += 1
                        if not d_n <= v ** -r <= d_prev:
                            fails["threshold"].append((kind.value, s, a, r, float(v)))
                    for T in Ts:
                        eps = T ** -r
                        n = exact_n_eps(sp, eps)
                        g = cardinality(s, T, a, sp.cross_kind)
                        checks += 1
                        if not g - 1 <= n <= g:
                            fails["n_eps"].append((kind.value, s, a, r, eps, n, g))
                j = jump_ratios(spec)
                if len(j):
                    checks += len(j)
                    m = float(j.max())
                    worst_jump = max(worst_jump, m)
                    if m > 2.0:
                        fails["jump"].append((kind.value, s, a, round(m, 4)))
    bad = {k: v for k, v in fails.items() if v}
    if not bad:
        return True, f"{checks} checks, 0 violations; max jump ratio {worst_jump:.3f}", checks
    desc = "; ".join(f"{k}: {len(v)} failures, e.g. {v[0]}" for k, v in bad.items())
    return False, f"{checks} checks; {desc}", checks


def _c8_width_grid():
    Ns = sorted({int(round(1.6 ** i)) for i in range(22)})
    checks = bad = 0
    ex = []
    for kind in WidthKind:
        qs = (2, 3, 4, 6) if kind is WidthKind.PERIODIC else (1, 1.5, 2, 3, 4)
        for s in (1, 2, 3):
            for a in (0.75, 1.0, 1.5, 2.0):
                for r in (0.5, 1.0, 2.0):
                    sp = SmoothnessParams(r, a, s, kind)
                    reps = [width_report_N(sp, N, qs) for N in Ns]
                    reps += [width_report_eps(sp, e, qs) for e in (0.5, 0.1, 0.01)]
                    for rep in reps:
                        for b in rep.bounds:
                            if not b.valid:
                                continue
                            checks += 1
                            if not b.brackets(rep.exact):
                                bad += 1
                                ex.append((kind.value, s, a, r, rep.query, b.label))
    return checks, bad, ex


def _c8_inverse_grid():
    checks = bad = 0
    ex = []
    for s in (2, 3, 4):
        for a in (0.75, 1.0, 1.5, 2.0, 3.0):
            ts = None
            if a > 0.5:
                ts = find_t_star(s, a, GRID_T_MAX * 1.01, ratio=WITNESS_RATIO).t_star
            for T in t_grid(s, a):
                for kind in Kind:
                    for d in ((0.5, 0.75, 1.0) if kind is Kind.CORNER else (1.0,)):
                        if kind is Kind.CORNER and not a > d:
                            continue
                        rep = verify_inverse_bounds(s, T, a, d, kind, ts)
                        if rep.applicable:
                            checks += 1
                            if not rep.holds:
                                bad += 1
                                ex.append((kind.value, s, a, T, d))
    return checks, bad, ex


def _c8_flags():
    """Validity flags against the stated preconditions."""
    checks = 0
    ex = []

    def expect(cond, what):
        nonlocal checks
        checks += 1
        if not cond:
            ex.append(what)

    for r in (0.5, 1.0):
        for a in (0.75, 1.5, 2.0):
            for s in (2, 3):
                sp = SmoothnessParams(r, a, s, WidthKind.PERIODIC)
                for eps in (0.9, 0.5, 0.1, 0.01):
                    bs = {(b.label, b.side): b for b in n_eps_bounds_sharp(sp, eps)}
                    up = bs[("bound:n_eps_sharp_periodic", "upper")]
                    lo = bs[("bound:n_eps_sharp_periodic", "lower")]
                    expect(up.valid == (not math.isnan(up.value) and eps < (a - 0.5) ** (-s * r)),
                           ("periodic n_eps upper flag", s, a, r, eps))
                    expect(lo.valid == (not math.isnan(lo.value) and eps < (a + 0.5) ** (-s * r)),
                           ("periodic n_eps lower flag", s, a, r, eps))
                cond = _cond_N(s, a)
                for N in (1, 10, 1000, 100000):
                    ub = [b for b in dN_bounds_sharp(sp, N) if b.side == "upper"][0]
                    expect(math.isnan(ub.value) or ub.valid == (N >= cond),
                           ("periodic dN upper flag", s, a, r, N))
                spn = SmoothnessParams(r, a, s, WidthKind.NONPERIODIC)
                labels = {b.label for b in n_eps_bounds_sharp(spn, 0.1)}
                expect(("bound:n_eps_sharp_nonperiodic(a-1)" in labels) == (a > 1),
                       ("nonperiodic a-1 presence", s, a, r))
    for kind, q, a, raises in ((WidthKind.PERIODIC, 1.5, 2.0, True),
                               (WidthKind.PERIODIC, 2.0, 1.0, True),
                               (WidthKind.PERIODIC, 4.0, 1.0, False),
                               (WidthKind.NONPERIODIC, 0.5, 2.0, True),
                               (WidthKind.NONPERIODIC, 1.0, 1.0, True),
                               (WidthKind.NONPERIODIC, 2.0, 1.0, False)):
        try:
            dN_upper_q(SmoothnessParams(1.0, a, 2, kind), 5, q)
            got = False
        except DomainError:
            got = True
        expect(got == raises, ("q-bound domain", kind.value, q, a))
    for a, s in ((0.5, 2), (1.0, 1)):
        try:
            dN_bounds_sharp(SmoothnessParams(1.0, a, s), 10)
            got = False
        except DomainError:
            got = True
        expect(got, ("sharp domain", a, s))
    rep = verify_inverse_bounds(2, 3.0, 2.0, 1.0, Kind.CORNER)
    expect(not rep.applicable, ("inverse below threshold",))
    return checks, ex


def c8_explicit_bounds() -> tuple[bool, str, int]:
    c1, b1, e1 = _c8_width_grid()
    c2, b2, e2 = _c8_inverse_grid()
    c3, e3 = _c8_flags()
    parts = [f"width bounds {c1} valid checks, {b1} violations",
             f"inverse bounds {c2} applicable checks, {b2} violations",
             f"validity flags {c3} checks, {len(e3)} mismatches"]
    first = (e1 or e2 or e3 or [None])[0]
    ok = not (b1 or b2 or e3)
    detail = "; ".join(parts) + ("" if ok else f"; first: {first}")
    return ok, detail, c1 + c2 + c3


def c9_tractability(cap: int = 10 ** 9) -> tuple[bool, str, int]:
    expected = {0.5: TractabilityClass.INTRACTABLE, 1.0: TractabilityClass.WEAK,
                1.2: TractabilityClass.EXPONENTIAL, 2.0: TractabilityClass.EXPONENTIAL}
    problems = []
    checks = 0
    for a, cls in expected.items():
        v = classify_tractability(a, 1.0, WidthKind.PERIODIC, s_max=12, eps=0.5, cap=cap)
        checks += 1
        if v.cls is not cls:
            problems.append(f"a={a:g}: {v.cls.value} != {cls.value}")
        counts = [n for _, n in v.evidence]
        if a == 0.5:
            low = [(s, n) for s, n in v.evidence if n < 2 ** (s - 1)]
            checks += len(counts)
            if low:
                problems.append(f"a=0.5 counts below 2^(s-1): {low}")
        if a == 2.0:
            checks += len(counts) - 1
            if any(y > x for x, y in zip(counts, counts[1:])):
                problems.append(f"a=2 counts increase in s: {counts}")
    if problems:
        return False, "; ".join(problems), checks
    return True, f"{checks} checks; classes as expected, evidence consistent", checks


def c10_spectral(n_sets: int = 100) -> tuple[bool, str, int]:
    checks = bad = 0
    ex = []
    worst_j = worst_b = 0.0
    for s in (1, 2, 3):
        for r in (1.0, 2.0):
            for a in (1.0, 2.0):
                for seed in range(n_sets):
                    c = random_sparse(s, 12, seed)
                    rng = np.random.default_rng(10_000 + seed)
                    T = float(1.0 + 30.0 * rng.random())
                    if any(abs(v) for v in c.entries.values()):
                        j = jackson_check(c, T, r, a)
                        worst_j = max(worst_j, j)
                        checks += 1
                        if j > 1.0:
                            bad += 1
                            ex.append(("jackson", s, r, a, seed, j))
                    inside = project(c, T, a)
                    if len(inside) and any(abs(v) for v in inside.entries.values()):
                        b = bernstein_check(inside, T, r, a)
                        worst_b = max(worst_b, b)
                        checks += 1
                        if b > 1.0:
                            bad += 1
                            ex.append(("bernstein", s, r, a, seed, b))
    gram = {ab: gram_deviation(50, JacobiParams(*ab), 60)
            for ab in ((0.0, 0.0), (-0.5, -0.5), (1.0, 2.0))}
    for ab, g in gram.items():
        checks += 1
        if g > 1e-10:
            bad += 1
            ex.append(("gram", ab, g))
    x, w = gauss_jacobi(2, JacobiParams(0.0, 0.0))
    node_err = float(np.max(np.abs(x - np.array([-1, 1]) / math.sqrt(3))))
    checks += 1
    if node_err > 1e-12:
        bad += 1
        ex.append(("legendre nodes", node_err))
    for ab in ((0.0, 0.0), (1.0, 1.0), (0.5, 1.5)):
        d = nonperiodic_project_demo(JacobiParams(*ab), 1.0, 4.0, s=2)
        checks += 1
        if d.jackson_ratio > 1.0:
            bad += 1
            ex.append(("jacobi demo", ab, d.jackson_ratio))
    detail = (_summary(checks, bad, ex) + f"; max jackson {worst_j:.3f}, max bernstein "
              f"{worst_b:.3f}, max gram dev {max(gram.values()):.1e}, node err {node_err:.1e}")
    return not bad, detail, checks


CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, str, int]]]] = {
    1: ("counting_oracles", c1_counting),
    2: ("spot_values", c2_spot_values),
    3: ("remainder_bracket", c3_remainder),
    4: ("volume_oracle", c4_volume),
    5: ("count_volume_sandwiches", c5_sandwiches),
    6: ("corner_asymptotic_witness", c6_witness),
    7: ("width_sandwich", c7_width_sandwich),
    8: ("explicit_width_bounds", c8_explicit_bounds),
    9: ("tractability_classes", c9_tractability),
    10: ("spectral_checks", c10_spectral),
}

SUITES = {
    "all": tuple(CRITERIA),
    "quick": (2, 3, 5, 7, 9, 10),
    "counting": (1, 2),
    "volume": (3, 4, 5),
    "bounds": (5, 6, 8),
    "widths": (7, 8, 9),
    "spectral": (10,),
}


def run_criterion(number: int) -> CriterionResult:
    name, fn = CRITERIA[number]
    t0 = time.perf_counter()
    try:
        ok, detail, checks = fn()
    except Exception as exc:  # noqa: BLE001 - reported as a failure
        ok, detail, checks = False, f"raised {type(exc).__name__}: {exc}", 0
    return CriterionResult(number, name, ok, detail, checks, time.perf_counter() - t0)


def run_suite(numbers: Iterable[int], workers: int = 1,
              progress: Callable[[CriterionResult], None] | None = None
              ) -> list[CriterionResult]:
    """Run the given criteria; results come back in the order requested."""
    numbers = list(numbers)
    if workers <= 1:
        out = []
        for n in numbers:
            res = run_criterion(n)
            if progress:
                progress(res)
            out.append(res)
        return out
    # the slow criteria go first so the pool stays busy
    order = sorted(numbers, key=lambda n: n not in (4, 6, 1))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {n: pool.submit(run_criterion, n) for n in order}
        results = {}
        for n in order:
            results[n] = futures[n].result()
            if progress:
                progress(results[n])
    return [results[n] for n in numbers]
