"""Command-line front end: ``hypercross <command> [flags]``.

Every list-valued flag takes comma-separated values and the command sweeps
the cartesian product. Standard output carries only the report; progress
goes to standard error.

JSON output is a list of records, one per grid point, each with a
``provenance`` map naming where every number came from (``exact``,
``oracle`` or ``bound:<label>``). CSV output is long-form with the fixed
column order in :data:`CSV_COLUMNS`, one row per reported number.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from . import bounds, counting, spectral, verify, widths
from .counting import Kind
from .errors import HypercrossError
from .volume import log_excess, volume, volume_bounds
from .widths import WidthKind

CSV_COLUMNS = ("command", "s", "T", "a", "r", "N", "eps", "delta", "q", "kind",
               "quantity", "value", "provenance")
PARAM_KEYS = ("s", "T", "a", "r", "N", "eps", "delta", "q", "kind")
PROGRESS_MIN = 20


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parsing

def _list(conv: Callable) -> Callable[[str], list]:
    def parse(text: str) -> list:
        try:
            return [conv(x) for x in str(text).split(",") if x.strip()]
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return parse


def _int(x):
    v = float(x)
    if v != int(v):
        raise ValueError(f"expected an integer, got {x!r}")
    return int(v)


LIST_FLAGS: dict[str, Callable] = {
    "s": _int, "T": float, "eps": float, "N": _int, "a": float, "r": float,
    "delta": float, "q": float,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypercross", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        for name, conv in LIST_FLAGS.items():
            sp.add_argument(f"--{name}", type=_list(conv), default=None,
                            help="comma-separated list")
        sp.add_argument("--kind", choices=[k.value for k in Kind], default=None)
        sp.add_argument("--format", choices=["json", "csv"], default=None)
        sp.add_argument("--cap", type=int, default=None, help="lattice enumeration cap")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--horizon", type=float, default=None)
        sp.add_argument("--config", default=None, help="JSON file of flag values")
        sp.add_argument("--workers", type=int, default=None)

    for name, help_ in (("count", "exact counts with all count bounds"),
                        ("volume", "smooth-cross volume and its bracket"),
                        ("bounds", "sandwich verdicts and threshold search"),
                        ("widths", "exact d_N / n_eps with explicit bounds"),
                        ("tract", "tractability classes over an a-grid"),
                        ("approx", "Jackson/Bernstein reports and Jacobi demos")):
        common(sub.add_parser(name, help=help_))
    ap = sub.choices["approx"]
    ap.add_argument("--alpha", type=float, default=None)
    ap.add_argument("--beta", type=float, default=None)
    ap.add_argument("--sets", type=int, default=None, help="random coefficient sets per point")
    vp = sub.add_parser("verify", help="run the acceptance suite")
    vp.add_argument("--suite", choices=sorted(verify.SUITES), default="all")
    vp.add_argument("--format", choices=["json", "csv"], default="json")
    vp.add_argument("--workers", type=int, default=1)
    vp.add_argument("--config", default=None)
    return p


DEFAULTS = {
    "count": {"s": [2], "T": [10.0], "a": [1.0], "delta": [0.5, 1.0], "kind": "corner"},
    "volume": {"s": [2], "T": [10.0], "a": [1.0]},
    "bounds": {"s": [2], "T": [10.0], "a": [1.0], "delta": [0.5, 0.75, 1.0]},
    "widths": {"s": [2], "a": [1.5], "r": [1.0], "kind": "symmetric"},
    "tract": {"a": [0.5, 1.0, 1.2, 2.0], "r": [1.0], "eps": [0.5], "s": list(range(1, 9)),
              "kind": "symmetric"},
    "approx": {"s": [2], "T": [8.0], "a": [1.0], "r": [1.0], "kind": "symmetric"},
}
SCALARS = {"kind": "corner", "format": "json", "cap": None, "seed": 0, "horizon": None,
           "workers": 1, "alpha": None, "beta": None, "sets": 5}


def resolve(args: argparse.Namespace) -> dict:
    """Flags override the config file, which overrides the command defaults."""
    cfg: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(raw, dict):
            raise UsageError("config must be a JSON object")
        for k, v in raw.items():
            if k in LIST_FLAGS:
                vals = v if isinstance(v, list) else _list(str)(str(v))
                try:
                    cfg[k] = [LIST_FLAGS[k](x) for x in vals]
                except (TypeError, ValueError) as exc:
                    raise UsageError(f"config key {k}: {exc}") from None
            elif k in SCALARS or k == "suite":
                cfg[k] = v
            else:
                raise UsageError(f"unknown config key {k!r}")
    out = dict(SCALARS)
    out.update(DEFAULTS.get(args.command, {}))
    out.update(cfg)
    for k, v in vars(args).items():
        if v is not None and k not in ("config", "command"):
            out[k] = v
    for k in LIST_FLAGS:
        if k in out and isinstance(out[k], list) and not out[k]:
            raise UsageError(f"--{k} must not be empty")
    if out.get("cap") is not None and out["cap"] <= 0:
        raise UsageError("--cap must be positive")
    if out.get("workers", 1) < 1:
        raise UsageError("--workers must be at least 1")
    out["kind"] = Kind(out["kind"]).value if "kind" in out else "corner"
    return out


def _require(cfg, *keys):
    for k in keys:
        if not cfg.get(k):
            raise UsageError(f"--{k} is required for {cfg['command']}")


# ---------------------------------------------------------------------------
# per-point evaluators; each returns (params, [(quantity, value, provenance)])

def _num(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def _try(rows, fn):
    try:
        rows.extend(fn())
    except HypercrossError:
        pass


def eval_count(point):
    s, T, a, kind, deltas = point
    k = Kind(kind)
    rows = [("exact", counting.cardinality(s, T, a, k), "exact")]
    v = volume(s, T, a)
    rows.append(("volume", v.value, "oracle"))
    rows.append(("count_shift_a+1", counting.cardinality(s, T, a + 1.0, k), "exact"))
    if v.value > 0:
        b = volume_bounds(s, T, a)
        rows += [("volume_lower", b.lower, "bound:volume_lower"),
                 ("volume_upper", b.upper, "bound:volume_upper")]
    if k is Kind.SYMMETRIC and a > 0.5 and T >= 1:
        rep = bounds.symmetric_sandwich(s, T, a)
        rows += [("symmetric_lower", rep.lower_expr.value, rep.lower_expr.label),
                 ("symmetric_upper", rep.upper_expr.value, rep.upper_expr.label)]
    for d in deltas:
        def delta_rows(d=d):
            b = bounds.upper_bound_delta(s, T, a, d)
            e = bounds.exponential_upper(s, T, a, d)
            pick = 1 if k is Kind.SYMMETRIC else 0
            return [(f"upper_volume_shift(delta={d:g})", b[pick],
                     f"bound:volume_shift(delta={d:g})"),
                    (f"upper_exponential(delta={d:g})", e[pick],
                     f"bound:exponential(delta={d:g})")]
        _try(rows, delta_rows)
    if k is Kind.CORNER and a > 0.5:
        b = bounds.corner_upper_asymptotic(s, T, a)
        rows.append(("corner_asymptotic", b.value, b.label + "(threshold unchecked)"))
    return rows


def eval_volume(point):
    s, T, a = point
    v = volume(s, T, a)
    rows = [("volume", v.value, "oracle"), ("log_volume", v.log_value, "oracle"),
            ("log_excess", log_excess(s, T, a), "exact")]
    if v.value > 0:
        b = volume_bounds(s, T, a)
        rows += [("volume_lower", b.lower, "bound:volume_lower"),
                 ("volume_upper", b.upper, "bound:volume_upper")]
    return rows


def eval_bounds(point):
    s, T, a, deltas, horizon = point
    rows = []
    r = bounds.shift_sandwich(s, T, a)
    rows.append(("count_volume_shift_holds", r.holds, "exact" if r.vacuous else "oracle"))
    rows.append(("volume_bracket_holds", bounds.volume_sandwich(s, T, a).holds, "oracle"))
    if a > 0.5 and T >= 1:
        rows.append(("symmetric_volume_holds", bounds.symmetric_sandwich(s, T, a).holds,
                     "oracle"))
    for d in deltas:
        for kind in Kind:
            def dom(d=d, kind=kind):
                x = bounds.verify_upper_bound_delta(s, T, a, d, kind)
                y = bounds.verify_exponential_upper(s, T, a, d, kind)
                return [(f"volume_shift_{kind.value}(delta={d:g})_holds", x.holds, x.bound.label),
                        (f"exponential_{kind.value}(delta={d:g})_holds", y.holds, y.bound.label)]
            _try(rows, dom)
    if horizon is not None and a > 0.5:
        res = bounds.find_t_star(s, a, horizon)
        rows.append(("t_star", res.t_star if res.found else None, "oracle"))
        if res.found:
            ok, _ = bounds.check_t_star(res)
            rows.append(("t_star_recheck_holds", ok, "oracle"))
            b = bounds.corner_upper_asymptotic(s, T, a, res.t_star)
            rows.append(("corner_asymptotic", b.value,
                         b.label + ("" if b.valid else "(below threshold)")))
    if s >= 2:
        for kind in Kind:
            def inv(kind=kind):
                rep = bounds.verify_inverse_bounds(s, T, a, 1.0, kind)
                if not rep.applicable:
                    return []
                return [(f"inverse_{kind.value}_lower", rep.bounds.lower, "bound:inverse_lower"),
                        (f"inverse_{kind.value}_upper", rep.bounds.upper, "bound:inverse_upper"),
                        (f"inverse_{kind.value}_holds", rep.holds, "oracle")]
            _try(rows, inv)
    return rows


def eval_widths(point):
    s, a, r, kind, Ns, epss, qs, cap = point
    sp = widths.SmoothnessParams(r, a, s, kind)
    rows = []
    for N in Ns:
        rep = widths.width_report_N(sp, N, qs, cap)
        rows.append((f"d_N(N={N})", rep.exact, "exact"))
        rows += [(f"d_N(N={N}):{b.side}", b.value,
                  b.label + ("" if b.valid else "(not asserted)")) for b in rep.bounds]
    for e in epss:
        rep = widths.width_report_eps(sp, e, qs, cap)
        rows.append((f"n_eps(eps={e:g})", int(rep.exact), "exact"))
        rows += [(f"n_eps(eps={e:g}):{b.side}", b.value,
                  b.label + ("" if b.valid else "(not asserted)")) for b in rep.bounds]
    return rows


def eval_tract(point):
    a, r, kind, s_list, eps, cap = point
    v = widths.classify_tractability(a, r, kind, s_max=max(s_list), eps=eps, cap=cap)
    rows = [("class", v.cls.value, "bound:tractability_class"),
            ("p_exp_upper", v.p_exp_upper, "bound:tractability_exponent")]
    rows += [(f"n_eps(s={s})", n, "exact") for s, n in v.evidence if s in s_list]
    return rows


def eval_approx(point):
    s, T, a, r, kind, seed, n_sets, alpha, beta = point
    rows = []
    if Kind(kind) is Kind.CORNER and (alpha is not None or beta is not None):
        jp = spectral.JacobiParams(alpha or 0.0, beta or 0.0)
        d = spectral.nonperiodic_project_demo(jp, r, T, s=s)
        rows += [("jacobi_a", jp.a, "exact"), ("N", d.N, "exact"),
                 ("projection_error", d.error, "exact"),
                 ("korobov_norm", d.norm, "exact"),
                 ("jackson_ratio", d.jackson_ratio, "exact"),
                 ("gram_deviation", d.gram_deviation, "oracle"),
                 ("quadrature_error", d.quadrature_error, "oracle")]
        rows += [(f"applicable:{k}", v, "exact") for k, v in d.applicable.items()]
        return rows
    worst_j = worst_b = 0.0
    for i in range(n_sets):
        c = spectral.random_sparse(s, 12, seed + i, kind)
        if any(abs(x) for x in c.entries.values()):
            worst_j = max(worst_j, spectral.jackson_check(c, T, r, a))
        inside = spectral.project(c, T, a)
        if any(abs(x) for x in inside.entries.values()):
            worst_b = max(worst_b, spectral.bernstein_check(inside, T, r, a))
    rows += [("max_jackson_ratio", worst_j, "exact"), ("max_bernstein_ratio", worst_b, "exact")]
    if T >= 1:
        out = spectral.boundary_witness(s, T, a, kind)
        lam = spectral.lambda_a(out, a)
        rows.append(("boundary_jackson_ratio", (T / lam) ** r, "exact"))
        inn = spectral.interior_witness(s, T, a, kind)
        rows.append(("interior_bernstein_ratio", (spectral.lambda_a(inn, a) / T) ** r, "exact"))
    return rows


# ---------------------------------------------------------------------------
# grid construction and emission

def _points(cfg) -> tuple[Callable, list, list[dict]]:
    cmd = cfg["command"]
    kind = cfg["kind"]
    if cmd == "count":
        _require(cfg, "s", "T", "a")
        grid = list(itertools.product(cfg["s"], cfg["T"], cfg["a"]))
        pts = [(s, T, a, kind, tuple(cfg["delta"])) for s, T, a in grid]
        params = [dict(s=s, T=T, a=a, kind=kind) for s, T, a in grid]
        return eval_count, pts, params
    if cmd == "volume":
        _require(cfg, "s", "T", "a")
        grid = list(itertools.product(cfg["s"], cfg["T"], cfg["a"]))
        return eval_volume, grid, [dict(s=s, T=T, a=a) for s, T, a in grid]
    if cmd == "bounds":
        _require(cfg, "s", "T", "a")
        grid = list(itertools.product(cfg["s"], cfg["T"], cfg["a"]))
        pts = [(s, T, a, tuple(cfg["delta"]), cfg["horizon"]) for s, T, a in grid]
        return eval_bounds, pts, [dict(s=s, T=T, a=a) for s, T, a in grid]
    if cmd == "widths":
        _require(cfg, "s", "a", "r")
        if not cfg.get("N") and not cfg.get("eps"):
            raise UsageError("widths needs --N or --eps")
        wk = WidthKind.PERIODIC if kind == "symmetric" else WidthKind.NONPERIODIC
        grid = list(itertools.product(cfg["s"], cfg["a"], cfg["r"]))
        pts = [(s, a, r, wk, tuple(cfg.get("N") or ()), tuple(cfg.get("eps") or ()),
                tuple(cfg.get("q") or ()), cfg["cap"]) for s, a, r in grid]
        return eval_widths, pts, [dict(s=s, a=a, r=r, kind=kind) for s, a, r in grid]
    if cmd == "tract":
        _require(cfg, "a", "r", "s")
        wk = WidthKind.PERIODIC if kind == "symmetric" else WidthKind.NONPERIODIC
        eps = cfg["eps"]
        grid = list(itertools.product(cfg["a"], cfg["r"], eps))
        pts = [(a, r, wk, tuple(cfg["s"]), e, cfg["cap"]) for a, r, e in grid]
        return eval_tract, pts, [dict(a=a, r=r, eps=e, kind=kind) for a, r, e in grid]
    if cmd == "approx":
        _require(cfg, "s", "T", "a", "r")
        if kind == "symmetric" and (cfg["alpha"] is not None or cfg["beta"] is not None):
            raise UsageError("--alpha/--beta need --kind corner")
        grid = list(itertools.product(cfg["s"], cfg["T"], cfg["a"], cfg["r"]))
        pts = [(s, T, a, r, kind, cfg["seed"], cfg["sets"], cfg["alpha"], cfg["beta"])
               for s, T, a, r in grid]
        return eval_approx, pts, [dict(s=s, T=T, a=a, r=r, kind=kind) for s, T, a, r in grid]
    raise UsageError(f"unknown command {cmd}")


def _progress(i, n):
    if n >= PROGRESS_MIN:
        print(f"\r{i}/{n}", end="" if i < n else "\n", file=sys.stderr, flush=True)


def _run_grid(fn, pts, workers):
    n = len(pts)
    if workers <= 1 or n < 2:
        out = []
        for i, p in enumerate(pts, 1):
            out.append(fn(p))
            _progress(i, n)
        return out
    with ProcessPoolExecutor(max_workers=workers) as pool:
        out = []
        for i, rows in enumerate(pool.map(fn, pts, chunksize=max(1, n // (4 * workers))), 1):
            out.append(rows)
            _progress(i, n)
        return out


def emit(command: str, params: Sequence[dict], results: Sequence[list], fmt: str,
         stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        records = []
        for p, rows in zip(params, results):
            rec = dict(p)
            for q, v, _ in rows:
                rec[q] = _num(v)
            rec["provenance"] = {q: prov for q, _, prov in rows}
            records.append(rec)
        json.dump(records[0] if len(records) == 1 else records, stream, indent=2)
        stream.write("\n")
        return
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for p, rows in zip(params, results):
        base = [command] + [p.get(k, "") for k in PARAM_KEYS]
        for q, v, prov in rows:
            w.writerow(base + [q, _num(v), prov])


def cmd_verify(cfg) -> int:
    numbers = verify.SUITES[cfg.get("suite", "all")]

    def progress(res):
        print(res.line(), file=sys.stderr, flush=True)

    results = verify.run_suite(numbers, workers=cfg.get("workers", 1), progress=progress)
    if cfg.get("format", "json") == "json":
        json.dump([{"criterion": r.number, "name": r.name, "passed": r.passed,
                    "checks": r.checks, "seconds": round(r.seconds, 3), "detail": r.detail}
                   for r in results], sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(("criterion", "name", "passed", "checks", "seconds", "detail"))
        for r in results:
            w.writerow((r.number, r.name, r.passed, r.checks, f"{r.seconds:.3f}", r.detail))
    failed = [r for r in results if not r.passed]
    if failed:
        f = failed[0]
        print(f"first violated: criterion {f.number} ({f.name})", file=sys.stderr)
        return 1
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        cfg["command"] = args.command
        if args.command == "verify":
            return cmd_verify(cfg)
        fn, pts, params = _points(cfg)
        results = _run_grid(fn, pts, cfg["workers"])
    except (UsageError, HypercrossError) as exc:
        print(f"hypercross {args.command}: error: {exc}", file=sys.stderr)
        return 2
    emit(args.command, params, results, cfg["format"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
