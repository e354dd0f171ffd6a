"""Compare the compiled and pure-Python counting kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import timeit

from hypercross import _kernels_py
from hypercross._backend import compiled

CASES = [
    # (s, T, a, symmetric)
    (2, 1e5, 1.0, False),
    (4, 2e3, 1.0, True),
    (8, 50.0, 0.75, False),
    (10, 2.0, 0.5, True),
]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        raise SystemExit("compiled kernels are not built; run pip install -e .")
    print(f"{'kernel':<15}{'s':>3}{'T':>9}{'a':>6}{'sym':>6}{'count':>12}"
          f"{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name in ("count_cross", "cross_products"):
        for s, T, a, sym in CASES:
            py = getattr(_kernels_py, name)
            cy = getattr(compiled, name)
            n = compiled.count_cross(s, T, a, sym, False)
            if name == "cross_products" and n > 3_000_000:
                continue
            ref, got = py(s, T, a, sym, False), cy(s, T, a, sym, False)
            if name == "count_cross":
                assert ref == got
            else:
                assert len(ref[0]) == len(got[0])
            tp = best(lambda: py(s, T, a, sym, False), args.repeat)
            tc = best(lambda: cy(s, T, a, sym, False), args.repeat)
            print(f"{name:<15}{s:>3}{T:>9g}{a:>6g}{str(sym):>6}{n:>12}"
                  f"{tp:>11.4f}{tc:>11.4f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
