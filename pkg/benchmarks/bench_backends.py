#!/usr/bin/env python3
"""Times the numeric inner loops on both backends.

The compiled extension and the pure-Python twin expose identical primitives;
this script measures coefficient-table generation, complex Horner evaluation
over a 512-point circle, and the full minimum-real-part circle scan.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import math
import time

from besselstruve import _pykernels

try:
    from besselstruve import _fastkernels
except ImportError:
    _fastkernels = None


def _time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions per measurement (best is kept)")
    args = parser.parse_args()

    backends = [("python", _pykernels)]
    if _fastkernels is not None:
        backends.append(("cython", _fastkernels))
    else:
        print("compiled backend not importable; timing pure Python only")

    coeffs = _pykernels.coefficient_table(0.5, 80)
    num = [0.0, 1.0] + [n * c for n, c in enumerate(coeffs[1:], start=2)]
    den = [0.0, 1.0] + list(coeffs[1:])

    cases = {
        "coefficient_table(nu=0.5, n=200) x100":
            lambda k: [k.coefficient_table(0.5, 200) for _ in range(100)],
        "horner(80 coeffs) x512 circle points":
            lambda k: [k.horner(coeffs, 0.99 * math.cos(t / 81.5),
                                0.99 * math.sin(t / 81.5))
                       for t in range(512)],
        "min_real_ratio_on_circle(512 points) x20":
            lambda k: [k.min_real_ratio_on_circle(num, den, 0.99, 512, 1e-12)
                       for _ in range(20)],
    }

    print(f"{'case':<45} " + " ".join(f"{n:>12}" for n, _ in backends)
          + ("      speedup" if len(backends) == 2 else ""))
    for label, fn in cases.items():
        times = [_time(lambda k=kern: fn(k), args.repeat)
                 for _, kern in backends]
        row = f"{label:<45} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"   {times[0] / times[1]:>8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
