"""Benchmark the period-scan backends against each other.

The scan walks all q^n - 1 powers of the field generator, binning trace
values by coset; it dominates end-to-end runtime for large fields, so this
is the kernel worth compiling. Usage:

    python bench/bench_scan.py --p 19 --q 5 --repeat 3
    python bench/bench_scan.py --p 23 --q 3 --backends numba numpy python
"""

import argparse
import time

import numpy as np

from eigenvanish import CyclotomicSetup, build_field
from eigenvanish._scan import HAVE_NUMBA, scan_counts
from eigenvanish.ffield import generator_recurrence


def bench(p, q, backends, repeat, cap):
    setup = CyclotomicSetup.create(p, q)
    ctx = build_field(setup, cap=cap)
    rec, seed = generator_recurrence(ctx)
    print(f"p={p} q={q} n={setup.n}: scanning {ctx.order:,} elements")

    reference = None
    for backend in backends:
        if backend == "numba" and not HAVE_NUMBA:
            print(f"  {backend:>6}: unavailable")
            continue
        # one warm-up pass so numba's compile time is reported separately
        t0 = time.perf_counter()
        counts = scan_counts(rec, seed, ctx.order, p, q, backend=backend)
        warm = time.perf_counter() - t0
        times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            counts = scan_counts(rec, seed, ctx.order, p, q, backend=backend)
            times.append(time.perf_counter() - t0)
        if reference is None:
            reference = counts
        elif not np.array_equal(reference, counts):
            raise SystemExit(f"backend {backend} disagrees with {backends[0]}")
        best = min(times)
        rate = ctx.order / best / 1e6
        print(
            f"  {backend:>6}: best {best:8.4f} s over {repeat} runs "
            f"({rate:7.1f} M elem/s, first call {warm:.4f} s)"
        )
    print("  all backends bit-identical" if reference is not None else "")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=19)
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--field-cap", type=int, default=1 << 27)
    ap.add_argument(
        "--backends", nargs="+",
        default=["numba", "numpy"] if HAVE_NUMBA else ["numpy"],
        choices=["numba", "numpy", "python"],
    )
    args = ap.parse_args(argv)
    bench(args.p, args.q, args.backends, args.repeat, args.field_cap)


if __name__ == "__main__":
    main()
