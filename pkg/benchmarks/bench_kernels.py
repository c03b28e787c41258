"""Compare the compiled and pure-Python sparse integer kernels.

Times the two hot operations (sparse matmul and Kronecker product) on
synthetic matrices shaped like the ones the comparison-map pipeline
produces, plus one end-to-end verification workload.

Usage: python benchmarks/bench_kernels.py [--size 400] [--density 0.02]
"""
import argparse
import random
import time

from dkchains import HAVE_SPEEDUPS
from dkchains.intmat import IntMatrix
from dkchains.kernels import pure


def random_sparse(rng, nrows, ncols, density):
    data = {}
    for _ in range(int(nrows * ncols * density)):
        data[(rng.randrange(nrows), rng.randrange(ncols))] = \
            rng.randint(-9, 9)
    return IntMatrix(nrows, ncols, data)


def bench(label, fn, repeats=5):
    best = min(_timed(fn) for _ in range(repeats))
    print(f"  {label:<28} {best * 1000.0:8.2f} ms")
    return best


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=300)
    ap.add_argument("--density", type=float, default=0.1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    n = args.size

    a = random_sparse(rng, n, n, args.density)
    b = random_sparse(rng, n, n, args.density)
    small = random_sparse(rng, 40, 40, 0.1)

    print(f"compiled kernels available: {HAVE_SPEEDUPS}")
    print(f"matmul {n}x{n} @ density {args.density}:")
    t_fast = bench("dispatched (compiled)", lambda: a @ b)
    t_slow = bench("pure python", lambda: pure.matmul(
        a.nrows, a.ncols, a.data, b.ncols, b.data))
    if HAVE_SPEEDUPS and t_fast > 0:
        print(f"  speedup: {t_slow / t_fast:.1f}x")

    print("kron 40x40 (x) 40x40 @ density 0.1:")
    t_fast = bench("dispatched (compiled)", lambda: small.kron(small))
    t_slow = bench("pure python", lambda: pure.kron(
        small.nrows, small.ncols, small.data,
        small.nrows, small.ncols, small.data))
    if HAVE_SPEEDUPS and t_fast > 0:
        print(f"  speedup: {t_slow / t_fast:.1f}x")

    print("end-to-end: strict compatibility check, largest standard "
          "simplex tuple (levels <= 3):")
    from dkchains.ezaw import BialgebraInstance
    from dkchains.simplicial import free_on_standard_simplex
    d2 = free_on_standard_simplex(2, 3, name="delta:2")

    def workload():
        inst = BialgebraInstance(d2, d2, d2, d2)
        assert inst.check(normalized=True, max_level=3).passed
    bench("bialgebra delta:2 x4", workload, repeats=2)
    print("note: set DKCHAINS_PURE=1 to force the pure path "
          "for the whole pipeline and rerun.")


if __name__ == "__main__":
    main()
