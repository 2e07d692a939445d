"""Compare the compiled and pure-Python PBW kernels.

Two workloads, each run on a fresh kernel (empty memo tables):

* ``products``: normal forms of random monomial pairs;
* ``charpoly``: the symmetrized determinant of the quantum pencil.

Usage: python benchmarks/bench_pbw.py [--n 3 4] [--pairs 2000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

from gentoda.algebra import kernel
from gentoda.determinant import det_nc_permsum
from gentoda.lax import build_pencil


def bench_products(backend: str, n: int, pairs: int, seed: int) -> float:
    kernel.clear_caches()
    k = kernel.get_kernel(n, backend)
    rng = random.Random(seed)
    size = n * n
    work = [
        (tuple(sorted(rng.randrange(size) for _ in range(rng.randint(1, 4)))),
         tuple(sorted(rng.randrange(size) for _ in range(rng.randint(1, 4)))))
        for _ in range(pairs)
    ]
    t0 = time.perf_counter()
    for m1, m2 in work:
        k.mul(m1, m2)
    return time.perf_counter() - t0


def bench_charpoly(backend: str, n: int) -> float:
    kernel.clear_caches()
    kernel.set_backend(backend)
    M = build_pencil(n, "quantum")
    t0 = time.perf_counter()
    det_nc_permsum(M)
    return time.perf_counter() - t0


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[3, 4])
    parser.add_argument("--pairs", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = kernel.available_backends()
    if "compiled" not in backends:
        print("compiled kernel not built; only the python backend is timed")
    previous = kernel.active_backend()
    print(f"{'workload':<10} {'n':>2} " + " ".join(f"{b:>12}" for b in backends) + f" {'speedup':>8}")
    try:
        for n in args.n:
            for name, fn in (
                ("products", lambda b: bench_products(b, n, args.pairs, args.seed)),
                ("charpoly", lambda b: bench_charpoly(b, n)),
            ):
                times = {b: statistics.median(fn(b) for _ in range(args.repeat)) for b in backends}
                speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
                cols = " ".join(f"{times[b] * 1e3:>10.1f}ms" for b in backends)
                print(f"{name:<10} {n:>2} {cols} {speed:>7.1f}x")
    finally:
        kernel.set_backend(previous)
        kernel.clear_caches()


if __name__ == "__main__":
    main()
