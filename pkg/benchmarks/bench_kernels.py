"""Benchmark the compiled convolution kernel against the pure-Python loop.

Usage: python3 benchmarks/bench_kernels.py [repeats]

The workload is the dominant inner operation of the whole package: dense
truncated bivariate Cauchy products with exact rational coefficients.
"""

import random
import sys
import time

from localp1p1 import kernels_py
from localp1p1.rational import QQ

try:
    from localp1p1 import _kernels
except ImportError:
    _kernels = None


def block(rng, trunc, tri, density=0.8):
    return [
        QQ(rng.randint(-99, 99), rng.randint(1, 30))
        if rng.random() < density
        else QQ(0)
        for _ in range(tri[trunc + 1])
    ]


def bench(conv, pairs, trunc, tri, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        for a, b in pairs:
            conv(a, b, trunc, tri, QQ(0))
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    rng = random.Random(12345)
    print("%-6s %-10s %-12s %-12s %s" % ("trunc", "products", "pure (s)", "cython (s)", "speedup"))
    for trunc, n_pairs in ((4, 400), (6, 200), (8, 100), (10, 50)):
        tri = kernels_py.tri_table(trunc)
        pairs = [(block(rng, trunc, tri), block(rng, trunc, tri)) for _ in range(n_pairs)]
        t_py = bench(kernels_py.conv_dense, pairs, trunc, tri, repeats)
        if _kernels is not None:
            t_cy = bench(_kernels.conv_dense, pairs, trunc, tri, repeats)
            for a, b in pairs[:3]:
                assert _kernels.conv_dense(a, b, trunc, tri, QQ(0)) == kernels_py.conv_dense(
                    a, b, trunc, tri, QQ(0)
                )
            print(
                "%-6d %-10d %-12.4f %-12.4f %.2fx"
                % (trunc, n_pairs, t_py, t_cy, t_py / t_cy)
            )
        else:
            print("%-6d %-10d %-12.4f %-12s %s" % (trunc, n_pairs, t_py, "n/a", "build the extension"))


if __name__ == "__main__":
    main()
