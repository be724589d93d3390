#!/usr/bin/env python3
"""Benchmark the compiled elimination core against the pure-Python fallback.

Workloads mirror the heaviest real uses: isotypic kernels and fixed-subspace
ranks from the group-algebra oracle, plus dense random matrices.  Run after
an editable install:

    python benchmarks/bench_backends.py [--max-order 150]
"""

from __future__ import annotations

import argparse
import random
import time

from finemw import group_algebra, groups, linalg
from finemw.numbertheory import factorize


def time_call(fn, repeats=1):
    best = None
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def bench_random_dense(rng, n):
    """Full-rank noise: fraction-free minors overflow 64 bits almost at once,
    so the compiled core bails out and both backends run the pure path."""
    m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
    return lambda: linalg.rank(m, n)


def bench_low_rank(rng, n, r):
    """Rank-r product matrix: eliminated entries stay minor-sized and small."""
    left = [[rng.randint(-3, 3) for _ in range(r)] for _ in range(n)]
    right = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)]
    m = [
        [sum(left[i][k] * right[k][j] for k in range(r)) for j in range(n)]
        for i in range(n)
    ]
    return lambda: linalg.rank(m, n)


def bench_oracle_sweep(max_order):
    def run():
        pairs = 0
        for order in range(max(2, max_order - 9), max_order + 1):
            g = groups.FiniteAbelianGroup(factorize(order))
            model = group_algebra.build_group_algebra_model(g)
            tuples = groups.index_tuples(g)
            for beta in tuples:
                for alpha in tuples:
                    group_algebra.oracle_fixed_subspace_dim(model, beta, alpha)
                    pairs += 1
        return pairs

    return run


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-order", type=int, default=150)
    args = parser.parse_args()

    if linalg._ffelim is None:
        print("compiled core not built; nothing to compare")
        return 1

    rng = random.Random(99)
    workloads = [
        (
            f"oracle sweep, orders {max(2, args.max_order - 9)}..{args.max_order}",
            bench_oracle_sweep(args.max_order),
        ),
        ("low-rank 150x150 rank (fits int64)", bench_low_rank(rng, 150, 8)),
        ("dense 100x100 rank (overflow fallback)", bench_random_dense(rng, 100)),
    ]

    print(f"{'workload':<42} {'pure':>10} {'compiled':>10} {'speedup':>9}")
    for name, fn in workloads:
        linalg.set_backend("pure")
        t_pure, out_pure = time_call(fn)
        linalg.set_backend("fast")
        t_fast, out_fast = time_call(fn)
        linalg.set_backend("auto")
        assert out_pure == out_fast, name
        print(
            f"{name:<42} {t_pure:9.3f}s {t_fast:9.3f}s {t_pure / t_fast:8.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
