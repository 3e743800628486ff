#!/usr/bin/env python3
"""Measure the lazy-handle vs dense-storage trade-off.

For a few families this times a representative whole-matrix operation on the
O(1) lazy handle and on an explicitly materialized float64 copy, and reports
the storage footprints. Lazy wins wherever a closed form or declared property
short-circuits the work (issymmetric, det); dense wins when every entry is
needed anyway and recomputation is pure overhead (sum).
"""

import argparse
import statistics
from time import perf_counter_ns

from tmat import (
    FLOAT64,
    construct,
    dense_footprint,
    determinant,
    entry_sum,
    handle_footprint,
    is_symmetric,
    materialize,
)
from tmat.linalg import dense_is_symmetric, dense_sum, det_dense


def median_ns(fn, reps):
    times = []
    for _ in range(reps):
        start = perf_counter_ns()
        fn()
        times.append(perf_counter_ns() - start)
    return int(statistics.median(times))


def fmt_ns(ns):
    for unit, scale in (("s", 1e9), ("ms", 1e6), ("us", 1e3)):
        if ns >= scale:
            return f"{ns / scale:8.2f} {unit}"
    return f"{ns:8.0f} ns"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=500, help="size for the scan/sum cases")
    parser.add_argument("--det-size", type=int, default=100, help="size for the det case (dense LU is cubic)")
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()

    cases = [
        ("minij", "issymmetric", args.size, is_symmetric, dense_is_symmetric),
        ("hilbert", "det", args.det_size, determinant, det_dense),
        ("cauchy", "sum", args.size, entry_sum, dense_sum),
    ]

    print(f"median of {args.reps} runs")
    header = f"{'family':<10} {'op':<12} {'n':>6} {'lazy':>12} {'dense':>12} {'handle B':>10} {'dense B':>12}"
    print(header)
    print("-" * len(header))
    for family, op, n, lazy_fn, dense_fn in cases:
        handle = construct(family, n=n, scalar_kind=FLOAT64)
        dense = materialize(handle)
        lazy_t = median_ns(lambda: lazy_fn(handle), args.reps)
        dense_t = median_ns(lambda: dense_fn(dense), args.reps)
        print(
            f"{family:<10} {op:<12} {n:>6} {fmt_ns(lazy_t):>12} {fmt_ns(dense_t):>12}"
            f" {handle_footprint(handle):>10} {dense_footprint(dense):>12}"
        )


if __name__ == "__main__":
    main()
