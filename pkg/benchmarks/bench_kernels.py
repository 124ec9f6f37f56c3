#!/usr/bin/env python3
"""Benchmark the compiled Lloyd kernels against the numpy fallback.

Runs the assignment + accumulation pair (one full Lloyd iteration) over a
synthetic one-hot problem and reports per-iteration wall time for each
backend, plus an end-to-end kmeans timing. The two backends are also
cross-checked for identical assignments on every sampled problem.

Usage:
    python benchmarks/bench_kernels.py --rows 100000 --features 12 --k 15
"""

import argparse
import time

import numpy as np

from fairaudit import _kernels
from fairaudit.ingest import OneHotMatrix
from fairaudit.suggest import ClusterConfig, kmeans


def make_problem(rows, features, k, seed=0):
    rng = np.random.default_rng(seed)
    block_sizes = [int(2 + (i * 3) % 9) for i in range(features)]
    codes = np.ascontiguousarray(
        np.column_stack([rng.integers(0, b, size=rows) for b in block_sizes]), dtype=np.int32
    )
    offsets = np.concatenate([[0], np.cumsum(block_sizes[:-1])]).astype(np.int64)
    dim = int(sum(block_sizes))
    centroids = np.ascontiguousarray(rng.random((k, dim)))
    return codes, offsets, centroids, dim, block_sizes


def time_backend(impl, codes, offsets, centroids, k, dim, repeats):
    labels = None
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        labels, _ = impl.assign_labels(codes, offsets, centroids)
        impl.accumulate_clusters(codes, offsets, labels, k, dim)
        best = min(best, time.perf_counter() - start)
    return best, labels


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=100_000)
    parser.add_argument("--features", type=int, default=12)
    parser.add_argument("--k", type=int, default=15)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    codes, offsets, centroids, dim, block_sizes = make_problem(args.rows, args.features, args.k)
    print(f"problem: {args.rows} rows x {args.features} features (dim {dim}), k={args.k}")
    print(f"compiled backend available: {_kernels.BACKEND == 'cython'}")

    rows = []
    t_np, labels_np = time_backend(
        _kernels.numpy_backend, codes, offsets, centroids, args.k, dim, args.repeats
    )
    rows.append(("numpy", t_np))
    if _kernels.BACKEND == "cython":
        from fairaudit._kernels import _lloyd

        t_cy, labels_cy = time_backend(
            _lloyd, codes, offsets, centroids, args.k, dim, args.repeats
        )
        rows.append(("cython", t_cy))
        assert np.array_equal(labels_np, labels_cy), "backends disagree on assignments"

    print(f"\n{'backend':<10}{'iteration time':>16}{'rows/s':>14}{'speedup':>10}")
    base = rows[0][1]
    for name, t in rows:
        print(f"{name:<10}{t * 1000:>13.1f} ms{args.rows / t:>14.0f}{base / t:>9.1f}x")

    mat = OneHotMatrix(codes=codes, block_sizes=block_sizes)
    start = time.perf_counter()
    model = kmeans(mat, ClusterConfig(k=args.k, seed=0))
    total = time.perf_counter() - start
    print(
        f"\nfull kmeans ({_kernels.BACKEND} backend): {total:.2f}s, "
        f"{model.iterations} iterations, inertia {model.inertia:.1f}"
    )


if __name__ == "__main__":
    main()
