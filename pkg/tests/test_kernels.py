"""Backend parity and correctness of the Lloyd-iteration kernels."""

import numpy as np
import pytest

from fairaudit import _kernels


def random_problem(rng, n, block_sizes, k):
    codes = np.column_stack(
        [rng.integers(0, b, size=n) for b in block_sizes]
    ).astype(np.int32)
    offsets = np.concatenate([[0], np.cumsum(block_sizes[:-1])]).astype(np.int64)
    dim = int(sum(block_sizes))
    centroids = rng.random((k, dim))
    return np.ascontiguousarray(codes), offsets, np.ascontiguousarray(centroids), dim


def brute_force_assign(codes, offsets, centroids, block_sizes):
    n, F = codes.shape
    dim = centroids.shape[1]
    dense = np.zeros((n, dim))
    for r in range(n):
        for i in range(F):
            dense[r, offsets[i] + codes[r, i]] = 1.0
    dists = ((dense[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    labels = dists.argmin(axis=1)
    return labels, dists[np.arange(n), labels]


def test_assign_matches_brute_force():
    rng = np.random.default_rng(0)
    block_sizes = [3, 2, 4]
    codes, offsets, centroids, dim = random_problem(rng, 40, block_sizes, 5)
    labels, mind = _kernels.numpy_backend.assign_labels(codes, offsets, centroids)
    expect_labels, expect_dist = brute_force_assign(codes, offsets, centroids, block_sizes)
    assert np.array_equal(labels, expect_labels)
    assert np.allclose(mind, expect_dist, atol=1e-9)


def test_accumulate_matches_brute_force():
    rng = np.random.default_rng(1)
    block_sizes = [2, 3]
    codes, offsets, centroids, dim = random_problem(rng, 30, block_sizes, 4)
    labels, _ = _kernels.numpy_backend.assign_labels(codes, offsets, centroids)
    counts, sizes = _kernels.numpy_backend.accumulate_clusters(codes, offsets, labels, 4, dim)
    for c in range(4):
        members = np.flatnonzero(labels == c)
        assert sizes[c] == members.size
        expected = np.zeros(dim)
        for r in members:
            for i in range(2):
                expected[offsets[i] + codes[r, i]] += 1
        assert np.array_equal(counts[c], expected)


@pytest.mark.skipif(_kernels.BACKEND != "cython", reason="compiled backend not built")
def test_backends_agree_bitwise():
    rng = np.random.default_rng(2)
    for _ in range(20):
        n = int(rng.integers(1, 120))
        k = int(rng.integers(1, 8))
        block_sizes = [int(b) for b in rng.integers(2, 6, size=int(rng.integers(1, 5)))]
        codes, offsets, centroids, dim = random_problem(rng, n, block_sizes, k)
        l_c, d_c = _kernels.assign_labels(codes, offsets, centroids)
        l_n, d_n = _kernels.numpy_backend.assign_labels(codes, offsets, centroids)
        assert np.array_equal(l_c, l_n)
        assert np.array_equal(d_c, d_n)  # bitwise: same arithmetic order
        c_c, s_c = _kernels.accumulate_clusters(codes, offsets, l_c, k, dim)
        c_n, s_n = _kernels.numpy_backend.accumulate_clusters(codes, offsets, l_n, k, dim)
        assert np.array_equal(c_c, c_n)
        assert np.array_equal(s_c, s_n)


def test_assignment_tie_breaks_to_lowest_index():
    # two identical centroids: every row must go to centroid 0
    codes = np.array([[0], [1]], dtype=np.int32)
    offsets = np.array([0], dtype=np.int64)
    centroids = np.array([[0.5, 0.5], [0.5, 0.5]])
    labels, _ = _kernels.assign_labels(
        np.ascontiguousarray(codes), offsets, np.ascontiguousarray(centroids)
    )
    assert list(labels) == [0, 0]
