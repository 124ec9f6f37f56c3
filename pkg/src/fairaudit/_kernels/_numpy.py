"""Pure-numpy Lloyd-iteration kernels (fallback backend).

Arithmetic is ordered to match the compiled kernel exactly: squared centroid
norms and row-centroid dot products accumulate sequentially over columns /
feature blocks, so both backends produce bit-identical distances and hence
identical assignments, including tie cases.
"""

from __future__ import annotations

import numpy as np


def centroid_sq_norms(centroids: np.ndarray) -> np.ndarray:
    k, dim = centroids.shape
    norms = np.zeros(k, dtype=np.float64)
    for j in range(dim):
        norms += centroids[:, j] * centroids[:, j]
    return norms


def assign_labels(
    codes: np.ndarray, offsets: np.ndarray, centroids: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Nearest-centroid assignment for one-hot rows given as integer codes.

    Returns (labels, squared distance to the assigned centroid). Ties go to
    the lowest centroid index.
    """
    n, n_features = codes.shape
    k = centroids.shape[0]
    dots = np.zeros((k, n), dtype=np.float64)
    for i in range(n_features):
        dots += centroids[:, offsets[i] + codes[:, i]]
    dist = (float(n_features) + centroid_sq_norms(centroids))[:, None] - 2.0 * dots
    labels = np.argmin(dist, axis=0)
    min_dist = dist[labels, np.arange(n)]
    return labels.astype(np.int64), min_dist


def accumulate_clusters(
    codes: np.ndarray, offsets: np.ndarray, labels: np.ndarray, k: int, dim: int
) -> tuple[np.ndarray, np.ndarray]:
    """Per-cluster one-hot column sums and cluster sizes (exact integer tallies)."""
    n, n_features = codes.shape
    sizes = np.bincount(labels, minlength=k).astype(np.int64)
    counts = np.zeros((k, dim), dtype=np.float64)
    for i in range(n_features):
        np.add.at(counts, (labels, offsets[i] + codes[:, i]), 1.0)
    return counts, sizes
