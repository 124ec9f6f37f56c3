# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled Lloyd-iteration kernels for one-hot rows stored as integer codes.

Must stay numerically identical to _numpy.py: distances accumulate the
centroid dot product sequentially over feature blocks and use the same
F + |c|^2 - 2*dot formulation, so assignments (including ties) agree.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def assign_labels(
    const int[:, ::1] codes,
    const long long[::1] offsets,
    const double[:, ::1] centroids,
):
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t n_features = codes.shape[1]
    cdef Py_ssize_t k = centroids.shape[0]
    cdef Py_ssize_t dim = centroids.shape[1]

    labels_arr = np.empty(n, dtype=np.int64)
    dist_arr = np.empty(n, dtype=np.float64)
    norms_arr = np.zeros(k, dtype=np.float64)
    cdef long long[::1] labels = labels_arr
    cdef double[::1] min_dist = dist_arr
    cdef double[::1] norms = norms_arr

    cdef Py_ssize_t r, c, i, j
    cdef double dot, d, best
    cdef long long best_c
    cdef double xnorm = <double> n_features

    for j in range(dim):
        for c in range(k):
            norms[c] += centroids[c, j] * centroids[c, j]

    for r in range(n):
        best = 0.0
        best_c = -1
        for c in range(k):
            dot = 0.0
            for i in range(n_features):
                dot += centroids[c, offsets[i] + codes[r, i]]
            d = (xnorm + norms[c]) - 2.0 * dot
            if best_c < 0 or d < best:
                best = d
                best_c = c
        labels[r] = best_c
        min_dist[r] = best

    return labels_arr, dist_arr


def accumulate_clusters(
    const int[:, ::1] codes,
    const long long[::1] offsets,
    const long long[::1] labels,
    Py_ssize_t k,
    Py_ssize_t dim,
):
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t n_features = codes.shape[1]

    counts_arr = np.zeros((k, dim), dtype=np.float64)
    sizes_arr = np.zeros(k, dtype=np.int64)
    cdef double[:, ::1] counts = counts_arr
    cdef long long[::1] sizes = sizes_arr

    cdef Py_ssize_t r, i
    cdef long long c
    for r in range(n):
        c = labels[r]
        sizes[c] += 1
        for i in range(n_features):
            counts[c, offsets[i] + codes[r, i]] += 1.0
    return counts_arr, sizes_arr
