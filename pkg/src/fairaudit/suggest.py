"""Suggested subgroups: K-means over the one-hot encoding, entropy-ranked
dominant features, and metric-ascending ranking of the resulting groups.

Seeding is K-means++ with the sampling order canonicalized (rows sorted
lexicographically by their codes), so permuting the input rows permutes
assignments but never changes the induced partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ClusteringError, GroupError, RegistryError
from .ingest import DataTable, FeatureSchema, OneHotMatrix
from .metrics import MetricRegistry, sort_key
from .subgroups import FeatureDistribution, MaterializedGroup, SubgroupSpec, materialize


@dataclass(frozen=True)
class ClusterConfig:
    k: int = 15
    max_iterations: int = 300
    tolerance: float = 1e-4
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ClusteringError("k must be a positive integer")
        if self.max_iterations < 1:
            raise ClusteringError("max_iterations must be a positive integer")
        if self.tolerance < 0:
            raise ClusteringError("tolerance must be nonnegative")


@dataclass
class ClusterModel:
    centroids: np.ndarray  # (k, dim)
    assignments: np.ndarray  # (n,) cluster index per row
    inertia: float
    iterations: int
    inertia_trace: list[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.centroids.shape[0]

    def members(self, cluster: int) -> np.ndarray:
        return np.flatnonzero(self.assignments == cluster)


def _canonical_order(codes: np.ndarray) -> np.ndarray:
    # Lexicographic by feature columns, first feature most significant.
    return np.lexsort(codes.T[::-1])


def _kmeans_pp_seeds(matrix: OneHotMatrix, k: int, rng: np.random.Generator) -> np.ndarray:
    """K-means++ D² sampling over rows in canonical order; returns (k, dim) seeds."""
    codes, offsets = matrix.codes, matrix.offsets
    order = _canonical_order(codes)
    sorted_codes = np.ascontiguousarray(codes[order])
    n = matrix.row_count

    chosen = [int(rng.integers(0, n))]
    seeds = np.zeros((k, matrix.dim), dtype=np.float64)
    seeds[0, offsets + sorted_codes[chosen[0]]] = 1.0
    if k == 1:
        return seeds
    _, min_dist = _kernels.numpy_backend.assign_labels(sorted_codes, offsets, seeds[:1])
    for j in range(1, k):
        total = float(min_dist.sum())
        if total > 0.0:
            pos = int(rng.choice(n, p=min_dist / total))
        else:
            pos = int(rng.integers(0, n))  # all remaining rows coincide with a seed
        chosen.append(pos)
        seeds[j, offsets + sorted_codes[pos]] = 1.0
        _, cand = _kernels.numpy_backend.assign_labels(sorted_codes, offsets, seeds[j : j + 1])
        np.minimum(min_dist, cand, out=min_dist)
    return seeds


def kmeans(matrix: OneHotMatrix, config: ClusterConfig) -> ClusterModel:
    """Lloyd iterations from K-means++ seeds.

    Stops when assignments stabilize (an exact fixed point) or centroid
    movement drops below the tolerance, whichever comes first; a final
    assignment pass keeps every row on its nearest centroid. Clusters that
    empty out are reseeded once with the row farthest from its centroid;
    clusters that stay empty (fewer distinct rows than k) are dropped.
    """
    n = matrix.row_count
    if n == 0:
        raise ClusteringError("cannot cluster an empty matrix")
    if config.k > n:
        raise ClusteringError(f"k={config.k} exceeds row count {n}")

    codes = np.ascontiguousarray(matrix.codes, dtype=np.int32)
    offsets = matrix.offsets.astype(np.int64)
    rng = np.random.default_rng(config.seed)
    centroids = _kmeans_pp_seeds(matrix, config.k, rng)

    trace: list[float] = []
    labels = None
    iterations = 0
    for iterations in range(1, config.max_iterations + 1):
        new_labels, min_dist = _kernels.assign_labels(codes, offsets, centroids)
        trace.append(float(min_dist.sum()))
        if labels is not None and np.array_equal(new_labels, labels):
            labels = new_labels
            break
        labels = new_labels

        counts, sizes = _kernels.accumulate_clusters(codes, offsets, labels, config.k, matrix.dim)
        new_centroids = np.where(
            sizes[:, None] > 0, counts / np.maximum(sizes, 1)[:, None], centroids
        )
        for empty in np.flatnonzero(sizes == 0):
            far = int(np.argmax(min_dist))
            if min_dist[far] <= 0.0:
                break  # duplicate-dominated data: nothing left to separate
            new_centroids[empty] = 0.0
            new_centroids[empty, offsets + codes[far]] = 1.0
            min_dist[far] = 0.0

        movement = float(np.sqrt(((new_centroids - centroids) ** 2).sum()))
        centroids = new_centroids
        if movement < config.tolerance:
            labels, min_dist = _kernels.assign_labels(codes, offsets, centroids)
            trace.append(float(min_dist.sum()))
            break
    else:
        # Iteration budget exhausted after a centroid update: realign.
        labels, min_dist = _kernels.assign_labels(codes, offsets, centroids)
        trace.append(float(min_dist.sum()))

    # Drop clusters that ended empty and renumber the survivors.
    _, final_sizes = _kernels.accumulate_clusters(codes, offsets, labels, config.k, matrix.dim)
    keep = np.flatnonzero(final_sizes > 0)
    if keep.size < config.k:
        remap = -np.ones(config.k, dtype=np.int64)
        remap[keep] = np.arange(keep.size)
        labels = remap[labels]
        centroids = centroids[keep]

    return ClusterModel(
        centroids=centroids,
        assignments=labels,
        inertia=trace[-1],
        iterations=iterations,
        inertia_trace=trace,
    )


@dataclass(frozen=True)
class DominantFeature:
    feature: str
    entropy: float
    dominant_value: str
    dominant_fraction: float


def feature_entropy(distribution: FeatureDistribution, feature: str) -> float | None:
    """Shannon entropy (bits) of one feature's value counts; None for an empty group."""
    if distribution.size == 0:
        return None
    counts = distribution.counts[feature]
    p = counts[counts > 0] / distribution.size
    return float(-(p * np.log2(p)).sum())


def dominant_features(
    distribution: FeatureDistribution, schema: FeatureSchema
) -> list[DominantFeature]:
    """All features ranked ascending by entropy (most dominated first).

    Ties keep schema feature order; the dominant value breaks count ties
    lexicographically.
    """
    if distribution.size == 0:
        raise GroupError("empty group has no dominant features")
    ranked = []
    for name, values in schema.features:
        counts = distribution.counts[name]
        entropy = feature_entropy(distribution, name)
        top = counts.max()
        dominant = min(v for v, c in zip(values, counts) if c == top)
        ranked.append(
            DominantFeature(
                feature=name,
                entropy=entropy,
                dominant_value=dominant,
                dominant_fraction=float(top) / distribution.size,
            )
        )
    return sorted(ranked, key=lambda d: d.entropy)


def clusters_to_subgroups(
    model: ClusterModel,
    table: DataTable,
    schema: FeatureSchema,
    registry: MetricRegistry,
) -> list[MaterializedGroup]:
    """One cluster-kind subgroup per cluster, with metrics, distributions,
    and the entropy ranking attached."""
    if model.assignments.shape[0] != table.row_count:
        raise ClusteringError("cluster assignments do not align with the table")
    groups = []
    for c in range(model.k):
        spec = SubgroupSpec.cluster(model.members(c), display_name=f"Group {c + 1}")
        group = materialize(spec, table, schema, registry)
        group.dominant_features = dominant_features(group.distribution, schema)
        groups.append(group)
    return groups


def rank_suggestions(
    groups: list[MaterializedGroup],
    registry: MetricRegistry,
    sort_metric: str,
    min_size: int = 0,
) -> list[MaterializedGroup]:
    """Size-filtered groups in ascending metric order, undefined values last."""
    if sort_metric not in registry:
        raise RegistryError(
            f"unknown sort metric {sort_metric!r}; registered: {', '.join(registry.names())}"
        )
    kept = [g for g in groups if g.size >= min_size]
    return sorted(kept, key=lambda g: sort_key(g.metrics[sort_metric]))
