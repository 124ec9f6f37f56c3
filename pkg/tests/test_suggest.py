"""Suggestion engine: K-means, feature entropy, dominant features, ranking."""

import math

import numpy as np
import pytest

from conftest import build_table, random_table
from fairaudit.errors import ClusteringError, RegistryError
from fairaudit.ingest import OneHotMatrix, one_hot
from fairaudit.metrics import MetricRegistry, confusion
from fairaudit.subgroups import FeatureDistribution, materialize
from fairaudit.suggest import (
    ClusterConfig,
    clusters_to_subgroups,
    dominant_features,
    feature_entropy,
    kmeans,
    rank_suggestions,
)


def random_matrix(rng, n, block_sizes):
    codes = np.column_stack(
        [rng.integers(0, b, size=n) for b in block_sizes]
    ).astype(np.int32)
    return OneHotMatrix(codes=codes, block_sizes=block_sizes)


def test_k1_centroid_is_column_mean():
    rng = np.random.default_rng(10)
    mat = random_matrix(rng, 57, [3, 4, 2])
    model = kmeans(mat, ClusterConfig(k=1, seed=0))
    mean = mat.dense().astype(float).mean(axis=0)
    assert np.abs(model.centroids[0] - mean).max() < 1e-12
    assert (model.assignments == 0).all()


def test_duplicate_families_separate_perfectly():
    codes = np.array([[0, 1]] * 10 + [[2, 0]] * 7, dtype=np.int32)
    mat = OneHotMatrix(codes=codes, block_sizes=[3, 2])
    model = kmeans(mat, ClusterConfig(k=2, seed=0))
    assert model.inertia == 0.0
    parts = {tuple(sorted(model.members(c))) for c in range(model.k)}
    assert parts == {tuple(range(10)), tuple(range(10, 17))}


def test_lloyd_fixed_point_independent_recompute():
    rng = np.random.default_rng(99)
    mat = random_matrix(rng, 30, [2, 3, 2])
    model = kmeans(mat, ClusterConfig(k=3, seed=7, tolerance=0.0))
    # independent nearest-centroid recompute over the dense matrix
    dense = mat.dense().astype(float)
    dists = ((dense[:, None, :] - model.centroids[None, :, :]) ** 2).sum(axis=2)
    relabel = dists.argmin(axis=1)
    assert np.array_equal(relabel, model.assignments)
    # recomputing centroids from the assignments changes nothing
    for c in range(model.k):
        members = dense[model.assignments == c]
        assert np.allclose(members.mean(axis=0), model.centroids[c], atol=1e-12)


def test_inertia_non_increasing():
    rng = np.random.default_rng(4)
    for trial in range(20):
        mat = random_matrix(rng, int(rng.integers(20, 150)), [2, 4, 3, 2])
        model = kmeans(mat, ClusterConfig(k=int(rng.integers(2, 8)), seed=trial))
        trace = model.inertia_trace
        assert all(a >= b - 1e-9 for a, b in zip(trace, trace[1:]))


def test_identical_seeds_identical_partitions():
    rng = np.random.default_rng(6)
    mat = random_matrix(rng, 80, [3, 3, 4])
    a = kmeans(mat, ClusterConfig(k=5, seed=42))
    b = kmeans(mat, ClusterConfig(k=5, seed=42))
    assert np.array_equal(a.assignments, b.assignments)
    assert a.inertia == b.inertia


def test_permuting_rows_permutes_assignments_only():
    rng = np.random.default_rng(8)
    mat = random_matrix(rng, 60, [2, 3, 2])
    model = kmeans(mat, ClusterConfig(k=4, seed=3))
    perm = rng.permutation(60)
    permuted = OneHotMatrix(codes=mat.codes[perm], block_sizes=mat.block_sizes)
    model_p = kmeans(permuted, ClusterConfig(k=4, seed=3))
    # same partition of row contents: compare partitions as sets of original ids
    parts_a = {frozenset(model.members(c)) for c in range(model.k)}
    parts_b = {frozenset(perm[model_p.members(c)]) for c in range(model_p.k)}
    assert parts_a == parts_b


def test_kmeans_errors():
    rng = np.random.default_rng(1)
    mat = random_matrix(rng, 5, [2, 2])
    with pytest.raises(ClusteringError):
        kmeans(mat, ClusterConfig(k=6, seed=0))
    empty = OneHotMatrix(codes=np.empty((0, 2), dtype=np.int32), block_sizes=[2, 2])
    with pytest.raises(ClusteringError):
        kmeans(empty, ClusterConfig(k=1, seed=0))
    with pytest.raises(ClusteringError):
        ClusterConfig(k=0)
    with pytest.raises(ClusteringError):
        ClusterConfig(k=2, tolerance=-1.0)


def test_more_clusters_than_distinct_rows_drops_empties():
    codes = np.array([[0, 0]] * 6 + [[1, 1]] * 6, dtype=np.int32)
    mat = OneHotMatrix(codes=codes, block_sizes=[2, 2])
    model = kmeans(mat, ClusterConfig(k=5, seed=0))
    assert model.k == 2
    sizes = [model.members(c).size for c in range(model.k)]
    assert sorted(sizes) == [6, 6]
    assert sum(sizes) == 12


# -- entropy / dominance ----------------------------------------------------


def entropy_oracle(counts):
    """Independent evaluation with math.log2 over explicit fractions."""
    total = sum(counts)
    h = 0.0
    for c in counts:
        if c:
            h -= (c / total) * math.log2(c / total)
    return h


def dist(counts_by_feature, size):
    return FeatureDistribution(
        counts={f: np.array(c, dtype=np.int64) for f, c in counts_by_feature.items()},
        size=size,
    )


def test_entropy_point_mass_is_zero():
    d = dist({"country": [12, 0, 0]}, 12)
    assert feature_entropy(d, "country") == 0.0


def test_entropy_uniform_four_values():
    d = dist({"f": [5, 5, 5, 5]}, 20)
    assert feature_entropy(d, "f") == pytest.approx(2.0, abs=1e-12)


def test_entropy_three_one_split():
    d = dist({"f": [3, 1]}, 4)
    expected = entropy_oracle([3, 1])
    assert expected == pytest.approx(0.8112781244591328, abs=1e-12)
    assert feature_entropy(d, "f") == pytest.approx(expected, abs=1e-12)


def test_entropy_empty_group_undefined():
    d = dist({"f": [0, 0]}, 0)
    assert feature_entropy(d, "f") is None


def test_entropy_bounds_and_extremes():
    rng = np.random.default_rng(2)
    for _ in range(200):
        m = int(rng.integers(2, 6))
        counts = rng.integers(0, 30, size=m)
        if counts.sum() == 0:
            continue
        d = dist({"f": counts}, int(counts.sum()))
        h = feature_entropy(d, "f")
        assert -1e-12 <= h <= math.log2(m) + 1e-12
        nonzero = (counts > 0).sum()
        if nonzero == 1:
            assert h == 0.0
        if nonzero == m and len(set(counts)) == 1:
            assert h == pytest.approx(math.log2(m), abs=1e-12)


def test_dominant_ordering_point_mass_first():
    schema, table = build_table(
        {"a": ["x", "y"], "b": ["u", "v"]},
        [{"a": "x", "b": "u"}, {"a": "x", "b": "v"}],
        [1, 0],
        [1, 0],
    )
    registry = MetricRegistry()
    from fairaudit.subgroups import SubgroupSpec

    g = materialize(SubgroupSpec.cluster([0, 1]), table, schema, registry)
    ranked = dominant_features(g.distribution, schema)
    assert ranked[0].feature == "a"  # point mass on x
    assert ranked[0].entropy == 0.0
    assert ranked[0].dominant_value == "x"
    assert ranked[0].dominant_fraction == 1.0
    assert ranked[1].feature == "b"
    assert ranked[1].entropy > 0


def test_dominant_value_lexicographic_tie_break():
    d = dist({"f": [2, 2, 1]}, 5)
    schema, _ = build_table({"f": ["b", "a", "c"]}, [{"f": "b"}], [1], [1])
    ranked = dominant_features(d, schema)
    assert ranked[0].dominant_value == "a"  # counts tie between "b" and "a"


# -- clusters_to_subgroups / ranking -----------------------------------------


def make_loaded(rows=40, seed=0):
    rng = np.random.default_rng(seed)
    schema, table = random_table(rng, rows, [2, 3])
    registry = MetricRegistry()
    return schema, table, registry, one_hot(table, schema)


def test_k1_subgroup_equals_dataset():
    schema, table, registry, mat = make_loaded()
    model = kmeans(mat, ClusterConfig(k=1, seed=0))
    (group,) = clusters_to_subgroups(model, table, schema, registry)
    whole = confusion(np.arange(table.row_count), table)
    assert group.size == table.row_count
    assert group.counts == whole
    for name in registry.names():
        assert group.metrics[name] == registry.value(whole, name)


def test_cluster_sizes_sum_to_row_count():
    schema, table, registry, mat = make_loaded(rows=90, seed=5)
    model = kmeans(mat, ClusterConfig(k=6, seed=2))
    groups = clusters_to_subgroups(model, table, schema, registry)
    assert sum(g.size for g in groups) == table.row_count
    for g in groups:
        assert g.dominant_features  # present on every suggested group


def test_rank_suggestions_ascending_undefined_last():
    schema, table, registry, mat = make_loaded(rows=60, seed=9)
    model = kmeans(mat, ClusterConfig(k=5, seed=1))
    groups = clusters_to_subgroups(model, table, schema, registry)
    ranked = rank_suggestions(groups, registry, "accuracy", min_size=0)
    values = [g.metrics["accuracy"] for g in ranked]
    defined = [v for v in values if v is not None]
    assert defined == sorted(defined)
    assert values[len(defined):] == [None] * (len(values) - len(defined))


def test_rank_suggestions_min_size_and_unknown_metric():
    schema, table, registry, mat = make_loaded(rows=50, seed=3)
    model = kmeans(mat, ClusterConfig(k=4, seed=0))
    groups = clusters_to_subgroups(model, table, schema, registry)
    big = rank_suggestions(groups, registry, "accuracy", min_size=10)
    assert all(g.size >= 10 for g in big)
    with pytest.raises(RegistryError, match="registered"):
        rank_suggestions(groups, registry, "wat")
