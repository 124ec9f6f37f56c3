"""Subgroup similarity: summed Jensen-Shannon divergence over per-feature
value distributions, and counterfactual one/two-value flips for predicate
groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Mapping, Sequence

import numpy as np

from .errors import GroupError, RegistryError
from .ingest import DataTable, FeatureSchema
from .metrics import MetricRegistry, sort_key
from .subgroups import MaterializedGroup, SubgroupSpec, materialize

_SUM_TOLERANCE = 1e-9


def _js_arrays(p: np.ndarray, q: np.ndarray) -> float:
    """JS(p‖q) in bits: ½KL(p‖m) + ½KL(q‖m) with m = ½(p+q); 0·log 0 := 0."""
    m = 0.5 * (p + q)
    pm = p > 0
    qm = q > 0
    kl_pm = float((p[pm] * np.log2(p[pm] / m[pm])).sum())
    kl_qm = float((q[qm] * np.log2(q[qm] / m[qm])).sum())
    js = 0.5 * kl_pm + 0.5 * kl_qm
    return min(1.0, max(0.0, js))


def js_divergence(
    p: Mapping[str, float],
    q: Mapping[str, float],
    vocabulary: Sequence[str] | None = None,
) -> float:
    """JS divergence between two normalized value distributions (log base 2).

    Values absent from a mapping count as probability 0. When a vocabulary
    is given, keys outside it are an error; otherwise the union of keys is
    the support.
    """
    if vocabulary is not None:
        vocab = list(vocabulary)
        extra = (set(p) | set(q)) - set(vocab)
        if extra:
            raise GroupError(f"values outside the declared vocabulary: {sorted(extra)}")
    else:
        vocab = sorted(set(p) | set(q))
    pa = np.array([p.get(v, 0.0) for v in vocab], dtype=np.float64)
    qa = np.array([q.get(v, 0.0) for v in vocab], dtype=np.float64)
    for name, arr in (("p", pa), ("q", qa)):
        if abs(arr.sum() - 1.0) > _SUM_TOLERANCE:
            raise GroupError(f"distribution {name} sums to {arr.sum()}, expected 1")
        if (arr < 0).any():
            raise GroupError(f"distribution {name} has negative probabilities")
    return _js_arrays(pa, qa)


@dataclass
class SimilarityResult:
    source_id: str
    candidate_id: str
    distance: float
    per_feature: dict[str, float]
    most_divergent_feature: str
    counterfactual_delta: list[tuple[str, str, str]] | None = None


def subgroup_distance(
    a: MaterializedGroup, b: MaterializedGroup, schema: FeatureSchema
) -> SimilarityResult:
    """Total distance D: the sum over all schema features of the JS divergence
    between the groups' normalized value distributions."""
    if a.is_empty or b.is_empty:
        raise GroupError("cannot compute distance for an empty group")
    per_feature: dict[str, float] = {}
    for name, _ in schema.features:
        per_feature[name] = _js_arrays(a.distribution.normalized(name), b.distribution.normalized(name))
    top = max(per_feature.values())
    most_divergent = min(f for f, d in per_feature.items() if d == top)
    delta = None
    if a.spec.kind == "predicate" and b.spec.kind == "predicate":
        ca, cb = a.spec.constraint_map(), b.spec.constraint_map()
        delta = [
            (f, ca[f], cb[f])
            for f in sorted(set(ca) & set(cb))
            if ca[f] != cb[f]
        ]
    return SimilarityResult(
        source_id=a.id,
        candidate_id=b.id,
        distance=float(sum(per_feature.values())),
        per_feature=per_feature,
        most_divergent_feature=most_divergent,
        counterfactual_delta=delta,
    )


def find_similar(
    source_id: str,
    universe: Sequence[MaterializedGroup],
    schema: FeatureSchema,
    *,
    min_size: int = 0,
    limit: int | None = None,
    sort_metric: str | None = None,
    registry: MetricRegistry | None = None,
) -> list[SimilarityResult]:
    """Candidates ranked ascending by D; the source itself is excluded.

    The D-nearest, size-filtered set is selected first; when a sort metric
    is requested it reorders that returned set only (presentation order).
    """
    by_id = {g.id: g for g in universe}
    if source_id not in by_id:
        raise GroupError(f"unknown source group {source_id!r}")
    source = by_id[source_id]
    if source.is_empty:
        raise GroupError("cannot search similar groups for an empty group")
    results = []
    for g in universe:
        if g.id == source_id or g.is_empty or g.size < min_size:
            continue
        results.append((subgroup_distance(source, g, schema), g))
    results.sort(key=lambda pair: (pair[0].distance, pair[1].id))
    if limit is not None:
        results = results[:limit]
    if sort_metric is not None:
        if registry is None:
            raise GroupError("sorting by metric requires a registry")
        if sort_metric not in registry:
            raise RegistryError(
                f"unknown sort metric {sort_metric!r}; registered: {', '.join(registry.names())}"
            )
        results.sort(key=lambda pair: sort_key(pair[1].metrics[sort_metric]))
    return [r for r, _ in results]


@dataclass
class CounterfactualNeighbor:
    group: MaterializedGroup
    changed: list[tuple[str, str, str]]  # (feature, source value, neighbor value)
    metric_value: float | None
    delta: float | None  # |metric(source) - metric(neighbor)|, None if either undefined

    @property
    def is_empty(self) -> bool:
        return self.group.is_empty


def counterfactual_neighbors(
    source: MaterializedGroup,
    table: DataTable,
    schema: FeatureSchema,
    registry: MetricRegistry,
    metric: str,
    radius: int = 1,
) -> list[CounterfactualNeighbor]:
    """All predicate groups reachable by replacing the values of exactly
    `radius` constrained features, ranked descending by |Δ metric|.

    Neighbors whose metric is undefined rank last; empty neighbors are
    retained and flagged through their zero size.
    """
    if source.spec.kind != "predicate":
        raise GroupError("counterfactual neighbors require a predicate group")
    if radius not in (1, 2):
        raise GroupError("radius must be 1 or 2")
    if metric not in registry:
        raise RegistryError(
            f"unknown metric {metric!r}; registered: {', '.join(registry.names())}"
        )
    constraints = source.spec.constraint_map()
    if len(constraints) < radius:
        raise GroupError(f"group has fewer than {radius} constrained features")
    source_value = source.metrics[metric]

    neighbors = []
    for features in combinations(sorted(constraints), radius):
        alternative_sets = []
        for f in features:
            alternatives = [v for v in schema.values_of(f) if v != constraints[f]]
            alternative_sets.append(alternatives)
        for replacement in product(*alternative_sets):
            flipped = dict(constraints)
            changed = []
            for f, v in zip(features, replacement):
                changed.append((f, constraints[f], v))
                flipped[f] = v
            spec = SubgroupSpec.predicate(flipped, schema)
            group = materialize(spec, table, schema, registry)
            value = group.metrics[metric]
            delta = None if source_value is None or value is None else abs(source_value - value)
            neighbors.append(CounterfactualNeighbor(group, changed, value, delta))

    neighbors.sort(
        key=lambda nb: (
            nb.delta is None,
            -(nb.delta or 0.0),
            nb.changed,
        )
    )
    return neighbors
