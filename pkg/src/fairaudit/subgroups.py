"""Subgroup definition and materialization.

Two kinds of group exist: predicate groups (feature=value conjunctions,
possibly generated as a full Cartesian product over selected values) and
cluster groups (an explicit member set produced by the suggestion engine).
Materializing either yields the member rows, confusion counts, the full
metric set, and per-feature value distributions.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .errors import GroupError
from .ingest import DataTable, FeatureSchema
from .metrics import ConfusionCounts, MetricRegistry, confusion, label_balance


def _content_id(kind: str, payload: object) -> str:
    digest = hashlib.sha1(
        json.dumps([kind, payload], sort_keys=True, separators=(",", ":")).encode()
    )
    return digest.hexdigest()[:12]


@dataclass(frozen=True)
class SubgroupSpec:
    """A predicate (constraints) or cluster (member id set) group definition."""

    kind: str  # "predicate" | "cluster"
    constraints: tuple[tuple[str, str], ...] = ()
    member_ids: tuple[int, ...] = ()
    display_name: str = ""

    @staticmethod
    def predicate(
        constraints: Mapping[str, str], schema: FeatureSchema, display_name: str = ""
    ) -> "SubgroupSpec":
        for feature, value in constraints.items():
            if value not in schema.values_of(feature):
                raise GroupError(f"value {value!r} is not legal for feature {feature!r}")
        ordered = tuple(sorted(constraints.items()))
        name = display_name or " · ".join(f"{f}={v}" for f, v in ordered)
        return SubgroupSpec(kind="predicate", constraints=ordered, display_name=name)

    @staticmethod
    def cluster(member_ids: Sequence[int], display_name: str = "") -> "SubgroupSpec":
        ids = tuple(sorted(int(i) for i in member_ids))
        return SubgroupSpec(kind="cluster", member_ids=ids, display_name=display_name)

    @property
    def id(self) -> str:
        if self.kind == "predicate":
            return _content_id("predicate", list(self.constraints))
        return _content_id("cluster", list(self.member_ids))

    def constraint_map(self) -> dict[str, str]:
        return dict(self.constraints)


@dataclass
class FeatureDistribution:
    """Per-feature value counts within one group (N_k,v tallies, size N_k)."""

    counts: dict[str, np.ndarray]
    size: int

    def normalized(self, feature: str) -> np.ndarray:
        if self.size == 0:
            raise GroupError("empty group has no normalized distribution")
        return self.counts[feature] / self.size


@dataclass
class MaterializedGroup:
    spec: SubgroupSpec
    member_index: np.ndarray
    counts: ConfusionCounts
    metrics: dict[str, float | None]
    distribution: FeatureDistribution
    label_balance: float | None
    dominant_features: list = field(default_factory=list)

    @property
    def id(self) -> str:
        return self.spec.id

    @property
    def size(self) -> int:
        return int(self.member_index.size)

    @property
    def is_empty(self) -> bool:
        return self.size == 0


def predicate_mask(spec: SubgroupSpec, table: DataTable, schema: FeatureSchema) -> np.ndarray:
    mask = np.ones(table.row_count, dtype=bool)
    for feature, value in spec.constraints:
        col = schema.index_of(feature)
        code = schema.values_of(feature).index(value)
        mask &= table.column(col) == code
    return mask


def feature_distribution(
    member_index: np.ndarray, table: DataTable, schema: FeatureSchema
) -> FeatureDistribution:
    counts: dict[str, np.ndarray] = {}
    for i, (name, values) in enumerate(schema.features):
        col = table.column(i)[member_index]
        counts[name] = np.bincount(col, minlength=len(values)).astype(np.int64)
    return FeatureDistribution(counts=counts, size=int(member_index.size))


def materialize(
    spec: SubgroupSpec,
    table: DataTable,
    schema: FeatureSchema,
    registry: MetricRegistry,
) -> MaterializedGroup:
    """Resolve a spec to its member rows and compute all derived statistics."""
    if spec.kind == "predicate":
        members = np.flatnonzero(predicate_mask(spec, table, schema))
    elif spec.kind == "cluster":
        members = np.asarray(spec.member_ids, dtype=np.int64)
        if members.size and (members.min() < 0 or members.max() >= table.row_count):
            raise GroupError("cluster member ids fall outside the table")
    else:
        raise GroupError(f"unknown subgroup kind {spec.kind!r}")
    c = confusion(members, table)
    return MaterializedGroup(
        spec=spec,
        member_index=members,
        counts=c,
        metrics=registry.all_values(c),
        distribution=feature_distribution(members, table, schema),
        label_balance=label_balance(members, table),
    )


def generate_product(
    selection: Mapping[str, Sequence[str]], schema: FeatureSchema
) -> list[SubgroupSpec]:
    """One predicate group per element of the Cartesian product of the selected
    value sets. Groups that turn out empty are kept (callers flag them)."""
    if not selection:
        raise GroupError("empty selection: pick at least one feature")
    ordered_features = [name for name in schema.feature_names if name in selection]
    if len(ordered_features) != len(selection):
        unknown = set(selection) - set(schema.feature_names)
        raise GroupError(f"unknown features in selection: {sorted(unknown)}")
    value_sets = []
    for feature in ordered_features:
        chosen = list(selection[feature])
        if not chosen:
            raise GroupError(f"no values selected for feature {feature!r}")
        legal = schema.values_of(feature)
        for v in chosen:
            if v not in legal:
                raise GroupError(f"value {v!r} is not legal for feature {feature!r}")
        value_sets.append(chosen)
    specs = []
    for combo in product(*value_sets):
        constraints = dict(zip(ordered_features, combo))
        specs.append(SubgroupSpec.predicate(constraints, schema))
    return specs


def filter_by_size(
    groups: Sequence[MaterializedGroup], min_size: int
) -> list[MaterializedGroup]:
    """Order-preserving filter keeping groups with at least `min_size` members."""
    return [g for g in groups if g.size >= min_size]
