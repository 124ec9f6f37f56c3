"""Audit engine: one loaded dataset plus the registry of materialized groups.

Both the HTTP service and the CLI drive this class, so their reported
numbers come from the same code paths. Dataset artifacts are immutable
after construction; the group registry is the only mutable state and is
guarded by a lock.
"""

from __future__ import annotations

import threading
from typing import IO, Mapping, Sequence

import numpy as np

from . import __version__
from .errors import GroupError
from .ingest import DataTable, FeatureSchema, IngestConfig, OneHotMatrix, load_dataset, one_hot
from .metrics import ConfusionCounts, MetricRegistry, confusion
from .similar import CounterfactualNeighbor, SimilarityResult, counterfactual_neighbors, find_similar
from .subgroups import MaterializedGroup, SubgroupSpec, generate_product, materialize
from .suggest import ClusterConfig, ClusterModel, clusters_to_subgroups, kmeans, rank_suggestions

DEFAULT_MIN_SIZE = 10


class AuditEngine:
    def __init__(
        self,
        schema: FeatureSchema,
        table: DataTable,
        registry: MetricRegistry | None = None,
    ):
        self.schema = schema
        self.table = table
        self.registry = registry or MetricRegistry()
        self.onehot: OneHotMatrix = one_hot(table, schema)
        self.model: ClusterModel | None = None
        self._groups: dict[str, MaterializedGroup] = {}
        self._suggested_ids: list[str] = []
        self._lock = threading.Lock()
        self.dataset_counts: ConfusionCounts = confusion(np.arange(table.row_count), table)

    @classmethod
    def load(
        cls,
        source: str | bytes | IO[str] | IO[bytes],
        ingest_config: IngestConfig,
        cluster_config: ClusterConfig | None = None,
        registry: MetricRegistry | None = None,
    ) -> "AuditEngine":
        schema, table = load_dataset(source, ingest_config)
        engine = cls(schema, table, registry)
        if cluster_config is not None:
            engine.recluster(cluster_config)
        return engine

    # -- dataset-level -----------------------------------------------------

    def dataset_average(self, metric: str) -> float | None:
        return self.registry.value(self.dataset_counts, metric)

    def dataset_averages(self, metrics: Sequence[str] | None = None) -> dict[str, float | None]:
        names = list(metrics) if metrics is not None else self.registry.names()
        return {m: self.dataset_average(m) for m in names}

    def dataset_distribution(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for i, (name, values) in enumerate(self.schema.features):
            counts = np.bincount(self.table.column(i), minlength=len(values))
            out[name] = {v: int(c) for v, c in zip(values, counts)}
        return out

    # -- group registry ----------------------------------------------------

    def add_group(self, spec: SubgroupSpec) -> MaterializedGroup:
        with self._lock:
            existing = self._groups.get(spec.id)
            if existing is not None:
                return existing
            group = materialize(spec, self.table, self.schema, self.registry)
            self._groups[spec.id] = group
            return group

    def generate(self, selection: Mapping[str, Sequence[str]]) -> list[MaterializedGroup]:
        return [self.add_group(spec) for spec in generate_product(selection, self.schema)]

    def group(self, group_id: str) -> MaterializedGroup:
        with self._lock:
            try:
                return self._groups[group_id]
            except KeyError:
                raise GroupError(f"unknown group id {group_id!r}") from None

    def groups(self) -> list[MaterializedGroup]:
        with self._lock:
            return list(self._groups.values())

    @property
    def suggested(self) -> list[MaterializedGroup]:
        with self._lock:
            return [self._groups[i] for i in self._suggested_ids]

    # -- clustering ----------------------------------------------------------

    def recluster(self, config: ClusterConfig) -> list[MaterializedGroup]:
        model = kmeans(self.onehot, config)
        groups = clusters_to_subgroups(model, self.table, self.schema, self.registry)
        with self._lock:
            for stale in self._suggested_ids:
                self._groups.pop(stale, None)
            self.model = model
            self._suggested_ids = [g.id for g in groups]
            for g in groups:
                self._groups[g.id] = g
        return groups

    def suggestions(
        self,
        sort_metric: str,
        min_size: int = DEFAULT_MIN_SIZE,
        limit: int | None = None,
        descending: bool = False,
    ) -> list[MaterializedGroup]:
        ranked = rank_suggestions(self.suggested, self.registry, sort_metric, min_size)
        if descending:
            defined = [g for g in ranked if g.metrics[sort_metric] is not None]
            undefined = [g for g in ranked if g.metrics[sort_metric] is None]
            ranked = defined[::-1] + undefined  # undefined still sorts last
        return ranked if limit is None else ranked[:limit]

    # -- similarity ----------------------------------------------------------

    def similar(
        self,
        source_id: str,
        *,
        min_size: int = DEFAULT_MIN_SIZE,
        limit: int | None = None,
        sort_metric: str | None = None,
    ) -> list[SimilarityResult]:
        return find_similar(
            source_id,
            self.groups(),
            self.schema,
            min_size=min_size,
            limit=limit,
            sort_metric=sort_metric,
            registry=self.registry,
        )

    def counterfactuals(
        self, source_id: str, metric: str, radius: int = 1
    ) -> list[CounterfactualNeighbor]:
        return counterfactual_neighbors(
            self.group(source_id), self.table, self.schema, self.registry, metric, radius
        )

    # -- export ----------------------------------------------------------------

    def export_group(self, group: MaterializedGroup) -> dict:
        doc: dict = {
            "id": group.id,
            "kind": group.spec.kind,
            "name": group.spec.display_name,
            "size": group.size,
            "confusion": {
                "tp": group.counts.tp,
                "tn": group.counts.tn,
                "fp": group.counts.fp,
                "fn": group.counts.fn,
            },
            "metrics": dict(group.metrics),
            "label_balance": group.label_balance,
        }
        if group.spec.kind == "predicate":
            doc["constraints"] = group.spec.constraint_map()
        else:
            doc["dominant_features"] = [
                {
                    "feature": d.feature,
                    "value": d.dominant_value,
                    "fraction": d.dominant_fraction,
                    "entropy": d.entropy,
                }
                for d in group.dominant_features[:5]
            ]
        return doc

    def export(self, group_ids: Sequence[str], dataset_id: str) -> dict:
        return {
            "tool_version": __version__,
            "dataset_id": dataset_id,
            "groups": [self.export_group(self.group(gid)) for gid in group_ids],
        }
