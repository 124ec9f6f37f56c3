"""HTTP JSON API over the audit engine.

One in-memory session per uploaded dataset; dataset artifacts are immutable
after load, so concurrent reads are safe. Sessions are evicted lazily after
an idle TTL. Every numeric value in a payload is the engine value, without
server-side rounding.
"""

from __future__ import annotations

import threading
import time
import uuid
from typing import Annotated

from fastapi import FastAPI, Form, HTTPException, Query, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import __version__
from .engine import DEFAULT_MIN_SIZE, AuditEngine
from .errors import FairauditError, GroupError, RegistryError
from .ingest import IngestConfig
from .subgroups import MaterializedGroup
from .suggest import ClusterConfig


class Session:
    def __init__(self, dataset_id: str, engine: AuditEngine):
        self.dataset_id = dataset_id
        self.engine = engine
        self.last_access = time.monotonic()
        self.pinned: str | None = None
        self.hovered: str | None = None

    def touch(self) -> None:
        self.last_access = time.monotonic()


class SessionStore:
    def __init__(self, idle_ttl_seconds: float = 3600.0):
        self.idle_ttl_seconds = idle_ttl_seconds
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def put(self, session: Session) -> None:
        with self._lock:
            self._evict()
            self._sessions[session.dataset_id] = session

    def get(self, dataset_id: str) -> Session:
        with self._lock:
            self._evict()
            session = self._sessions.get(dataset_id)
            if session is None:
                raise HTTPException(status_code=404, detail=f"unknown dataset {dataset_id!r}")
            session.touch()
            return session

    def _evict(self) -> None:
        horizon = time.monotonic() - self.idle_ttl_seconds
        stale = [k for k, s in self._sessions.items() if s.last_access < horizon]
        for k in stale:
            del self._sessions[k]


class SelectionBody(BaseModel):
    pinned: str | None = None
    hovered: str | None = None


class GenerateBody(BaseModel):
    selection: dict[str, list[str]]
    metrics: list[str] | None = None


class ExportBody(BaseModel):
    ids: list[str] | None = None


def _group_summary(group: MaterializedGroup, metrics: list[str]) -> dict:
    return {
        "id": group.id,
        "name": group.spec.display_name,
        "kind": group.spec.kind,
        "size": group.size,
        "empty": group.is_empty,
        "metrics": {m: group.metrics[m] for m in metrics},
    }


def _distributions(group: MaterializedGroup, engine: AuditEngine) -> dict:
    out = {}
    for name, values in engine.schema.features:
        counts = group.distribution.counts[name]
        out[name] = {"values": list(values), "counts": [int(c) for c in counts]}
    return out


def _group_detail(group: MaterializedGroup, engine: AuditEngine) -> dict:
    doc = engine.export_group(group)
    doc["distributions"] = _distributions(group, engine)
    return doc


def create_app(idle_ttl_seconds: float = 3600.0) -> FastAPI:
    app = FastAPI(title="fairaudit", version=__version__)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = SessionStore(idle_ttl_seconds)
    app.state.sessions = store

    @app.exception_handler(FairauditError)
    async def engine_error(request, exc: FairauditError):
        from fastapi.responses import JSONResponse

        status = 404 if isinstance(exc, GroupError) and "unknown" in str(exc) else 400
        if isinstance(exc, RegistryError):
            status = 400
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    def _metric_names(session: Session, metrics: str | None) -> list[str]:
        registry = session.engine.registry
        if not metrics:
            return registry.names()
        names = [m.strip() for m in metrics.split(",") if m.strip()]
        for m in names:
            if m not in registry:
                raise HTTPException(
                    status_code=400,
                    detail=f"unknown metric {m!r}; registered: {', '.join(registry.names())}",
                )
        return names

    @app.post("/datasets", status_code=201)
    async def upload_dataset(
        file: UploadFile,
        label_column: Annotated[str, Form()],
        prediction_column: Annotated[str, Form()],
        positive_label: Annotated[str, Form()],
        delimiter: Annotated[str, Form()] = ",",
        max_categorical_cardinality: Annotated[int, Form()] = 20,
        numeric_bins: Annotated[int, Form()] = 10,
        drop_columns: Annotated[str, Form()] = "",
        k: Annotated[int, Form()] = 15,
        seed: Annotated[int, Form()] = 0,
        max_iterations: Annotated[int, Form()] = 300,
        tolerance: Annotated[float, Form()] = 1e-4,
    ):
        config = IngestConfig(
            label_column=label_column,
            prediction_column=prediction_column,
            positive_label=positive_label,
            delimiter=delimiter,
            max_categorical_cardinality=max_categorical_cardinality,
            numeric_bins=numeric_bins,
            drop_columns=tuple(c.strip() for c in drop_columns.split(",") if c.strip()),
        )
        payload = await file.read()
        try:
            engine = AuditEngine.load(payload, config)
            cluster_k = min(k, engine.table.row_count)
            engine.recluster(
                ClusterConfig(k=cluster_k, seed=seed, max_iterations=max_iterations, tolerance=tolerance)
            )
        except FairauditError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        session = Session(dataset_id=uuid.uuid4().hex[:12], engine=engine)
        store.put(session)
        return {
            "dataset_id": session.dataset_id,
            "row_count": engine.table.row_count,
            "dropped_rows": engine.table.dropped_rows,
            "features": [
                {"name": name, "values": list(values)} for name, values in engine.schema.features
            ],
            "metrics": engine.registry.names(),
        }

    @app.get("/datasets/{dataset_id}/features")
    def features(dataset_id: str):
        session = store.get(dataset_id)
        engine = session.engine
        dist = engine.dataset_distribution()
        return {
            "row_count": engine.table.row_count,
            "dropped_rows": engine.table.dropped_rows,
            "features": [
                {
                    "name": name,
                    "values": list(values),
                    "counts": [dist[name][v] for v in values],
                }
                for name, values in engine.schema.features
            ],
        }

    @app.post("/datasets/{dataset_id}/groups", status_code=201)
    def generate_groups(dataset_id: str, body: GenerateBody):
        session = store.get(dataset_id)
        if not body.selection:
            raise HTTPException(status_code=400, detail="empty selection")
        metrics = body.metrics or session.engine.registry.names()
        for m in metrics:
            if m not in session.engine.registry:
                raise HTTPException(status_code=400, detail=f"unknown metric {m!r}")
        groups = session.engine.generate(body.selection)
        return {
            "groups": [_group_summary(g, metrics) for g in groups],
            "dataset_averages": session.engine.dataset_averages(metrics),
        }

    @app.get("/datasets/{dataset_id}/groups")
    def list_groups(
        dataset_id: str,
        metrics: str | None = Query(default=None),
        min_size: int = Query(default=0, ge=0),
    ):
        session = store.get(dataset_id)
        names = _metric_names(session, metrics)
        groups = [g for g in session.engine.groups() if g.size >= min_size]
        return {
            "groups": [_group_summary(g, names) for g in groups],
            "dataset_averages": session.engine.dataset_averages(names),
        }

    @app.get("/datasets/{dataset_id}/groups/{group_id}")
    def group_detail(dataset_id: str, group_id: str):
        session = store.get(dataset_id)
        return _group_detail(session.engine.group(group_id), session.engine)

    @app.get("/datasets/{dataset_id}/suggested")
    def suggested(
        dataset_id: str,
        sort: str = Query(default="accuracy"),
        order: str = Query(default="asc", pattern="^(asc|desc)$"),
        min_size: int = Query(default=DEFAULT_MIN_SIZE, ge=0),
        limit: int | None = Query(default=None, ge=1),
    ):
        session = store.get(dataset_id)
        groups = session.engine.suggestions(
            sort, min_size=min_size, limit=limit, descending=order == "desc"
        )
        payload = []
        for g in groups:
            doc = _group_summary(g, session.engine.registry.names())
            doc["dominant_features"] = [
                {
                    "feature": d.feature,
                    "value": d.dominant_value,
                    "fraction": d.dominant_fraction,
                    "entropy": d.entropy,
                }
                for d in g.dominant_features[:5]
            ]
            doc["distributions"] = _distributions(g, session.engine)
            payload.append(doc)
        return {"groups": payload, "sort": sort, "dataset_averages": session.engine.dataset_averages()}

    @app.get("/datasets/{dataset_id}/groups/{group_id}/similar")
    def similar(
        dataset_id: str,
        group_id: str,
        radius: int | None = Query(default=None, ge=1, le=2),
        sort: str | None = Query(default=None),
        metric: str = Query(default="accuracy"),
        min_size: int = Query(default=DEFAULT_MIN_SIZE, ge=0),
        limit: int | None = Query(default=None, ge=1),
    ):
        session = store.get(dataset_id)
        engine = session.engine
        if radius is not None:
            neighbors = engine.counterfactuals(group_id, metric, radius)
            return {
                "mode": "counterfactual",
                "metric": metric,
                "neighbors": [
                    {
                        "group": _group_summary(nb.group, [metric]),
                        "changed": [
                            {"feature": f, "from": a, "to": b} for f, a, b in nb.changed
                        ],
                        "metric_value": nb.metric_value,
                        "delta": nb.delta,
                        "empty": nb.is_empty,
                    }
                    for nb in neighbors
                ],
            }
        results = engine.similar(group_id, min_size=min_size, limit=limit, sort_metric=sort)
        payload = []
        for r in results:
            g = engine.group(r.candidate_id)
            payload.append(
                {
                    "group": _group_summary(g, engine.registry.names()),
                    "distance": r.distance,
                    "per_feature": r.per_feature,
                    "most_divergent_feature": r.most_divergent_feature,
                    "counterfactual_delta": (
                        None
                        if r.counterfactual_delta is None
                        else [
                            {"feature": f, "from": a, "to": b}
                            for f, a, b in r.counterfactual_delta
                        ]
                    ),
                }
            )
        return {"mode": "divergence", "neighbors": payload}

    @app.get("/datasets/{dataset_id}/detail")
    def detail(
        dataset_id: str,
        pinned: str | None = Query(default=None),
        hovered: str | None = Query(default=None),
    ):
        session = store.get(dataset_id)
        engine = session.engine
        out: dict = {"dataset_averages": engine.dataset_averages()}
        for role, gid in (("pinned", pinned), ("hovered", hovered)):
            out[role] = None if gid is None else _group_detail(engine.group(gid), engine)
        return out

    @app.post("/datasets/{dataset_id}/selection")
    def set_selection(dataset_id: str, body: SelectionBody):
        session = store.get(dataset_id)
        for gid in (body.pinned, body.hovered):
            if gid is not None:
                session.engine.group(gid)  # 404 via handler if unknown
        session.pinned = body.pinned
        session.hovered = body.hovered
        return {"pinned": session.pinned, "hovered": session.hovered}

    @app.post("/datasets/{dataset_id}/recluster")
    def recluster(
        dataset_id: str,
        k: int = Query(default=15, ge=1),
        seed: int = Query(default=0),
        max_iterations: int = Query(default=300, ge=1),
        tolerance: float = Query(default=1e-4, ge=0.0),
    ):
        session = store.get(dataset_id)
        groups = session.engine.recluster(
            ClusterConfig(k=k, seed=seed, max_iterations=max_iterations, tolerance=tolerance)
        )
        return {"clusters": len(groups)}

    @app.post("/datasets/{dataset_id}/export")
    def export(dataset_id: str, body: ExportBody | None = None):
        session = store.get(dataset_id)
        ids = body.ids if body and body.ids else None
        if ids is None:
            ids = [gid for gid in (session.pinned, session.hovered) if gid is not None]
        if not ids:
            raise HTTPException(status_code=400, detail="nothing selected to export")
        return session.engine.export(ids, dataset_id=session.dataset_id)

    return app


app = create_app()
