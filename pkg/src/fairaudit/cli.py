"""Batch audits from the command line.

`fairaudit audit` loads a dataset, clusters it, and writes the ranked
suggested-subgroup report plus the JSON export document. `fairaudit similar`
runs counterfactual neighbor analysis for one predicate group. Both accept a
flat key=value config file; any flag overrides the file.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .cohorts import adult_cohort, compas_cohort, masking_cohort, scale_cohort
from .engine import DEFAULT_MIN_SIZE, AuditEngine
from .errors import FairauditError
from .ingest import IngestConfig
from .suggest import ClusterConfig

_INGEST_KEYS = {
    "label_column": str,
    "prediction_column": str,
    "positive_label": str,
    "delimiter": str,
    "max_categorical_cardinality": int,
    "numeric_bins": int,
    "drop_columns": str,
}
_CLUSTER_KEYS = {"k": int, "seed": int, "max_iterations": int, "tolerance": float}


def _read_config_file(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.ClickException(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _build_configs(config_path: str | None, overrides: dict) -> tuple[IngestConfig, ClusterConfig]:
    raw = _read_config_file(config_path)
    merged: dict = {}
    for key, cast in {**_INGEST_KEYS, **_CLUSTER_KEYS}.items():
        if key in raw:
            merged[key] = cast(raw[key])
        if overrides.get(key) is not None:
            merged[key] = overrides[key]
    for required in ("label_column", "prediction_column", "positive_label"):
        if required not in merged:
            raise click.ClickException(
                f"missing {required}: pass --{required.replace('_', '-')} or set it in --config"
            )
    drop = merged.get("drop_columns", "")
    ingest = IngestConfig(
        label_column=merged["label_column"],
        prediction_column=merged["prediction_column"],
        positive_label=merged["positive_label"],
        delimiter=merged.get("delimiter", ","),
        max_categorical_cardinality=merged.get("max_categorical_cardinality", 20),
        numeric_bins=merged.get("numeric_bins", 10),
        drop_columns=tuple(c.strip() for c in drop.split(",") if c.strip()),
    )
    cluster = ClusterConfig(
        k=merged.get("k", 15),
        seed=merged.get("seed", 0),
        max_iterations=merged.get("max_iterations", 300),
        tolerance=merged.get("tolerance", 1e-4),
    )
    return ingest, cluster


def _ingest_options(fn):
    for decorator in reversed(
        [
            click.option("--config", "config_path", type=click.Path(exists=True), default=None, help="Flat key=value config file."),
            click.option("--label-column", "label_column", default=None),
            click.option("--prediction-column", "prediction_column", default=None),
            click.option("--positive-label", "positive_label", default=None),
            click.option("--delimiter", default=None),
            click.option("--max-categorical-cardinality", "max_categorical_cardinality", type=int, default=None),
            click.option("--numeric-bins", "numeric_bins", type=int, default=None),
            click.option("--drop-columns", "drop_columns", default=None, help="Comma-separated columns to ignore."),
        ]
    ):
        fn = decorator(fn)
    return fn


@click.group()
@click.version_option()
def main() -> None:
    """Intersectional bias audits for binary classifiers on tabular data."""


@main.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@_ingest_options
@click.option("--k", type=int, default=None, help="Number of suggested clusters (default 15).")
@click.option("--seed", type=int, default=None, help="Clustering seed (default 0).")
@click.option("--max-iterations", "max_iterations", type=int, default=None)
@click.option("--tolerance", type=float, default=None)
@click.option("--metrics", default="accuracy,fpr,fnr", show_default=True, help="Metrics to report.")
@click.option("--sort", "sort_metric", default="accuracy", show_default=True, help="Metric to rank by.")
@click.option("--order", type=click.Choice(["asc", "desc"]), default="asc", show_default=True, help="asc: lowest first (default); desc: highest first.")
@click.option("--min-size", "min_size", type=int, default=DEFAULT_MIN_SIZE, show_default=True)
@click.option("--top", "top", type=int, default=10, show_default=True, help="Rows in the report table.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None, help="Write the JSON document here instead of stdout.")
def audit(input_file, config_path, metrics, sort_metric, order, min_size, top, out_path, **overrides):
    """Cluster INPUT_FILE and report the lowest-ranked suggested subgroups."""
    ingest_cfg, cluster_cfg = _build_configs(config_path, overrides)
    metric_names = [m.strip() for m in metrics.split(",") if m.strip()]
    try:
        engine = AuditEngine.load(Path(input_file).read_bytes(), ingest_cfg)
        cluster_cfg = ClusterConfig(
            k=min(cluster_cfg.k, engine.table.row_count),
            seed=cluster_cfg.seed,
            max_iterations=cluster_cfg.max_iterations,
            tolerance=cluster_cfg.tolerance,
        )
        engine.recluster(cluster_cfg)
        for m in [sort_metric, *metric_names]:
            if m not in engine.registry:
                raise FairauditError(
                    f"unknown metric {m!r}; registered: {', '.join(engine.registry.names())}"
                )
        ranked = engine.suggestions(
            sort_metric, min_size=min_size, limit=top, descending=order == "desc"
        )
    except FairauditError as exc:
        raise click.ClickException(f"{input_file}: {exc}") from exc

    dataset_id = Path(input_file).name
    table_lines = _report_table(engine, ranked, sort_metric, metric_names)
    document = engine.export([g.id for g in ranked], dataset_id=dataset_id)
    document["sort"] = sort_metric
    document["order"] = order
    document["min_size"] = min_size
    document["dataset_averages"] = engine.dataset_averages(metric_names)

    if out_path:
        Path(out_path).write_text(json.dumps(document, indent=2) + "\n")
        click.echo("\n".join(table_lines))
        click.echo(f"wrote {out_path}")
    else:
        click.echo("\n".join(table_lines), err=True)
        click.echo(json.dumps(document, indent=2))


def _fmt(value: float | None) -> str:
    return "undef" if value is None else f"{value:.4f}"


def _report_table(engine, groups, sort_metric, metric_names) -> list[str]:
    names = [sort_metric] + [m for m in metric_names if m != sort_metric]
    header = f"{'#':>3}  {'group':<28}{'size':>7}  " + "".join(f"{m:>12}" for m in names)
    lines = [header, "-" * len(header)]
    for rank, g in enumerate(groups, 1):
        label = g.spec.display_name[:28]
        cells = "".join(f"{_fmt(g.metrics[m]):>12}" for m in names)
        lines.append(f"{rank:>3}  {label:<28}{g.size:>7}  {cells}")
    avg = engine.dataset_averages(names)
    cells = "".join(f"{_fmt(avg[m]):>12}" for m in names)
    lines.append(f"{'':>3}  {'dataset average':<28}{engine.table.row_count:>7}  {cells}")
    return lines


@main.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@_ingest_options
@click.option("--group", "group_spec", required=True, help='Constraints like "sex=Female,race=Caucasian".')
@click.option("--radius", type=click.IntRange(1, 2), default=1, show_default=True)
@click.option("--metric", default="accuracy", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
def similar(input_file, config_path, group_spec, radius, metric, out_path, **overrides):
    """Rank counterfactual neighbors of a predicate group by metric change."""
    ingest_cfg, _ = _build_configs(config_path, overrides)
    constraints = {}
    for part in group_spec.split(","):
        if "=" not in part:
            raise click.ClickException(f"cannot parse constraint {part!r}; expected feature=value")
        feature, _, value = part.partition("=")
        constraints[feature.strip()] = value.strip()
    try:
        engine = AuditEngine.load(Path(input_file).read_bytes(), ingest_cfg)
        from .subgroups import SubgroupSpec

        source = engine.add_group(SubgroupSpec.predicate(constraints, engine.schema))
        neighbors = engine.counterfactuals(source.id, metric, radius)
    except FairauditError as exc:
        raise click.ClickException(f"{input_file}: {exc}") from exc

    lines = [
        f"source {source.spec.display_name}  size={source.size}  {metric}={_fmt(source.metrics[metric])}",
        f"{'#':>3}  {'changed':<44}{'size':>7}  {metric:>12}{'|delta|':>12}",
    ]
    doc_neighbors = []
    for rank, nb in enumerate(neighbors, 1):
        changed = "; ".join(f"{f}: {a}->{b}" for f, a, b in nb.changed)
        flag = " (empty)" if nb.is_empty else ""
        lines.append(
            f"{rank:>3}  {changed[:44]:<44}{nb.group.size:>7}  {_fmt(nb.metric_value):>12}{_fmt(nb.delta):>12}{flag}"
        )
        doc_neighbors.append(
            {
                "group": engine.export_group(nb.group),
                "changed": [{"feature": f, "from": a, "to": b} for f, a, b in nb.changed],
                "delta": nb.delta,
                "empty": nb.is_empty,
            }
        )
    document = {
        "source": engine.export_group(source),
        "metric": metric,
        "radius": radius,
        "neighbors": doc_neighbors,
    }
    if out_path:
        Path(out_path).write_text(json.dumps(document, indent=2) + "\n")
    click.echo("\n".join(lines))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--ui", "ui_dir", type=click.Path(exists=True, file_okay=False), default=None, help="Serve a built frontend from this directory.")
def serve(host, port, ui_dir):
    """Run the HTTP API (and optionally the web UI)."""
    import uvicorn

    from .service import create_app

    app = create_app()
    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    uvicorn.run(app, host=host, port=port)


_COHORTS = {
    "compas": compas_cohort,
    "adult": adult_cohort,
    "masking": masking_cohort,
    "scale": scale_cohort,
}


@main.command()
@click.argument("name", type=click.Choice(sorted(_COHORTS)))
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("--rows", type=int, default=None, help="Row count for sized cohorts.")
def synth(name, out_path, rows):
    """Write one of the bundled demo cohorts as CSV."""
    fn = _COHORTS[name]
    frame = fn(rows) if rows is not None and name in ("adult", "scale") else fn()
    frame.to_csv(out_path, index=False)
    click.echo(f"wrote {len(frame)} rows to {out_path}")


if __name__ == "__main__":
    sys.exit(main())
