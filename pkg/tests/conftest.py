"""Shared fixtures and the acceptance-suite terminal summary."""

from __future__ import annotations

import numpy as np
import pytest

from fairaudit.ingest import DataTable, FeatureSchema
from fairaudit.metrics import MetricRegistry


def build_table(
    feature_values: dict[str, list[str]],
    rows: list[dict[str, str]],
    labels: list[int],
    predictions: list[int],
) -> tuple[FeatureSchema, DataTable]:
    """Build a schema/table pair by hand from explicit row dicts."""
    schema = FeatureSchema(
        features=tuple((name, tuple(values)) for name, values in feature_values.items()),
        label_column="label",
        prediction_column="prediction",
        positive_label="1",
    )
    codes = np.array(
        [[feature_values[f].index(r[f]) for f in feature_values] for r in rows],
        dtype=np.int32,
    ).reshape(len(rows), len(feature_values))
    table = DataTable(
        codes=codes,
        labels=np.array(labels, dtype=bool),
        predictions=np.array(predictions, dtype=bool),
    )
    return schema, table


def random_table(
    rng: np.random.Generator, n_rows: int, vocab_sizes: list[int]
) -> tuple[FeatureSchema, DataTable]:
    feature_values = {
        f"f{i}": [f"v{j}" for j in range(size)] for i, size in enumerate(vocab_sizes)
    }
    schema = FeatureSchema(
        features=tuple((name, tuple(vals)) for name, vals in feature_values.items()),
        label_column="label",
        prediction_column="prediction",
        positive_label="1",
    )
    codes = np.column_stack(
        [rng.integers(0, size, size=n_rows) for size in vocab_sizes]
    ).astype(np.int32)
    table = DataTable(
        codes=codes,
        labels=rng.random(n_rows) < 0.5,
        predictions=rng.random(n_rows) < 0.5,
    )
    return schema, table


@pytest.fixture
def registry() -> MetricRegistry:
    return MetricRegistry()


_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def record_acceptance(name: str, passed: bool) -> None:
    _ACCEPTANCE_RESULTS.append((name, "PASS" if passed else "FAIL"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{verdict}  {name}")
