"""Dataset loading: schema inference, integer-coded columns, one-hot encoding.

Every downstream computation reads the immutable (FeatureSchema, DataTable)
pair produced here. All features are treated as categorical; numeric columns
with high cardinality are quantile-binned into labeled intervals.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np
import pandas as pd

from .errors import EmptyDatasetError, LabelError, SchemaError


@dataclass(frozen=True)
class IngestConfig:
    label_column: str
    prediction_column: str
    positive_label: str
    max_categorical_cardinality: int = 20
    numeric_bins: int = 10
    delimiter: str = ","
    drop_columns: tuple[str, ...] = ()


@dataclass(frozen=True)
class FeatureSchema:
    """Ordered feature vocabulary: names and the legal values of each feature."""

    features: tuple[tuple[str, tuple[str, ...]], ...]
    label_column: str
    prediction_column: str
    positive_label: str

    def __post_init__(self) -> None:
        names = [name for name, _ in self.features]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate feature names in schema")
        for name, values in self.features:
            if not values or len(set(values)) != len(values):
                raise SchemaError(f"feature {name!r} has an empty or duplicated value list")
        if self.label_column in names or self.prediction_column in names:
            raise SchemaError("label/prediction columns cannot also be features")

    @property
    def feature_names(self) -> list[str]:
        return [name for name, _ in self.features]

    def values_of(self, feature: str) -> tuple[str, ...]:
        for name, values in self.features:
            if name == feature:
                return values
        raise SchemaError(f"unknown feature {feature!r}")

    def index_of(self, feature: str) -> int:
        for i, (name, _) in enumerate(self.features):
            if name == feature:
                return i
        raise SchemaError(f"unknown feature {feature!r}")


class DataTable:
    """Immutable columnar store of integer-coded feature values plus outcomes.

    codes[r, i] indexes into the value list of the i-th schema feature;
    labels/predictions are boolean with True meaning the positive class.
    """

    def __init__(
        self,
        codes: np.ndarray,
        labels: np.ndarray,
        predictions: np.ndarray,
        dropped_rows: int = 0,
    ):
        codes = np.ascontiguousarray(codes, dtype=np.int32)
        labels = np.asarray(labels, dtype=bool)
        predictions = np.asarray(predictions, dtype=bool)
        if not (len(labels) == len(predictions) == codes.shape[0]):
            raise ValueError("codes, labels and predictions must share row count")
        codes.setflags(write=False)
        labels.setflags(write=False)
        predictions.setflags(write=False)
        self.codes = codes
        self.labels = labels
        self.predictions = predictions
        self.dropped_rows = dropped_rows

    @property
    def row_count(self) -> int:
        return self.codes.shape[0]

    def column(self, feature_index: int) -> np.ndarray:
        return self.codes[:, feature_index]


class OneHotMatrix:
    """One-hot view of a DataTable: one binary block per feature.

    Stored implicitly as (codes, block offsets); dense() materializes the
    full 0/1 matrix. Row r carries exactly one 1 per feature block, at
    offset[i] + codes[r, i].
    """

    def __init__(self, codes: np.ndarray, block_sizes: Sequence[int]):
        self.codes = codes
        self.block_sizes = tuple(int(b) for b in block_sizes)
        self.offsets = np.concatenate([[0], np.cumsum(self.block_sizes[:-1])]).astype(np.int64)
        self.dim = int(sum(self.block_sizes))

    @property
    def row_count(self) -> int:
        return self.codes.shape[0]

    @property
    def feature_count(self) -> int:
        return self.codes.shape[1]

    def dense(self) -> np.ndarray:
        out = np.zeros((self.row_count, self.dim), dtype=np.uint8)
        cols = self.offsets[None, :] + self.codes
        out[np.arange(self.row_count)[:, None], cols] = 1
        return out

    def decode(self, row: np.ndarray) -> list[int]:
        """Recover integer codes from a dense one-hot row, block by block."""
        codes = []
        for size, off in zip(self.block_sizes, self.offsets):
            block = np.asarray(row[off : off + size])
            ones = np.flatnonzero(block)
            if len(ones) != 1:
                raise ValueError("row does not have exactly one 1 per block")
            codes.append(int(ones[0]))
        return codes


@dataclass
class BinnedColumn:
    """Quantile-binned numeric column: edges and printable interval labels."""

    edges: np.ndarray  # interior edges, len = bins - 1
    labels: list[str] = field(default_factory=list)


def _is_missing(series: pd.Series) -> pd.Series:
    return series.isna() | (series.astype(str).str.strip() == "")


def _quantile_bin(values: np.ndarray, bins: int) -> tuple[np.ndarray, BinnedColumn]:
    """Assign each value to one of up to `bins` quantile intervals.

    Interior edges sit at the j/bins quantiles of the sorted values
    (linear interpolation); duplicate edges collapse, so heavily tied
    columns may yield fewer bins. Labels are prefixed with the zero-padded
    bin index so lexicographic vocabulary order equals numeric order.
    """
    qs = np.linspace(0, 1, bins + 1)[1:-1]
    edges = np.unique(np.quantile(values, qs, method="linear"))
    assignments = np.searchsorted(edges, values, side="right")
    lo, hi = values.min(), values.max()
    bounds = np.concatenate([[lo], edges, [hi]])
    labels = []
    for i in range(len(edges) + 1):
        left, right = bounds[i], bounds[i + 1]
        closer = "]" if i == len(edges) else ")"
        labels.append(f"{i:02d} [{left:g}, {right:g}{closer}")
    return assignments.astype(np.int32), BinnedColumn(edges=edges, labels=labels)


def load_dataset(
    source: str | bytes | IO[str] | IO[bytes],
    config: IngestConfig,
) -> tuple[FeatureSchema, DataTable]:
    """Parse a delimited text stream into a (FeatureSchema, DataTable) pair.

    Rows with a missing value in any feature, label, or prediction column
    are dropped; the count is recorded on the table. Value vocabularies are
    sorted lexicographically. Numeric columns whose distinct-value count
    exceeds the configured cardinality limit are quantile-binned.
    """
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    elif isinstance(source, str) and "\n" in source:
        source = io.StringIO(source)
    try:
        frame = pd.read_csv(
            source, sep=config.delimiter, dtype=str, skipinitialspace=True, header=0
        )
    except pd.errors.EmptyDataError:
        raise SchemaError("input has no header row") from None

    frame.columns = [str(c).strip() for c in frame.columns]
    for col in (config.label_column, config.prediction_column):
        if col not in frame.columns:
            raise SchemaError(f"column {col!r} not found in header")
    for col in config.drop_columns:
        if col in frame.columns:
            frame = frame.drop(columns=[col])

    feature_cols = [
        c for c in frame.columns if c not in (config.label_column, config.prediction_column)
    ]
    if not feature_cols:
        raise SchemaError("no feature columns remain besides label and prediction")

    required = feature_cols + [config.label_column, config.prediction_column]
    missing_mask = np.zeros(len(frame), dtype=bool)
    for col in required:
        missing_mask |= _is_missing(frame[col]).to_numpy()
    dropped = int(missing_mask.sum())
    frame = frame.loc[~missing_mask]
    if len(frame) == 0:
        raise EmptyDatasetError("zero usable rows after dropping incomplete ones")

    labels = _binarize(frame[config.label_column], config.positive_label, config.label_column)
    predictions = _binarize(
        frame[config.prediction_column], config.positive_label, config.prediction_column
    )

    features: list[tuple[str, tuple[str, ...]]] = []
    code_columns: list[np.ndarray] = []
    for col in feature_cols:
        raw = frame[col].astype(str).str.strip()
        distinct = raw.nunique()
        numeric = pd.to_numeric(raw, errors="coerce")
        if not numeric.isna().any() and distinct > config.max_categorical_cardinality:
            assignments, binned = _quantile_bin(numeric.to_numpy(float), config.numeric_bins)
            vocab = tuple(binned.labels)
            codes = assignments
        else:
            vocab = tuple(sorted(raw.unique()))
            lookup = {v: i for i, v in enumerate(vocab)}
            codes = raw.map(lookup).to_numpy(np.int32)
        features.append((col, vocab))
        code_columns.append(codes)

    schema = FeatureSchema(
        features=tuple(features),
        label_column=config.label_column,
        prediction_column=config.prediction_column,
        positive_label=config.positive_label,
    )
    table = DataTable(
        codes=np.column_stack(code_columns),
        labels=labels,
        predictions=predictions,
        dropped_rows=dropped,
    )
    return schema, table


def _binarize(series: pd.Series, positive_label: str, column: str) -> np.ndarray:
    values = series.astype(str).str.strip()
    distinct = sorted(values.unique())
    if len(distinct) != 2:
        raise LabelError(
            f"column {column!r} must contain exactly 2 distinct values, found {len(distinct)}"
        )
    if positive_label.strip() not in distinct:
        raise LabelError(
            f"positive label {positive_label!r} not present in column {column!r} "
            f"(values: {distinct})"
        )
    return (values == positive_label.strip()).to_numpy()


def one_hot(table: DataTable, schema: FeatureSchema) -> OneHotMatrix:
    """Encode the table against the schema's feature blocks."""
    block_sizes = [len(values) for _, values in schema.features]
    for i, (name, values) in enumerate(schema.features):
        col = table.column(i)
        if col.size and (col.min() < 0 or col.max() >= len(values)):
            raise SchemaError(f"codes for feature {name!r} fall outside its value list")
    return OneHotMatrix(codes=table.codes, block_sizes=block_sizes)
