"""Confusion-matrix tallies and the derived performance/fairness metrics.

A metric is a function of the four base counts. Zero-denominator results are
a first-class "undefined" (None): they are never coerced to 0 and always sort
after every defined value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import RegistryError
from .ingest import DataTable


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            self.tp + other.tp, self.tn + other.tn, self.fp + other.fp, self.fn + other.fn
        )


MetricFn = Callable[[ConfusionCounts], float | None]


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


def _accuracy(c: ConfusionCounts) -> float | None:
    return _ratio(c.tp + c.tn, c.total)


def _recall(c: ConfusionCounts) -> float | None:
    return _ratio(c.tp, c.tp + c.fn)


def _specificity(c: ConfusionCounts) -> float | None:
    return _ratio(c.tn, c.tn + c.fp)


def _precision(c: ConfusionCounts) -> float | None:
    return _ratio(c.tp, c.tp + c.fp)


def _npv(c: ConfusionCounts) -> float | None:
    return _ratio(c.tn, c.tn + c.fn)


def _fnr(c: ConfusionCounts) -> float | None:
    return _ratio(c.fn, c.fn + c.tp)


def _fpr(c: ConfusionCounts) -> float | None:
    return _ratio(c.fp, c.fp + c.tn)


def _fdr(c: ConfusionCounts) -> float | None:
    return _ratio(c.fp, c.fp + c.tp)


def _fomr(c: ConfusionCounts) -> float | None:
    return _ratio(c.fn, c.fn + c.tn)


def _f1(c: ConfusionCounts) -> float | None:
    p, r = _precision(c), _recall(c)
    if p is None or r is None or p + r == 0:
        return None
    return 2 * p * r / (p + r)


DEFAULT_METRICS: dict[str, MetricFn] = {
    "accuracy": _accuracy,
    "recall": _recall,
    "specificity": _specificity,
    "precision": _precision,
    "npv": _npv,
    "fnr": _fnr,
    "fpr": _fpr,
    "fdr": _fdr,
    "fomr": _fomr,
    "f1": _f1,
}


class MetricRegistry:
    """Maps stable lowercase identifiers to metric formulas over base counts.

    User formulas may raise ZeroDivisionError; the registry converts that to
    the undefined marker so a bad denominator can never crash a view.
    """

    def __init__(self, metrics: Mapping[str, MetricFn] | None = None):
        self._metrics: dict[str, MetricFn] = dict(DEFAULT_METRICS if metrics is None else metrics)

    def names(self) -> list[str]:
        return list(self._metrics)

    def __contains__(self, identifier: str) -> bool:
        return identifier in self._metrics

    def register(self, identifier: str, formula: MetricFn) -> None:
        if identifier in self._metrics:
            raise RegistryError(f"metric {identifier!r} is already registered")
        self._metrics[identifier] = formula

    def value(self, counts: ConfusionCounts, identifier: str) -> float | None:
        if identifier not in self._metrics:
            raise RegistryError(
                f"unknown metric {identifier!r}; registered: {', '.join(self._metrics)}"
            )
        try:
            return self._metrics[identifier](counts)
        except ZeroDivisionError:
            return None

    def all_values(self, counts: ConfusionCounts) -> dict[str, float | None]:
        """MetricSet: every registered metric evaluated on one counts object."""
        return {name: self.value(counts, name) for name in self._metrics}


def confusion(member_index: np.ndarray, table: DataTable) -> ConfusionCounts:
    """Tally TP/TN/FP/FN over the rows named by `member_index`."""
    idx = np.asarray(member_index, dtype=np.int64)
    if idx.size == 0:
        return ConfusionCounts()
    y = table.labels[idx]
    p = table.predictions[idx]
    tp = int(np.count_nonzero(y & p))
    tn = int(np.count_nonzero(~y & ~p))
    fp = int(np.count_nonzero(~y & p))
    fn = int(np.count_nonzero(y & ~p))
    return ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn)


def label_balance(member_index: np.ndarray, table: DataTable) -> float | None:
    """Fraction of ground-truth positives in the group; None for an empty group."""
    idx = np.asarray(member_index, dtype=np.int64)
    if idx.size == 0:
        return None
    return float(np.count_nonzero(table.labels[idx])) / idx.size


def dataset_average(
    table: DataTable, registry: MetricRegistry, identifier: str
) -> float | None:
    """Micro average: the metric evaluated on whole-table confusion counts."""
    return registry.value(confusion(np.arange(table.row_count), table), identifier)


def sort_key(value: float | None) -> tuple[bool, float]:
    """Ascending order with undefined values after every defined one."""
    return (value is None, 0.0 if value is None else value)


def order_by_metric(
    items: Iterable, value_of: Callable[[object], float | None]
) -> list:
    return sorted(items, key=lambda item: sort_key(value_of(item)))
