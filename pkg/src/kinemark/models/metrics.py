"""Binary classification metrics with class 1 (Sick) as the positive class."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from ..errors import LengthMismatch


def _ratio(num, den):
    return num / den if den else 0.0


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int
    tn: int

    @classmethod
    def from_counts(cls, tp, fp, fn, tn) -> "Metrics":
        total = tp + fp + fn + tn
        precision = _ratio(tp, tp + fp)
        recall = _ratio(tp, tp + fn)
        f1 = _ratio(2 * precision * recall, precision + recall)
        return cls(_ratio(tp + tn, total), precision, recall, f1,
                   int(tp), int(fp), int(fn), int(tn))

    def as_dict(self) -> dict:
        return asdict(self)


METRIC_NAMES = ("accuracy", "precision", "recall", "f1")


def compute_metrics(y_true, y_pred) -> Metrics:
    y_true = np.asarray(y_true).astype(np.int64).ravel()
    y_pred = np.asarray(y_pred).astype(np.int64).ravel()
    if len(y_true) != len(y_pred):
        raise LengthMismatch(f"{len(y_true)} labels vs {len(y_pred)} predictions")
    if len(y_true) == 0:
        raise LengthMismatch("metrics need at least one prediction")
    tp = int(np.sum((y_true == 1) & (y_pred == 1)))
    fp = int(np.sum((y_true == 0) & (y_pred == 1)))
    fn = int(np.sum((y_true == 1) & (y_pred == 0)))
    tn = int(np.sum((y_true == 0) & (y_pred == 0)))
    return Metrics.from_counts(tp, fp, fn, tn)
