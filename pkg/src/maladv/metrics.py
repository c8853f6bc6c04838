"""Detection metrics from the confusion matrix (label 1 = malicious)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import model_ops as ops
from .errors import InputError


@dataclass
class MetricsReport:
    tp: int
    tn: int
    fp: int
    fn: int
    fnr: float   # percentages
    fpr: float
    acc: float
    bacc: float
    f1: float
    flags: list = field(default_factory=list)  # ratios with a zero denominator


def _ratio(num, den, name, flags):
    if den == 0:
        flags.append(name)
        return 0.0
    return num / den


def report_from_counts(tp: int, fn: int, tn: int, fp: int) -> MetricsReport:
    total = tp + tn + fp + fn
    if total == 0:
        raise InputError("empty confusion matrix")
    flags = []
    fnr = _ratio(fn, tp + fn, "fnr", flags)
    fpr = _ratio(fp, tn + fp, "fpr", flags)
    acc = (tp + tn) / total
    if (tp + fn) == 0 or (tn + fp) == 0:
        flags.append("bacc")
        bacc = acc
    else:
        bacc = ((tp / (tp + fn)) + (tn / (tn + fp))) / 2.0
    precision = _ratio(tp, tp + fp, "precision", flags)
    recall = _ratio(tp, tp + fn, "recall", flags)
    if precision + recall == 0:
        flags.append("f1")
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return MetricsReport(tp, tn, fp, fn, 100.0 * fnr, 100.0 * fpr, 100.0 * acc,
                         100.0 * bacc, 100.0 * f1, flags)


def evaluate(model, X: np.ndarray, y) -> MetricsReport:
    """All five metrics of a classifier on one split."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if len(X) == 0:
        raise InputError("cannot evaluate on an empty split")
    preds = np.atleast_1d(ops.predict(model, X))
    tp = int(np.sum((y == 1) & (preds == 1)))
    fn = int(np.sum((y == 1) & (preds == 0)))
    tn = int(np.sum((y == 0) & (preds == 0)))
    fp = int(np.sum((y == 0) & (preds == 1)))
    return report_from_counts(tp, fn, tn, fp)


def accuracy(model, X: np.ndarray, y) -> float:
    preds = np.atleast_1d(ops.predict(model, X))
    return float(np.mean(preds == np.asarray(y, dtype=int)))
