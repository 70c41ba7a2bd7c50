"""Ranking and classification metrics with explicit edge conventions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


def dcg(relevances: Sequence[int], k: int) -> float:
    """Binary-gain DCG over the first k ranks (1-based positions)."""
    return sum(
        rel / math.log2(i + 2) for i, rel in enumerate(relevances[:k]) if rel
    )


def ndcg_at_k(relevances: Sequence[int], k: int) -> float | None:
    """NDCG@k for binary relevance in ranked order.

    Ideal DCG places every relevant item first, so it runs over
    min(k, number of relevant items) ranks. Returns None when the list has
    no relevant item at all: the metric is undefined there and such lists
    are excluded from averages rather than counted as zero.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n_rel = sum(1 for rel in relevances if rel)
    if n_rel == 0:
        return None
    ideal = sum(1.0 / math.log2(i + 2) for i in range(min(k, n_rel)))
    return dcg(relevances, k) / ideal


@dataclass(frozen=True)
class ClassificationMetrics:
    precision: float
    recall: float
    f1: float
    accuracy: float
    tp: int
    fp: int
    fn: int
    tn: int

    def to_json_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "accuracy": self.accuracy,
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "tn": self.tn,
        }


def classification_at_threshold(
    probabilities: Sequence[float],
    labels: Sequence[int],
    threshold: float = 0.5,
) -> ClassificationMetrics:
    predictions = [1 if p > threshold else 0 for p in probabilities]
    return classification_metrics(labels, predictions)


def classification_metrics(
    y_true: Sequence[int], y_pred: Sequence[int]
) -> ClassificationMetrics:
    """Positive-class precision/recall/F1/accuracy; 0/0 ratios become 0.0."""
    if len(y_true) != len(y_pred):
        raise ValueError("y_true and y_pred lengths differ")
    tp = fp = fn = tn = 0
    for t, p in zip(y_true, y_pred):
        if p and t:
            tp += 1
        elif p and not t:
            fp += 1
        elif not p and t:
            fn += 1
        else:
            tn += 1
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = (
        2 * precision * recall / (precision + recall) if precision + recall else 0.0
    )
    total = tp + fp + fn + tn
    accuracy = (tp + tn) / total if total else 0.0
    return ClassificationMetrics(
        precision=precision,
        recall=recall,
        f1=f1,
        accuracy=accuracy,
        tp=tp,
        fp=fp,
        fn=fn,
        tn=tn,
    )
