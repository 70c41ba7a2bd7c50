"""Small hyperparameter grid utility: fit candidates, keep the best by F1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from modq.features.matrix import DesignMatrix
from modq.forest.ensemble import Forest, Hyperparams, train_forest
from modq.ranking.metrics import classification_at_threshold


@dataclass(frozen=True)
class GridResult:
    hyperparams: Hyperparams
    f1: float
    precision: float
    recall: float


def grid_search(
    train: DesignMatrix,
    validation: DesignMatrix,
    grid: Sequence[Hyperparams],
    threshold: float = 0.5,
    n_jobs: int = 1,
) -> tuple[Forest, list[GridResult]]:
    """Train one forest per candidate; best validation F1 wins.

    Ties keep the earlier candidate, so the grid order is the preference
    order. Returns the winning forest plus all scored candidates.
    """
    if not grid:
        raise ValueError("empty hyperparameter grid")
    results: list[GridResult] = []
    best: tuple[float, int, Forest] | None = None
    for i, hp in enumerate(grid):
        forest = train_forest(train, hp, n_jobs=n_jobs)
        metrics = classification_at_threshold(
            forest.predict_proba(validation.X), validation.y.tolist(), threshold
        )
        results.append(
            GridResult(
                hyperparams=hp,
                f1=metrics.f1,
                precision=metrics.precision,
                recall=metrics.recall,
            )
        )
        if best is None or metrics.f1 > best[0]:
            best = (metrics.f1, i, forest)
    assert best is not None
    return best[2], results
