"""Scorers that order an article's comments, plus the shared ranking rule."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from modq.corpus.store import CorpusStore
from modq.features.matrix import Featurizer
from modq.forest.baseline import BASELINE_THRESHOLD, baseline_scores
from modq.forest.ensemble import Forest


class Ranker(Protocol):
    name: str
    classify_threshold: float

    def scores(self, comment_ids: Sequence[str]) -> np.ndarray: ...


def rank_comments(
    comment_ids: Sequence[str],
    scores: np.ndarray,
    k: int | None = None,
) -> list[str]:
    """Order by score descending, breaking ties on comment id ascending."""
    if len(comment_ids) != len(scores):
        raise ValueError("comment_ids and scores lengths differ")
    ranked = sorted(zip(comment_ids, scores), key=lambda cs: (-cs[1], cs[0]))
    ids = [cid for cid, _ in ranked]
    return ids if k is None else ids[:k]


@dataclass(frozen=True)
class RankedRecommendation:
    article_id: str
    entries: tuple[tuple[str, float], ...]  # (comment_id, probability), best first
    k: int

    def to_json_dict(self) -> dict:
        return {
            "article_id": self.article_id,
            "entries": [
                {"comment_id": cid, "probability": p} for cid, p in self.entries
            ],
            "k": self.k,
        }


def rank_article(
    store: CorpusStore, ranker: "Ranker", article_id: str, k: int
) -> RankedRecommendation:
    """Score every comment of the article, sort, truncate at k."""
    comment_ids = store.article_comment_ids(article_id)
    scores = ranker.scores(comment_ids)
    score_of = dict(zip(comment_ids, scores))
    top = rank_comments(comment_ids, scores, k=k)
    return RankedRecommendation(
        article_id=article_id,
        entries=tuple((cid, float(score_of[cid])) for cid in top),
        k=k,
    )


class ForestRanker:
    """Ranks by forest probability of being featured."""

    def __init__(self, forest: Forest, featurizer: Featurizer, name: str = "forest"):
        self.forest = forest
        self.featurizer = featurizer
        self.name = name
        self.classify_threshold = 0.5

    def scores(self, comment_ids: Sequence[str]) -> np.ndarray:
        if not comment_ids:
            return np.zeros(0, dtype=np.float64)
        X = self.featurizer.rows(comment_ids)
        return self.forest.predict_proba(X)


class BaselineRanker:
    """Ranks by the author's pre-comment featured ratio."""

    def __init__(self, store: CorpusStore):
        self.store = store
        self.name = "baseline"
        self.classify_threshold = BASELINE_THRESHOLD

    def scores(self, comment_ids: Sequence[str]) -> np.ndarray:
        return baseline_scores(self.store, list(comment_ids))


class RandomRanker:
    """Uniform scores derived from (seed, comment id); order-independent."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.name = "random"
        self.classify_threshold = 0.5

    def scores(self, comment_ids: Sequence[str]) -> np.ndarray:
        out = np.empty(len(comment_ids), dtype=np.float64)
        for i, cid in enumerate(comment_ids):
            digest = hashlib.sha256(f"{self.seed}:{cid}".encode("utf-8")).digest()
            out[i] = int.from_bytes(digest[:8], "big") / 2**64
        return out
