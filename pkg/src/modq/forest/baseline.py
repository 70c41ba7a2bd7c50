"""Informed baseline: score a comment by its author's prior featured rate."""

from __future__ import annotations

import numpy as np

from modq.corpus.store import CorpusStore
from modq.features.history import user_history_at

BASELINE_THRESHOLD = 0.03


def baseline_scores(store: CorpusStore, comment_ids: list[str]) -> np.ndarray:
    """Author's pre-comment featured ratio, 0.0 for first-time posters."""
    out = np.empty(len(comment_ids), dtype=np.float64)
    for i, cid in enumerate(comment_ids):
        rec = store.comment(cid)
        hist = user_history_at(rec.user_key, rec.created_at, store)
        out[i] = hist.ratio_featured
    return out


def baseline_predict(
    store: CorpusStore,
    comment_ids: list[str],
    threshold: float = BASELINE_THRESHOLD,
) -> np.ndarray:
    return (baseline_scores(store, comment_ids) > threshold).astype(np.int64)
