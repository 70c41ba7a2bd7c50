"""Per-user aggregates computed strictly before a reference instant.

Only posts with created_at strictly earlier than the query time enter the
aggregates, which keeps the featurized comment itself (and anything
simultaneous or later) out of its own user features.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from datetime import datetime

import numpy as np

from modq.corpus.records import Status, epoch_minutes
from modq.corpus.store import CorpusStore


@dataclass(frozen=True)
class UserHistory:
    total_posts_user: int
    featured_posts_user: int
    ratio_featured: float
    ratio_rejected: float
    ratio_reply: float
    ratio_respect: float
    as_of: datetime


class UserStatsIndex:
    """Prefix-sum index over each user's chronologically sorted posts."""

    def __init__(self, store: CorpusStore):
        per_user: dict[str, list] = {}
        for rec in store.comments:  # already (created_at, comment_id) sorted
            per_user.setdefault(rec.user_key, []).append(rec)
        self._times: dict[str, list[int]] = {}
        self._cum: dict[str, np.ndarray] = {}
        for user, recs in per_user.items():
            self._times[user] = [epoch_minutes(r.created_at) for r in recs]
            rows = np.array(
                [
                    (
                        1,
                        1 if r.status is Status.FEATURED else 0,
                        1 if r.status is Status.REJECTED else 0,
                        store.reply_count(r.comment_id),
                        r.respect_count,
                    )
                    for r in recs
                ],
                dtype=np.float64,
            )
            self._cum[user] = rows.cumsum(axis=0)

    def history_at(self, user_key: str, t: datetime) -> UserHistory:
        times = self._times.get(user_key)
        n = bisect_left(times, epoch_minutes(t)) if times else 0
        if n == 0:
            return UserHistory(0, 0, 0.0, 0.0, 0.0, 0.0, t)
        total, featured, rejected, replies, respect = self._cum[user_key][n - 1]
        return UserHistory(
            total_posts_user=int(total),
            featured_posts_user=int(featured),
            ratio_featured=featured / total,
            ratio_rejected=rejected / total,
            ratio_reply=replies / total,
            ratio_respect=respect / total,
            as_of=t,
        )


_INDEX_ATTR = "_modq_user_stats_index"


def user_stats_index(store: CorpusStore) -> UserStatsIndex:
    """Memoized index; the store is immutable so caching on it is safe."""
    index = getattr(store, _INDEX_ATTR, None)
    if index is None:
        index = UserStatsIndex(store)
        setattr(store, _INDEX_ATTR, index)
    return index


def user_history_at(user_key: str, t: datetime, store: CorpusStore) -> UserHistory:
    return user_stats_index(store).history_at(user_key, t)
