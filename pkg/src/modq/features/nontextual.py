"""The 13 non-textual comment features: uptime, engagement, length, user history."""

from __future__ import annotations

import numpy as np

from modq.corpus.records import CommentRecord, epoch_minutes
from modq.corpus.store import CorpusStore
from modq.features.history import user_stats_index

NONTEXTUAL_FEATURES = (
    "delta_minutes",
    "reply_uptime",
    "reply_count",
    "respect_uptime",
    "respect_count",
    "wordcount",
    "wordspersentence",
    "total_posts_user",
    "featured_posts_user",
    "ratio_featured",
    "ratio_rejected",
    "ratio_reply",
    "ratio_respect",
)

_SENTENCE_DELIMITERS = (".", "!", "?")


def sentence_count(text: str) -> int:
    """Segments delimited by '.', '!' or '?'; a text without delimiters or
    with trailing content counts that remainder as one sentence. Minimum 1."""
    count = 0
    segment_has_content = False
    for ch in text:
        if ch in _SENTENCE_DELIMITERS:
            if segment_has_content:
                count += 1
            segment_has_content = False
        elif not ch.isspace():
            segment_has_content = True
    if segment_has_content:
        count += 1
    return max(1, count)


def delta_minutes(comment: CommentRecord, store: CorpusStore) -> int:
    """Minutes between article publication and the comment, clamped to >= 1
    so the per-minute ratios stay finite."""
    published = store.articles[comment.article_id].published_at
    return max(1, epoch_minutes(comment.created_at) - epoch_minutes(published))


def nontextual_features(comment: CommentRecord, store: CorpusStore) -> np.ndarray:
    """Feature values in NONTEXTUAL_FEATURES order.

    User aggregates come from posts strictly before the comment, and nothing
    here reads the comment's own status, so the label cannot leak in.
    """
    minutes = delta_minutes(comment, store)
    replies = store.reply_count(comment.comment_id)
    words = len(comment.text.split())
    sentences = sentence_count(comment.text)
    hist = user_stats_index(store).history_at(comment.user_key, comment.created_at)
    return np.array(
        [
            minutes,
            replies / minutes,
            replies,
            comment.respect_count / minutes,
            comment.respect_count,
            words,
            words / sentences,
            hist.total_posts_user,
            hist.featured_posts_user,
            hist.ratio_featured,
            hist.ratio_rejected,
            hist.ratio_reply,
            hist.ratio_respect,
        ],
        dtype=np.float64,
    )
