"""Blind survey construction and the post-survey agreement report.

A survey mixes the model's recommended comments (probability > 0.5, at most
10) with an equal number of randomly drawn non-recommended comments and
shuffles them, so a rater cannot tell which is which. The recommended flag
stays server-side; the HTTP layer serializes only neutral display fields.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from modq.corpus.records import CommentRecord
from modq.corpus.store import CorpusStore
from modq.features.history import user_history_at
from modq.ranking.agreement import krippendorff_alpha
from modq.ranking.metrics import ndcg_at_k
from modq.ranking.ranker import ForestRanker, rank_comments
from modq.service.picks import PickLog

RECOMMEND_THRESHOLD = 0.5
MAX_RECOMMENDED = 10
_SURVEY_STREAM = 4


def display_features(store: CorpusStore, comment: CommentRecord) -> dict:
    """The four author/comment stats raters see alongside the text."""
    hist = user_history_at(comment.user_key, comment.created_at, store)
    return {
        "total_posts_user": hist.total_posts_user,
        "featured_posts_user": hist.featured_posts_user,
        "ratio_rejected": hist.ratio_rejected,
        "respect_count": comment.respect_count,
    }


@dataclass(frozen=True)
class SurveySet:
    article_id: str
    seed: int
    item_ids: tuple[str, ...]  # shuffled, what the client sees
    recommended_ids: frozenset[str]  # server-side only, never serialized


def _survey_rng(seed: int, article_id: str) -> np.random.Generator:
    digest = hashlib.sha256(article_id.encode("utf-8")).digest()
    w0 = int.from_bytes(digest[:8], "big")
    w1 = int.from_bytes(digest[8:16], "big")
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(_SURVEY_STREAM, w0, w1))
    )


def recommended_ids(
    comment_ids: Sequence[str], probabilities: np.ndarray
) -> list[str]:
    """Comments above the recommendation cutoff, best first, capped at 10."""
    above = [
        cid for cid, p in zip(comment_ids, probabilities) if p > RECOMMEND_THRESHOLD
    ]
    probs = {cid: p for cid, p in zip(comment_ids, probabilities)}
    ranked = rank_comments(above, np.array([probs[c] for c in above]))
    return ranked[:MAX_RECOMMENDED]


def build_survey(
    store: CorpusStore, ranker: ForestRanker, article_id: str, seed: int
) -> SurveySet:
    comment_ids = store.article_comment_ids(article_id)
    probabilities = ranker.scores(comment_ids)
    recommended = recommended_ids(comment_ids, probabilities)
    rest = sorted(set(comment_ids) - set(recommended))
    rng = _survey_rng(seed, article_id)
    n_other = min(len(recommended), len(rest))
    others = (
        [rest[i] for i in rng.choice(len(rest), size=n_other, replace=False)]
        if n_other
        else []
    )
    items = recommended + others
    order = rng.permutation(len(items))
    return SurveySet(
        article_id=article_id,
        seed=seed,
        item_ids=tuple(items[i] for i in order),
        recommended_ids=frozenset(recommended),
    )


@dataclass(frozen=True)
class ArticleSurveyReport:
    article_id: str
    k: int  # number of recommended comments, the NDCG cutoff
    ndcg: float | None  # None when undefined (no approvals or no recs)
    n_picks: int
    approved_ids: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "article_id": self.article_id,
            "k": self.k,
            "ndcg": self.ndcg,
            "n_picks": self.n_picks,
            "approved_ids": list(self.approved_ids),
        }


@dataclass(frozen=True)
class SurveyReport:
    articles: tuple[ArticleSurveyReport, ...]
    mean_ndcg: float | None
    alpha: float | None
    alpha_available: bool
    n_events: int
    raters: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "articles": [a.to_json_dict() for a in self.articles],
            "mean_ndcg": self.mean_ndcg,
            "alpha": self.alpha,
            "alpha_available": self.alpha_available,
            "n_events": self.n_events,
            "raters": list(self.raters),
        }


def survey_report(
    store: CorpusStore,
    ranker: ForestRanker,
    pick_log: PickLog,
    article_ids: Sequence[str] | None = None,
) -> SurveyReport:
    """Agreement and ranking quality of moderator picks vs the model.

    Relevance for NDCG is "any rater approved the comment"; the cutoff is
    the article's recommended-set size. Alpha is computed over all
    (article, comment) units, pairing the raters who judged each unit.
    """
    events = [
        e
        for e in pick_log.events_for_articles(article_ids)
        if e.article_id in store.articles
        and store.has_comment(e.comment_id)
        and store.comment(e.comment_id).article_id == e.article_id
    ]
    by_article: dict[str, list] = {}
    for e in events:
        by_article.setdefault(e.article_id, []).append(e)

    units: dict[tuple[str, str], dict[str, bool]] = {}
    for e in events:
        units.setdefault((e.article_id, e.comment_id), {})[e.rater_id] = e.decision
    alpha = krippendorff_alpha(
        [[1 if v else 0 for v in ratings.values()] for ratings in units.values()]
    )

    reports: list[ArticleSurveyReport] = []
    for article_id in sorted(by_article):
        article_events = by_article[article_id]
        approved = sorted(
            {e.comment_id for e in article_events if e.decision}
        )
        comment_ids = store.article_comment_ids(article_id)
        probabilities = ranker.scores(comment_ids)
        recommended = recommended_ids(comment_ids, probabilities)
        k = len(recommended)
        ndcg: float | None = None
        if k and approved:
            ranking = rank_comments(comment_ids, probabilities)
            approved_set = set(approved)
            relevances = [1 if cid in approved_set else 0 for cid in ranking]
            ndcg = ndcg_at_k(relevances, k)
        reports.append(
            ArticleSurveyReport(
                article_id=article_id,
                k=k,
                ndcg=ndcg,
                n_picks=len(article_events),
                approved_ids=tuple(approved),
            )
        )

    defined = [r.ndcg for r in reports if r.ndcg is not None]
    return SurveyReport(
        articles=tuple(reports),
        mean_ndcg=(sum(defined) / len(defined)) if defined else None,
        alpha=alpha,
        alpha_available=alpha is not None,
        n_events=len(events),
        raters=tuple(sorted({e.rater_id for e in events})),
    )
