"""Per-article ranking evaluation and report rendering."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from modq.corpus.records import Status
from modq.corpus.store import CorpusStore
from modq.ranking.metrics import (
    ClassificationMetrics,
    classification_metrics,
    ndcg_at_k,
)
from modq.ranking.ranker import Ranker, rank_comments

DEFAULT_KS = (3, 5, 10)


@dataclass(frozen=True)
class EvaluationReport:
    name: str
    ks: tuple[int, ...]
    mean_ndcg: dict[int, float | None]
    n_articles: int
    n_ranked_articles: int  # articles with at least one featured comment
    classification: ClassificationMetrics
    classify_threshold: float
    n_comments: int

    @property
    def skipped_articles(self) -> int:
        """Articles with no featured comment, excluded from NDCG means."""
        return self.n_articles - self.n_ranked_articles

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "ks": list(self.ks),
            "mean_ndcg": {str(k): v for k, v in self.mean_ndcg.items()},
            "n_articles": self.n_articles,
            "n_ranked_articles": self.n_ranked_articles,
            "skipped_articles": self.skipped_articles,
            "classification": self.classification.to_json_dict(),
            "classify_threshold": self.classify_threshold,
            "n_comments": self.n_comments,
        }


def evaluate_articles(
    store: CorpusStore,
    article_ids: Sequence[str],
    ranker: Ranker,
    ks: tuple[int, ...] = DEFAULT_KS,
) -> EvaluationReport:
    """Rank every article's comments and average NDCG@k across articles.

    Articles with no featured comment have no defined ideal ranking and are
    skipped in the NDCG averages. Classification metrics cover every
    comment in the given articles, scored against the ranker's threshold.
    """
    ndcg_sums = {k: 0.0 for k in ks}
    ranked_articles = 0
    y_true: list[int] = []
    y_pred: list[int] = []
    n_comments = 0

    for article_id in article_ids:
        comment_ids = store.article_comment_ids(article_id)
        if not comment_ids:
            continue
        scores = ranker.scores(comment_ids)
        featured = {
            cid
            for cid in comment_ids
            if store.comment(cid).status is Status.FEATURED
        }
        n_comments += len(comment_ids)
        y_true.extend(1 if cid in featured else 0 for cid in comment_ids)
        y_pred.extend(
            1 if s > ranker.classify_threshold else 0 for s in scores
        )
        if featured:
            ranking = rank_comments(comment_ids, scores)
            relevances = [1 if cid in featured else 0 for cid in ranking]
            ranked_articles += 1
            for k in ks:
                value = ndcg_at_k(relevances, k)
                assert value is not None
                ndcg_sums[k] += value

    mean_ndcg: dict[int, float | None] = {
        k: (ndcg_sums[k] / ranked_articles if ranked_articles else None) for k in ks
    }
    return EvaluationReport(
        name=ranker.name,
        ks=tuple(ks),
        mean_ndcg=mean_ndcg,
        n_articles=len(article_ids),
        n_ranked_articles=ranked_articles,
        classification=classification_metrics(y_true, y_pred),
        classify_threshold=ranker.classify_threshold,
        n_comments=n_comments,
    )


def render_reports(reports: Sequence[EvaluationReport]) -> str:
    """Fixed-width comparison table over rankers."""
    if not reports:
        return "(no reports)\n"
    ks = reports[0].ks
    headers = ["model", "prec", "rec", "f1", "acc"] + [f"ndcg@{k}" for k in ks]
    rows = []
    for r in reports:
        cells = [
            r.name,
            f"{r.classification.precision:.4f}",
            f"{r.classification.recall:.4f}",
            f"{r.classification.f1:.4f}",
            f"{r.classification.accuracy:.4f}",
        ]
        for k in ks:
            v = r.mean_ndcg.get(k)
            cells.append("n/a" if v is None else f"{v:.4f}")
        rows.append(cells)
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in rows))
        for i in range(len(headers))
    ]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)))
    footer = (
        f"articles={reports[0].n_articles} "
        f"ranked={reports[0].n_ranked_articles} "
        f"skipped={reports[0].skipped_articles} "
        f"comments={reports[0].n_comments}"
    )
    return "\n".join(lines) + "\n" + footer + "\n"
