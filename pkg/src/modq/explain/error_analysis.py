"""Aggregate analysis of which features drive correct and wrong predictions.

Comments of an article set are scored, decomposed, and partitioned into
TP/FP/TN/FN. "Predicted positive" is ambiguous for a ranker-classifier
hybrid, so two partitions are reported side by side: rank-based (membership
in the article's top-k) and threshold-based (probability above the cutoff).
Each partition is disjoint and covers every analyzed comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from modq.corpus.records import Status
from modq.corpus.store import CorpusStore
from modq.explain.decompose import decompose_matrix
from modq.features.matrix import Featurizer
from modq.forest.ensemble import Forest
from modq.ranking.ranker import rank_comments

OUTCOMES = ("tp", "fp", "tn", "fn")


@dataclass(frozen=True)
class FeatureRow:
    name: str
    mean_value: dict[str, float | None]  # outcome -> mean raw value
    mean_contribution: dict[str, float | None]

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "mean_value": self.mean_value,
            "mean_contribution": self.mean_contribution,
        }


@dataclass(frozen=True)
class ErrorReport:
    variant: str  # "rank" or "threshold"
    counts: dict[str, int]
    features: list[FeatureRow]

    def to_json_dict(self) -> dict:
        return {
            "variant": self.variant,
            "counts": self.counts,
            "features": [f.to_json_dict() for f in self.features],
        }


@dataclass(frozen=True)
class ErrorAnalysis:
    k: int
    threshold: float
    n_articles: int
    n_comments: int
    rank_based: ErrorReport
    threshold_based: ErrorReport

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "threshold": self.threshold,
            "n_articles": self.n_articles,
            "n_comments": self.n_comments,
            "rank_based": self.rank_based.to_json_dict(),
            "threshold_based": self.threshold_based.to_json_dict(),
        }


def _partition_report(
    variant: str,
    predicted_positive: np.ndarray,
    actual: np.ndarray,
    X: np.ndarray,
    contributions: np.ndarray,
    names: tuple[str, ...],
    top_features: int,
) -> ErrorReport:
    masks = {
        "tp": predicted_positive & actual,
        "fp": predicted_positive & ~actual,
        "tn": ~predicted_positive & ~actual,
        "fn": ~predicted_positive & actual,
    }
    mean_abs = np.abs(contributions).mean(axis=0)
    top = sorted(range(len(names)), key=lambda i: (-mean_abs[i], i))[:top_features]
    rows = []
    for i in top:
        mean_value: dict[str, float | None] = {}
        mean_contribution: dict[str, float | None] = {}
        for outcome in OUTCOMES:
            mask = masks[outcome]
            if mask.any():
                mean_value[outcome] = float(X[mask, i].mean())
                mean_contribution[outcome] = float(contributions[mask, i].mean())
            else:
                mean_value[outcome] = None
                mean_contribution[outcome] = None
        rows.append(
            FeatureRow(
                name=names[i],
                mean_value=mean_value,
                mean_contribution=mean_contribution,
            )
        )
    return ErrorReport(
        variant=variant,
        counts={outcome: int(masks[outcome].sum()) for outcome in OUTCOMES},
        features=rows,
    )


def error_analysis(
    forest: Forest,
    featurizer: Featurizer,
    store: CorpusStore,
    article_ids: Sequence[str],
    k: int = 5,
    threshold: float = 0.5,
    top_features: int = 10,
) -> ErrorAnalysis:
    comment_ids: list[str] = []
    in_top_k: list[bool] = []
    for article_id in article_ids:
        ids = store.article_comment_ids(article_id)
        if not ids:
            continue
        scores = forest.predict_proba(featurizer.rows(ids))
        top = set(rank_comments(ids, scores, k=k))
        comment_ids.extend(ids)
        in_top_k.extend(cid in top for cid in ids)
    if not comment_ids:
        raise ValueError("no comments in the given articles")

    X = featurizer.rows(comment_ids)
    _, contributions, predicted = decompose_matrix(forest, X)
    actual = np.array(
        [store.comment(cid).status is Status.FEATURED for cid in comment_ids]
    )
    rank_pp = np.array(in_top_k)
    thresh_pp = predicted > threshold
    names = featurizer.schema.names
    return ErrorAnalysis(
        k=k,
        threshold=threshold,
        n_articles=len(article_ids),
        n_comments=len(comment_ids),
        rank_based=_partition_report(
            "rank", rank_pp, actual, X, contributions, names, top_features
        ),
        threshold_based=_partition_report(
            "threshold", thresh_pp, actual, X, contributions, names, top_features
        ),
    )


def render_error_analysis(analysis: ErrorAnalysis) -> str:
    """Text tables: one per variant, feature rows by outcome columns."""
    lines = [
        f"error analysis  k={analysis.k}  threshold={analysis.threshold}  "
        f"articles={analysis.n_articles}  comments={analysis.n_comments}"
    ]
    for report in (analysis.rank_based, analysis.threshold_based):
        lines.append("")
        counts = "  ".join(f"{o.upper()}={report.counts[o]}" for o in OUTCOMES)
        lines.append(f"[{report.variant}-based]  {counts}")
        header = ["feature"] + [f"{o.upper()} val" for o in OUTCOMES] + [
            f"{o.upper()} c" for o in OUTCOMES
        ]
        rows = []
        for feat in report.features:
            cells = [feat.name]
            for o in OUTCOMES:
                v = feat.mean_value[o]
                cells.append("-" if v is None else f"{v:.3f}")
            for o in OUTCOMES:
                c = feat.mean_contribution[o]
                cells.append("-" if c is None else f"{c:+.4f}")
            rows.append(cells)
        widths = [
            max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
            for i in range(len(header))
        ]
        lines.append("  ".join(h.ljust(widths[i]) for i, h in enumerate(header)))
        for r in rows:
            lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(r)))
    return "\n".join(lines) + "\n"
