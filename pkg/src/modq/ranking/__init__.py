"""Ranking, evaluation metrics, and inter-rater agreement."""

from modq.ranking.agreement import krippendorff_alpha
from modq.ranking.evaluate import (
    DEFAULT_KS,
    EvaluationReport,
    evaluate_articles,
    render_reports,
)
from modq.ranking.metrics import (
    ClassificationMetrics,
    classification_at_threshold,
    classification_metrics,
    dcg,
    ndcg_at_k,
)
from modq.ranking.ranker import (
    BaselineRanker,
    ForestRanker,
    RandomRanker,
    RankedRecommendation,
    Ranker,
    rank_article,
    rank_comments,
)

__all__ = [
    "DEFAULT_KS",
    "BaselineRanker",
    "ClassificationMetrics",
    "EvaluationReport",
    "ForestRanker",
    "RandomRanker",
    "RankedRecommendation",
    "Ranker",
    "classification_at_threshold",
    "classification_metrics",
    "dcg",
    "evaluate_articles",
    "krippendorff_alpha",
    "ndcg_at_k",
    "rank_article",
    "rank_comments",
    "render_reports",
]
