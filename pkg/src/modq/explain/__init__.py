"""Prediction decomposition and error analysis."""

from modq.explain.decompose import (
    ContributionBreakdown,
    decompose_matrix,
    decompose_prediction,
    forest_bias,
    top_contributions,
    tree_contribution_table,
)
from modq.explain.error_analysis import (
    OUTCOMES,
    ErrorAnalysis,
    ErrorReport,
    FeatureRow,
    error_analysis,
    render_error_analysis,
)

__all__ = [
    "OUTCOMES",
    "ContributionBreakdown",
    "ErrorAnalysis",
    "ErrorReport",
    "FeatureRow",
    "decompose_matrix",
    "decompose_prediction",
    "error_analysis",
    "forest_bias",
    "render_error_analysis",
    "top_contributions",
    "tree_contribution_table",
]
