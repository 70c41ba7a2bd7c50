"""Exact decomposition of forest predictions along decision paths.

Every root-to-leaf step changes the node's featured frequency; that change
is credited to the feature the parent split on. Summing credits per feature
and averaging over trees gives, for any input:

    prediction == bias + sum(contributions)

with bias the mean root frequency. The identity holds to float accumulation
error because the per-path deltas telescope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from modq.forest.ensemble import Forest
from modq.forest.tree import LEAF, DecisionTree


@dataclass(frozen=True)
class ContributionBreakdown:
    comment_id: str
    bias: float
    contributions: np.ndarray  # (n_features,), decimal probability points
    predicted: float

    def to_json_dict(self) -> dict:
        return {
            "comment_id": self.comment_id,
            "bias": self.bias,
            "contributions": self.contributions.tolist(),
            "predicted": self.predicted,
        }


def tree_contribution_table(tree: DecisionTree, n_features: int) -> np.ndarray:
    """Per-node accumulated contributions from the root, dense (n_nodes, p).

    Row of a leaf = total per-feature credit along its path, so batch
    decomposition is a gather by leaf id.
    """
    table = np.zeros((tree.n_nodes, n_features), dtype=np.float64)
    for node in range(tree.n_nodes):
        f = tree.feature[node]
        if f == LEAF:
            continue
        parent_freq = tree.value[node, 1]
        for child in (tree.left[node], tree.right[node]):
            table[child] = table[node]
            table[child, f] += tree.value[child, 1] - parent_freq
    return table


def forest_bias(forest: Forest) -> float:
    return float(np.mean([tree.value[0, 1] for tree in forest.trees]))


def decompose_matrix(
    forest: Forest, X: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray]:
    """(bias, contributions (n, p), predicted (n,)) for a batch of rows."""
    forest._check_width(X)
    X = np.ascontiguousarray(X, dtype=np.float64)
    n, p = X.shape
    contributions = np.zeros((n, p), dtype=np.float64)
    predicted = np.zeros(n, dtype=np.float64)
    for tree in forest.trees:
        leaves = tree.leaf_for(X)
        table = tree_contribution_table(tree, p)
        contributions += table[leaves]
        predicted += tree.value[leaves, 1]
    n_trees = len(forest.trees)
    contributions /= n_trees
    predicted /= n_trees
    return forest_bias(forest), contributions, predicted


def decompose_prediction(
    forest: Forest, x: np.ndarray, comment_id: str = ""
) -> ContributionBreakdown:
    x = np.asarray(x, dtype=np.float64)
    bias, contributions, predicted = decompose_matrix(forest, x[None, :])
    return ContributionBreakdown(
        comment_id=comment_id,
        bias=bias,
        contributions=contributions[0],
        predicted=float(predicted[0]),
    )


def top_contributions(
    names: tuple[str, ...], contributions: np.ndarray, limit: int = 10
) -> list[tuple[str, float]]:
    """Largest-|contribution| features first, ties by feature order."""
    order = sorted(range(len(names)), key=lambda i: (-abs(contributions[i]), i))
    return [(names[i], float(contributions[i])) for i in order[:limit]]
