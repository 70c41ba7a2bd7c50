"""Binary classification CART trees grown with Gini impurity.

Candidate thresholds are midpoints between consecutive distinct sorted
values of the rows reaching a node, which makes split decisions depend only
on value order, not scale. Ties are broken deterministically on (impurity,
feature index, threshold) so a fixed RNG stream fully determines the tree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LEAF = -1


@dataclass
class DecisionTree:
    """Flat-array tree: feature[i] == -1 marks node i as a leaf."""

    feature: np.ndarray  # int32, split feature or LEAF
    threshold: np.ndarray  # float64, 0.0 at leaves
    left: np.ndarray  # int32 child ids, LEAF at leaves
    right: np.ndarray  # int32
    value: np.ndarray  # (n_nodes, 2) class frequencies, rows sum to 1
    n_samples: np.ndarray  # int64 training rows that reached the node

    @property
    def n_nodes(self) -> int:
        return len(self.feature)

    def max_depth(self) -> int:
        depths = np.zeros(self.n_nodes, dtype=np.int32)
        for node in range(self.n_nodes):
            if self.feature[node] != LEAF:
                child_depth = depths[node] + 1
                depths[self.left[node]] = child_depth
                depths[self.right[node]] = child_depth
        return int(depths.max()) if self.n_nodes else 0

    def leaf_for(self, X: np.ndarray) -> np.ndarray:
        """Leaf node id per row, by iterative vectorized routing."""
        pos = np.zeros(len(X), dtype=np.int64)
        while True:
            feat = self.feature[pos]
            active = feat != LEAF
            if not active.any():
                return pos
            rows = np.flatnonzero(active)
            f = feat[rows]
            go_left = X[rows, f] <= self.threshold[pos[rows]]
            pos[rows] = np.where(
                go_left, self.left[pos[rows]], self.right[pos[rows]]
            )

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return self.value[self.leaf_for(X), 1]

    def decision_path(self, x: np.ndarray) -> list[int]:
        """Node ids from root to the leaf that x reaches."""
        path = [0]
        node = 0
        while self.feature[node] != LEAF:
            f = self.feature[node]
            node = int(
                self.left[node] if x[f] <= self.threshold[node] else self.right[node]
            )
            path.append(node)
        return path


def resolve_max_features(max_features: str | int, n_features: int) -> int:
    if max_features == "sqrt":
        return max(1, int(np.sqrt(n_features)))
    if max_features == "all":
        return n_features
    if isinstance(max_features, int) and max_features >= 1:
        return min(max_features, n_features)
    raise ValueError(f"bad max_features {max_features!r}")


def grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    *,
    max_depth: int | None,
    min_samples_split: int,
    max_features: str | int,
    bootstrap: bool,
    rng: np.random.Generator,
) -> DecisionTree:
    """Grow one tree; all randomness comes from the supplied generator.

    The generator is consumed in a fixed order (bootstrap draw first, then
    one feature subset per expanded node in depth-first left-to-right
    order), so a given stream yields the same tree regardless of scheduling.
    """
    n, p = X.shape
    k = resolve_max_features(max_features, p)
    idx0 = rng.integers(0, n, size=n) if bootstrap else np.arange(n)

    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    value: list[tuple[float, float]] = []
    n_samples: list[int] = []

    def new_node(idx: np.ndarray) -> int:
        node = len(feature)
        m = len(idx)
        pos = int(y[idx].sum())
        feature.append(LEAF)
        threshold.append(0.0)
        left.append(LEAF)
        right.append(LEAF)
        value.append(((m - pos) / m, pos / m))
        n_samples.append(m)
        return node

    root = new_node(idx0)
    stack: list[tuple[int, np.ndarray, int]] = [(root, idx0, 0)]
    while stack:
        node, idx, depth = stack.pop()
        m = len(idx)
        pos = int(round(value[node][1] * m))
        if (
            (max_depth is not None and depth >= max_depth)
            or m < min_samples_split
            or pos == 0
            or pos == m
        ):
            continue
        feats = np.sort(rng.choice(p, size=k, replace=False))
        split = _best_split(X, y, idx, feats)
        if split is None:
            continue
        feat, thr = split
        go_left = X[idx, feat] <= thr
        left_idx = idx[go_left]
        right_idx = idx[~go_left]
        feature[node] = int(feat)
        threshold[node] = float(thr)
        left_id = new_node(left_idx)
        right_id = new_node(right_idx)
        left[node] = left_id
        right[node] = right_id
        stack.append((right_id, right_idx, depth + 1))
        stack.append((left_id, left_idx, depth + 1))

    return DecisionTree(
        feature=np.array(feature, dtype=np.int32),
        threshold=np.array(threshold, dtype=np.float64),
        left=np.array(left, dtype=np.int32),
        right=np.array(right, dtype=np.int32),
        value=np.array(value, dtype=np.float64),
        n_samples=np.array(n_samples, dtype=np.int64),
    )


def _best_split(
    X: np.ndarray, y: np.ndarray, idx: np.ndarray, feats: np.ndarray
) -> tuple[int, float] | None:
    """Exhaustive midpoint search over the candidate features.

    Maximizes (l0^2+l1^2)/nl + (r0^2+r1^2)/nr, which orders splits exactly
    like minimizing weighted Gini impurity. Returns None when every
    candidate feature is constant across the node's rows.
    """
    sub = X[np.ix_(idx, feats)]
    m = len(idx)
    order = np.argsort(sub, axis=0, kind="stable")
    v = np.take_along_axis(sub, order, axis=0)
    labels = y[idx].astype(np.int64)[order]
    cum = np.cumsum(labels, axis=0)
    total_pos = cum[-1, 0]

    nl = np.arange(1, m, dtype=np.int64)[:, None]
    l1 = cum[:-1]
    l0 = nl - l1
    r1 = total_pos - l1
    nr = m - nl
    r0 = nr - r1
    score = (l0 * l0 + l1 * l1) / nl + (r0 * r0 + r1 * r1) / nr
    score[v[1:] <= v[:-1]] = -np.inf

    col_pos = np.argmax(score, axis=0)  # first max = smallest threshold
    col_score = score[col_pos, np.arange(len(feats))]
    best_col = int(np.argmax(col_score))  # first max = smallest feature index
    if not np.isfinite(col_score[best_col]):
        return None
    row = col_pos[best_col]
    lo = v[row, best_col]
    hi = v[row + 1, best_col]
    thr = (lo + hi) / 2.0
    if thr >= hi:  # adjacent floats: midpoint rounded up, keep right side nonempty
        thr = lo
    return int(feats[best_col]), float(thr)
