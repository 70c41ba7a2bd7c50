"""Random forest over the CART trees, with deterministic per-tree RNG.

Tree t always draws from SeedSequence(entropy=seed, spawn_key=(STREAM, t)),
so training with 1 worker or 8 produces bit-identical forests and adding
trees never disturbs the streams of existing ones.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field

import numpy as np

from modq.errors import SchemaMismatchError, TrainingError
from modq.features.matrix import DesignMatrix, FeatureSchema
from modq.forest.tree import DecisionTree, grow_tree

_TREE_STREAM = 3


@dataclass(frozen=True)
class Hyperparams:
    n_estimators: int = 200
    max_depth: int | None = 50
    min_samples_split: int = 10
    max_features: str | int = "sqrt"
    bootstrap: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_estimators < 1:
            raise ValueError("n_estimators must be >= 1")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be None or >= 1")
        if self.min_samples_split < 2:
            raise ValueError("min_samples_split must be >= 2")
        if isinstance(self.max_features, str):
            if self.max_features not in ("sqrt", "all"):
                raise ValueError("max_features must be 'sqrt', 'all', or an int")
        elif self.max_features < 1:
            raise ValueError("integer max_features must be >= 1")

    def to_json_dict(self) -> dict:
        return {
            "n_estimators": self.n_estimators,
            "max_depth": self.max_depth,
            "min_samples_split": self.min_samples_split,
            "max_features": self.max_features,
            "bootstrap": self.bootstrap,
            "seed": self.seed,
        }


# From-the-study configurations, keyed by feature regime.
PRESETS: dict[str, Hyperparams] = {
    "rf": Hyperparams(n_estimators=200, max_depth=50, min_samples_split=10),
    "rf_emb": Hyperparams(n_estimators=1200, max_depth=64, min_samples_split=2),
    "rf_bow": Hyperparams(n_estimators=1200, max_depth=110, min_samples_split=10),
}


@dataclass(frozen=True)
class TrainingManifest:
    rows: int
    positives: int
    data_digest: str

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "positives": self.positives,
            "data_digest": self.data_digest,
        }


@dataclass
class Forest:
    trees: list[DecisionTree] = field(repr=False)
    hyperparams: Hyperparams
    schema: FeatureSchema
    manifest: TrainingManifest

    def _check_width(self, X: np.ndarray) -> None:
        if X.ndim != 2 or X.shape[1] != len(self.schema.names):
            raise SchemaMismatchError(
                f"expected {len(self.schema.names)} features, got "
                f"{X.shape[1] if X.ndim == 2 else X.shape}"
            )

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        """Mean over trees of the leaf positive-class frequency, per row."""
        self._check_width(X)
        X = np.ascontiguousarray(X, dtype=np.float64)
        out = np.zeros(len(X), dtype=np.float64)
        for tree in self.trees:
            out += tree.predict_proba(X)
        return out / len(self.trees)

    def predict_proba_one(self, x: np.ndarray) -> float:
        return float(self.predict_proba(np.asarray(x, dtype=np.float64)[None, :])[0])

    def predict(self, X: np.ndarray, threshold: float = 0.5) -> np.ndarray:
        return (self.predict_proba(X) > threshold).astype(np.int64)


def _tree_rng(seed: int, tree_index: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(_TREE_STREAM, tree_index))
    )


def train_forest(
    matrix: DesignMatrix, hyperparams: Hyperparams, n_jobs: int = 1
) -> Forest:
    """Fit a forest on a design matrix; n_jobs only affects wall time."""
    X = np.ascontiguousarray(matrix.X, dtype=np.float64)
    y = matrix.y.astype(np.int64)
    classes = np.unique(y)
    if len(classes) < 2:
        raise TrainingError(
            f"training data has a single class ({classes.tolist()}); "
            "need both featured and non-featured rows"
        )

    def build(t: int) -> DecisionTree:
        return grow_tree(
            X,
            y,
            max_depth=hyperparams.max_depth,
            min_samples_split=hyperparams.min_samples_split,
            max_features=hyperparams.max_features,
            bootstrap=hyperparams.bootstrap,
            rng=_tree_rng(hyperparams.seed, t),
        )

    indices = range(hyperparams.n_estimators)
    if n_jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=n_jobs) as pool:
            trees = list(pool.map(build, indices))
    else:
        trees = [build(t) for t in indices]

    manifest = TrainingManifest(
        rows=len(y), positives=int(y.sum()), data_digest=matrix.data_digest()
    )
    return Forest(
        trees=trees,
        hyperparams=hyperparams,
        schema=matrix.schema,
        manifest=manifest,
    )
