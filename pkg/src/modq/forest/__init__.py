"""Random forest classifier, baseline scorer, and model persistence."""

from modq.forest.baseline import BASELINE_THRESHOLD, baseline_predict, baseline_scores
from modq.forest.ensemble import (
    PRESETS,
    Forest,
    Hyperparams,
    TrainingManifest,
    train_forest,
)
from modq.forest.grid import GridResult, grid_search
from modq.forest.model_io import (
    canonical_dumps,
    forest_from_json_dict,
    forest_to_json_dict,
    load_forest,
    model_digest,
    model_version,
    save_forest,
)
from modq.forest.tree import LEAF, DecisionTree, grow_tree, resolve_max_features

__all__ = [
    "BASELINE_THRESHOLD",
    "LEAF",
    "PRESETS",
    "DecisionTree",
    "Forest",
    "GridResult",
    "Hyperparams",
    "TrainingManifest",
    "grid_search",
    "baseline_predict",
    "baseline_scores",
    "canonical_dumps",
    "forest_from_json_dict",
    "forest_to_json_dict",
    "grow_tree",
    "load_forest",
    "model_digest",
    "model_version",
    "resolve_max_features",
    "save_forest",
    "train_forest",
]
