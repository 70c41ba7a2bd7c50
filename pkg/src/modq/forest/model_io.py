"""Forest persistence as canonical JSON.

Canonical form (sorted keys, fixed separators, repr floats) makes
save -> load -> save byte-identical, so a sha256 of the file doubles as a
model version identifier.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from modq.errors import ModelFormatError
from modq.features.matrix import FeatureSchema
from modq.forest.ensemble import Forest, Hyperparams, TrainingManifest
from modq.forest.tree import DecisionTree

FORMAT_TAG = "modq-forest"
FORMAT_VERSION = 1


def canonical_dumps(obj: object) -> bytes:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def _tree_to_json_dict(tree: DecisionTree) -> dict:
    return {
        "feature": tree.feature.tolist(),
        "threshold": tree.threshold.tolist(),
        "left": tree.left.tolist(),
        "right": tree.right.tolist(),
        "value": tree.value.tolist(),
        "n_samples": tree.n_samples.tolist(),
    }


def _tree_from_json_dict(d: dict) -> DecisionTree:
    try:
        tree = DecisionTree(
            feature=np.array(d["feature"], dtype=np.int32),
            threshold=np.array(d["threshold"], dtype=np.float64),
            left=np.array(d["left"], dtype=np.int32),
            right=np.array(d["right"], dtype=np.int32),
            value=np.array(d["value"], dtype=np.float64),
            n_samples=np.array(d["n_samples"], dtype=np.int64),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed tree record: {exc}") from exc
    n = tree.n_nodes
    lengths = {
        len(tree.threshold),
        len(tree.left),
        len(tree.right),
        len(tree.value),
        len(tree.n_samples),
    }
    if lengths != {n} or tree.value.ndim != 2 or tree.value.shape[1] != 2:
        raise ModelFormatError("tree arrays have inconsistent shapes")
    return tree


def forest_to_json_dict(forest: Forest) -> dict:
    return {
        "format": FORMAT_TAG,
        "format_version": FORMAT_VERSION,
        "hyperparams": forest.hyperparams.to_json_dict(),
        "schema": {
            "names": list(forest.schema.names),
            "vocab_tokens": (
                None
                if forest.schema.vocab_tokens is None
                else list(forest.schema.vocab_tokens)
            ),
            "embedding_dim": forest.schema.embedding_dim,
        },
        "manifest": forest.manifest.to_json_dict(),
        "trees": [_tree_to_json_dict(t) for t in forest.trees],
    }


def forest_from_json_dict(d: dict) -> Forest:
    if not isinstance(d, dict) or d.get("format") != FORMAT_TAG:
        raise ModelFormatError("not a forest model file")
    if d.get("format_version") != FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported model format version {d.get('format_version')!r}"
        )
    try:
        hp = Hyperparams(
            n_estimators=d["hyperparams"]["n_estimators"],
            max_depth=d["hyperparams"]["max_depth"],
            min_samples_split=d["hyperparams"]["min_samples_split"],
            max_features=d["hyperparams"]["max_features"],
            bootstrap=d["hyperparams"]["bootstrap"],
            seed=d["hyperparams"]["seed"],
        )
        raw_vocab = d["schema"]["vocab_tokens"]
        schema = FeatureSchema(
            names=tuple(d["schema"]["names"]),
            vocab_tokens=None if raw_vocab is None else tuple(raw_vocab),
            embedding_dim=d["schema"]["embedding_dim"],
        )
        manifest = TrainingManifest(
            rows=d["manifest"]["rows"],
            positives=d["manifest"]["positives"],
            data_digest=d["manifest"]["data_digest"],
        )
        trees = [_tree_from_json_dict(t) for t in d["trees"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model file: {exc}") from exc
    if len(trees) != hp.n_estimators:
        raise ModelFormatError(
            f"model declares {hp.n_estimators} trees but contains {len(trees)}"
        )
    return Forest(trees=trees, hyperparams=hp, schema=schema, manifest=manifest)


def save_forest(forest: Forest, path: str | Path) -> str:
    """Write the model file and return its content digest."""
    data = canonical_dumps(forest_to_json_dict(forest))
    Path(path).write_bytes(data)
    return hashlib.sha256(data).hexdigest()


def load_forest(path: str | Path) -> Forest:
    raw = Path(path).read_bytes()
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: not valid JSON: {exc}") from exc
    return forest_from_json_dict(payload)


def model_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def model_version(path: str | Path) -> str:
    """Short content-derived identifier served alongside predictions."""
    return model_digest(path)[:12]
