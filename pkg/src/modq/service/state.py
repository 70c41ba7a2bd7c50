"""Service state: corpus, model bundle, and pick log wiring."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path

from modq.corpus.store import CorpusStore, ingest_comments
from modq.errors import ModqError
from modq.features.embeddings import EmbeddingTable, load_embeddings
from modq.features.matrix import Featurizer
from modq.forest.ensemble import Forest
from modq.forest.model_io import canonical_dumps, forest_to_json_dict, load_forest
from modq.ranking.ranker import ForestRanker
from modq.service.picks import PickLog


@dataclass(frozen=True)
class ModelBundle:
    """Immutable model view; swapped atomically on reload."""

    forest: Forest
    featurizer: Featurizer
    ranker: ForestRanker
    version: str


class AppState:
    def __init__(self, store: CorpusStore, pick_log: PickLog, bundle: ModelBundle):
        self.store = store
        self.pick_log = pick_log
        self._bundle = bundle

    @property
    def bundle(self) -> ModelBundle:
        return self._bundle

    def swap_model(self, bundle: ModelBundle) -> None:
        # single attribute assignment: in-flight requests keep the old bundle
        self._bundle = bundle


def bundle_from_forest(
    store: CorpusStore,
    forest: Forest,
    embeddings: EmbeddingTable | None = None,
    version: str | None = None,
) -> ModelBundle:
    if version is None:
        data = canonical_dumps(forest_to_json_dict(forest))
        version = hashlib.sha256(data).hexdigest()[:12]
    featurizer = Featurizer(store, forest.schema, embeddings)
    return ModelBundle(
        forest=forest,
        featurizer=featurizer,
        ranker=ForestRanker(forest, featurizer),
        version=version,
    )


def build_state(
    corpus_path: str | Path,
    model_path: str | Path,
    picks_path: str | Path,
    embeddings_path: str | Path | None = None,
) -> AppState:
    store = ingest_comments(corpus_path)
    forest = load_forest(model_path)
    embeddings = None
    if forest.schema.embedding_dim is not None:
        if embeddings_path is None:
            raise ModqError(
                "model expects embeddings; pass an embeddings file"
            )
        embeddings = load_embeddings(embeddings_path)
    bundle = bundle_from_forest(store, forest, embeddings)
    return AppState(store=store, pick_log=PickLog(picks_path), bundle=bundle)
