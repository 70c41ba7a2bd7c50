"""Shared fixtures: hand-built corpora and one small trained forest."""

from __future__ import annotations

import pytest

from modq.corpus.records import parse_timestamp, record_from_dict
from modq.corpus.store import CorpusStore, SourceManifest
from modq.corpus.synth import SynthConfig, synth_generate
from modq.features.matrix import FeatureConfig, assemble_matrix
from modq.forest.ensemble import Hyperparams, train_forest

T0 = "2021-03-01T08:00:00Z"


def make_record(
    comment_id: str,
    article_id: str = "a1",
    user_key: str = "u1",
    created_at: str = "2021-03-01T09:00:00Z",
    article_published_at: str = T0,
    text: str = "een degelijk onderbouwde reactie.",
    respect_count: int = 0,
    parent_id: str | None = None,
    status: str = "published",
):
    return record_from_dict(
        {
            "comment_id": comment_id,
            "article_id": article_id,
            "user_key": user_key,
            "created_at": created_at,
            "article_published_at": article_published_at,
            "text": text,
            "respect_count": respect_count,
            "parent_id": parent_id,
            "status": status,
        }
    )


def make_store(records) -> CorpusStore:
    return CorpusStore(list(records), SourceManifest(source="test"))


@pytest.fixture
def ts():
    return parse_timestamp


@pytest.fixture(scope="session")
def synth_store() -> CorpusStore:
    return synth_generate(SynthConfig(n_articles=16, n_users=40), seed=5)


@pytest.fixture(scope="session")
def small_forest(synth_store):
    ids = [r.comment_id for r in synth_store.comments]
    matrix = assemble_matrix(
        synth_store, ids, FeatureConfig(use_bow=False, use_embeddings=False)
    )
    hp = Hyperparams(n_estimators=20, max_depth=10, min_samples_split=4, seed=5)
    return train_forest(matrix, hp), matrix
