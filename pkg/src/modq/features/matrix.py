"""Design-matrix assembly: aligned feature rows, labels, and the schema that
makes train-time and inference-time featurization provably identical."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from modq.corpus.records import Status
from modq.corpus.store import CorpusStore
from modq.errors import FeatureError, SchemaMismatchError
from modq.features.embeddings import EmbeddingTable
from modq.features.nontextual import NONTEXTUAL_FEATURES, nontextual_features
from modq.features.text import Vocabulary, bow_vector


@dataclass(frozen=True)
class FeatureConfig:
    use_bow: bool = False
    use_embeddings: bool = False


@dataclass(frozen=True)
class FeatureSchema:
    """Ordered feature names plus the metadata needed to rebuild vectors."""

    names: tuple[str, ...]
    vocab_tokens: tuple[str, ...] | None = None
    embedding_dim: int | None = None

    @property
    def schema_id(self) -> str:
        joined = "\x00".join(self.names)
        return hashlib.sha256(joined.encode("utf-8")).hexdigest()[:16]

    @property
    def config(self) -> FeatureConfig:
        return FeatureConfig(
            use_bow=self.vocab_tokens is not None,
            use_embeddings=self.embedding_dim is not None,
        )

    def __len__(self) -> int:
        return len(self.names)


def build_schema(
    vocab: Vocabulary | None = None, embedding_dim: int | None = None
) -> FeatureSchema:
    names = list(NONTEXTUAL_FEATURES)
    tokens = None
    if vocab is not None:
        tokens = vocab.tokens
        names.extend(f"bow:{t}" for t in tokens)
    if embedding_dim is not None:
        names.extend(f"emb:{i}" for i in range(embedding_dim))
    return FeatureSchema(tuple(names), vocab_tokens=tokens, embedding_dim=embedding_dim)


def schema_vocabulary(schema: FeatureSchema) -> Vocabulary | None:
    """Rebuild the count-vector vocabulary stored in a schema."""
    if schema.vocab_tokens is None:
        return None
    return Vocabulary(
        tokens=schema.vocab_tokens,
        doc_freq=tuple(0 for _ in schema.vocab_tokens),
        stopwords=frozenset(),
    )


@dataclass
class DesignMatrix:
    X: np.ndarray  # (n_rows, n_features) float64
    y: np.ndarray  # (n_rows,) uint8, 1 = featured
    comment_ids: tuple[str, ...]
    schema: FeatureSchema

    def __post_init__(self):
        if self.X.shape != (len(self.comment_ids), len(self.schema)):
            raise SchemaMismatchError(
                f"matrix shape {self.X.shape} does not match "
                f"{len(self.comment_ids)} rows x {len(self.schema)} features"
            )
        if not np.all(np.isfinite(self.X)):
            raise FeatureError("design matrix contains non-finite values")

    def data_digest(self) -> str:
        h = hashlib.sha256()
        h.update(self.X.astype("<f8").tobytes())
        h.update(self.y.astype("<u1").tobytes())
        h.update("\x00".join(self.comment_ids).encode("utf-8"))
        return h.hexdigest()


class Featurizer:
    """Turns comments of one corpus into rows of a fixed schema.

    Pure and read-only over the immutable store: the same comment always
    yields the same vector, at train and at inference time.
    """

    def __init__(
        self,
        store: CorpusStore,
        schema: FeatureSchema,
        embeddings: EmbeddingTable | None = None,
    ):
        if schema.embedding_dim is not None:
            if embeddings is None:
                raise FeatureError("schema expects embeddings but none were provided")
            if embeddings.dim != schema.embedding_dim:
                raise SchemaMismatchError(
                    f"embedding table dim {embeddings.dim} != schema dim "
                    f"{schema.embedding_dim}"
                )
        self.store = store
        self.schema = schema
        self.embeddings = embeddings
        self._vocab = schema_vocabulary(schema)

    def vector(self, comment_id: str) -> np.ndarray:
        comment = self.store.comment(comment_id)
        parts = [nontextual_features(comment, self.store)]
        if self._vocab is not None:
            parts.append(bow_vector(comment.text, self._vocab))
        if self.schema.embedding_dim is not None:
            assert self.embeddings is not None
            parts.append(self.embeddings.vector(comment_id))
        return np.concatenate(parts)

    def rows(self, comment_ids) -> np.ndarray:
        """Bare feature rows, for scoring without labels."""
        ids = tuple(comment_ids)
        X = np.empty((len(ids), len(self.schema)), dtype=np.float64)
        for i, cid in enumerate(ids):
            X[i] = self.vector(cid)
        return X

    def matrix(self, comment_ids) -> DesignMatrix:
        ids = tuple(comment_ids)
        X = self.rows(ids)
        y = np.empty(len(ids), dtype=np.uint8)
        for i, cid in enumerate(ids):
            y[i] = 1 if self.store.comment(cid).status is Status.FEATURED else 0
        return DesignMatrix(X=X, y=y, comment_ids=ids, schema=self.schema)


def assemble_matrix(
    store: CorpusStore,
    comment_ids,
    config: FeatureConfig,
    vocab: Vocabulary | None = None,
    embeddings: EmbeddingTable | None = None,
) -> DesignMatrix:
    """Build a matrix in the given comment order.

    Schema is 13 non-textual features, then vocabulary token counts when
    config.use_bow, then embedding dimensions when config.use_embeddings.
    """
    if config.use_bow and vocab is None:
        raise FeatureError("config.use_bow requires a vocabulary")
    if config.use_embeddings and embeddings is None:
        raise FeatureError("config.use_embeddings requires an embedding table")
    schema = build_schema(
        vocab=vocab if config.use_bow else None,
        embedding_dim=embeddings.dim if config.use_embeddings and embeddings else None,
    )
    featurizer = Featurizer(store, schema, embeddings if config.use_embeddings else None)
    return featurizer.matrix(comment_ids)
