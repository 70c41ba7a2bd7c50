from modq.features.embeddings import (
    EmbeddingTable,
    load_embeddings,
    write_embeddings_binary,
    write_embeddings_jsonl,
)
from modq.features.history import UserHistory, user_history_at, user_stats_index
from modq.features.matrix import (
    DesignMatrix,
    FeatureConfig,
    FeatureSchema,
    Featurizer,
    assemble_matrix,
    build_schema,
    schema_vocabulary,
)
from modq.features.nontextual import (
    NONTEXTUAL_FEATURES,
    delta_minutes,
    nontextual_features,
    sentence_count,
)
from modq.features.text import (
    DEFAULT_VOCAB_SIZE,
    Vocabulary,
    bow_vector,
    build_vocabulary,
    load_stopwords,
    normalize_tokens,
)

__all__ = [
    "DEFAULT_VOCAB_SIZE",
    "DesignMatrix",
    "EmbeddingTable",
    "FeatureConfig",
    "FeatureSchema",
    "Featurizer",
    "NONTEXTUAL_FEATURES",
    "UserHistory",
    "Vocabulary",
    "assemble_matrix",
    "bow_vector",
    "build_schema",
    "build_vocabulary",
    "delta_minutes",
    "load_embeddings",
    "load_stopwords",
    "nontextual_features",
    "normalize_tokens",
    "schema_vocabulary",
    "sentence_count",
    "user_history_at",
    "user_stats_index",
    "write_embeddings_binary",
    "write_embeddings_jsonl",
]
