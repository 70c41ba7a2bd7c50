from modq.corpus.records import CommentRecord, Status, format_timestamp, parse_timestamp
from modq.corpus.splits import (
    DOWNSAMPLE_PRESETS,
    SplitSpec,
    chronological_split,
    downsample,
    proportional_allocation,
    train_val_test_split,
)
from modq.corpus.store import (
    Article,
    CorpusStore,
    SourceManifest,
    featured_ids,
    ingest_comments,
    write_jsonl,
)
from modq.corpus.synth import SynthConfig, synth_generate

__all__ = [
    "Article",
    "CommentRecord",
    "CorpusStore",
    "DOWNSAMPLE_PRESETS",
    "SourceManifest",
    "SplitSpec",
    "Status",
    "SynthConfig",
    "chronological_split",
    "downsample",
    "featured_ids",
    "format_timestamp",
    "ingest_comments",
    "parse_timestamp",
    "proportional_allocation",
    "synth_generate",
    "train_val_test_split",
    "write_jsonl",
]
