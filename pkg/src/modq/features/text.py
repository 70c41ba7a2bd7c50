"""Bag-of-words text features: normalization, vocabulary, count vectors."""

from __future__ import annotations

import unicodedata
import warnings
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

DEFAULT_VOCAB_SIZE = 413  # 13 non-textual features + 413 tokens = 426


@lru_cache(maxsize=4096)
def _is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def strip_punctuation(token: str) -> str:
    return "".join(ch for ch in token if not _is_punctuation(ch))


def normalize_tokens(text: str, stopwords: frozenset[str]) -> list[str]:
    """Lowercase, split on whitespace, strip punctuation characters, drop
    stopwords and tokens that were pure punctuation."""
    out = []
    for raw in text.lower().split():
        token = strip_punctuation(raw)
        if token and token not in stopwords:
            out.append(token)
    return out


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """One token per line, UTF-8; defaults to the shipped Dutch list."""
    if path is None:
        data = (
            resources.files("modq.features")
            .joinpath("data/stopwords_nl.txt")
            .read_text(encoding="utf-8")
        )
    else:
        data = Path(path).read_text(encoding="utf-8")
    return frozenset(line.strip().lower() for line in data.splitlines() if line.strip())


@dataclass(frozen=True)
class Vocabulary:
    tokens: tuple[str, ...]
    doc_freq: tuple[int, ...]
    stopwords: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.tokens)})

    def __len__(self) -> int:
        return len(self.tokens)

    def index(self) -> dict[str, int]:
        return self._index  # type: ignore[attr-defined]


def build_vocabulary(
    texts, size: int = DEFAULT_VOCAB_SIZE, stopwords: frozenset[str] | None = None
) -> Vocabulary:
    """Keep the `size` tokens with highest document frequency (ties broken
    lexicographically)."""
    if size < 1:
        raise ValueError("vocabulary size must be >= 1")
    if stopwords is None:
        stopwords = load_stopwords()
    counts: dict[str, int] = {}
    n_texts = 0
    for text in texts:
        n_texts += 1
        for token in set(normalize_tokens(text, stopwords)):
            counts[token] = counts.get(token, 0) + 1
    if n_texts == 0:
        raise ValueError("cannot build a vocabulary from zero texts")
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    if len(ranked) < size:
        warnings.warn(
            f"vocabulary has only {len(ranked)} distinct tokens, fewer than the "
            f"requested {size}; keeping all of them",
            RuntimeWarning,
            stacklevel=2,
        )
    kept = ranked[:size]
    return Vocabulary(
        tokens=tuple(t for t, _ in kept),
        doc_freq=tuple(c for _, c in kept),
        stopwords=stopwords,
    )


def bow_vector(text: str, vocab: Vocabulary) -> np.ndarray:
    """Raw occurrence counts in vocabulary order; out-of-vocabulary tokens
    are ignored."""
    vec = np.zeros(len(vocab), dtype=np.float64)
    index = vocab.index()
    for token in normalize_tokens(text, vocab.stopwords):
        pos = index.get(token)
        if pos is not None:
            vec[pos] += 1.0
    return vec
