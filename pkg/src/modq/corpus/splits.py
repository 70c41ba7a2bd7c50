"""Chronological article split, stratified train/val/test split, downsampling.

All randomized operations derive their streams from a 64-bit seed plus a
fixed per-operation key, so a pipeline run is reproducible bit for bit.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from modq.corpus.records import Status
from modq.corpus.store import CorpusStore
from modq.errors import CorpusError

# spawn keys keep the per-operation RNG streams disjoint for a shared seed
_TVT_STREAM = 1
_DOWNSAMPLE_STREAM = 2


@dataclass(frozen=True)
class SplitSpec:
    chrono_fraction: float = 0.5
    train_fraction: float = 0.8
    val_fraction: float = 0.1
    test_fraction: float = 0.1
    downsample_ratio: float = 0.05
    seed: int = 0

    def __post_init__(self):
        for name in ("chrono_fraction", "train_fraction", "val_fraction", "test_fraction"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise CorpusError(f"{name} must be in (0, 1), got {value}")
        total = self.train_fraction + self.val_fraction + self.test_fraction
        if abs(total - 1.0) > 1e-9:
            raise CorpusError(f"train/val/test fractions must sum to 1, got {total}")
        if not 0.0 < self.downsample_ratio <= 1.0:
            raise CorpusError(
                f"downsample_ratio must be in (0, 1], got {self.downsample_ratio}"
            )


def chronological_split(
    store: CorpusStore, spec: SplitSpec
) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Split articles by publication date: first ceil(fraction*N) go to set 1."""
    if len(store) == 0:
        raise CorpusError("empty corpus")
    ordered = store.article_ids()  # already (published_at, article_id) ordered
    cut = math.ceil(spec.chrono_fraction * len(ordered))
    return ordered[:cut], ordered[cut:]


def proportional_allocation(n: int, fractions: tuple[float, ...]) -> tuple[int, ...]:
    """Largest-remainder apportionment of n items; remainder ties go to the
    earlier bucket."""
    exact = [n * f for f in fractions]
    counts = [math.floor(e) for e in exact]
    shortfall = n - sum(counts)
    order = sorted(range(len(fractions)), key=lambda i: (-(exact[i] - counts[i]), i))
    for i in order[:shortfall]:
        counts[i] += 1
    return tuple(counts)


def train_val_test_split(
    store: CorpusStore, article_ids, spec: SplitSpec
) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    """Comment-level stratified split of the given articles' comments.

    Featured and non-featured comments are shuffled separately with the
    spec seed and apportioned per class, so featured counts per split stay
    within one row of the exact proportional count.
    """
    comments = store.comments_for_articles(article_ids)
    if not comments:
        raise CorpusError("article set has no comments")
    featured = [c.comment_id for c in comments if c.status is Status.FEATURED]
    other = [c.comment_id for c in comments if c.status is not Status.FEATURED]
    if len(featured) < 3:
        raise CorpusError(
            f"cannot stratify: {len(featured)} featured comments (need at least 3)"
        )

    fractions = (spec.train_fraction, spec.val_fraction, spec.test_fraction)
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=spec.seed, spawn_key=(_TVT_STREAM,))
    )
    splits: list[list[str]] = [[], [], []]
    for ids in (featured, other):
        shuffled = [ids[i] for i in rng.permutation(len(ids))]
        counts = proportional_allocation(len(ids), fractions)
        start = 0
        for bucket, count in zip(splits, counts):
            bucket.extend(shuffled[start : start + count])
            start += count

    def chronological(ids: list[str]) -> tuple[str, ...]:
        recs = [store.comment(cid) for cid in ids]
        recs.sort(key=lambda r: (r.created_at, r.comment_id))
        return tuple(r.comment_id for r in recs)

    return tuple(chronological(bucket) for bucket in splits)  # type: ignore[return-value]


def downsample(
    store: CorpusStore, comment_ids, ratio: float, seed: int
) -> tuple[str, ...]:
    """Keep all featured comments and floor(F*(1-ratio)/ratio) random
    non-featured ones, restoring chronological order afterwards."""
    if not 0.0 < ratio <= 1.0:
        raise CorpusError(f"downsample ratio must be in (0, 1], got {ratio}")
    featured = [cid for cid in comment_ids if store.comment(cid).status is Status.FEATURED]
    other = sorted(cid for cid in comment_ids if store.comment(cid).status is not Status.FEATURED)
    if not featured:
        raise CorpusError("cannot downsample: no featured comments in the set")

    target = math.floor(len(featured) * (1.0 - ratio) / ratio)
    if target > len(other):
        warnings.warn(
            f"downsample wanted {target} non-featured comments but only "
            f"{len(other)} are available; keeping all of them",
            RuntimeWarning,
            stacklevel=2,
        )
        kept_other = other
    else:
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=seed, spawn_key=(_DOWNSAMPLE_STREAM,))
        )
        picks = rng.choice(len(other), size=target, replace=False)
        kept_other = [other[i] for i in picks]

    recs = [store.comment(cid) for cid in featured + list(kept_other)]
    recs.sort(key=lambda r: (r.created_at, r.comment_id))
    return tuple(r.comment_id for r in recs)


# Training-composition presets explored for the downsampling sweep:
# featured share of 1%, 5%, 10%, 15%, 20% and 25%.
DOWNSAMPLE_PRESETS = (0.01, 0.05, 0.10, 0.15, 0.20, 0.25)
