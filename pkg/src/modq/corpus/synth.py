"""Synthetic comment corpus generator with planted, recoverable signal.

Users carry a latent quality in [0, 1]. Quality drives how long and how
"substantive" their comments are (a two-lexicon unigram mixture), how many
likes and replies they attract, and ultimately which comments get featured:
per article the top-m comments by a noisy score of (quality, wordcount,
likes) are featured, with m drawn from an overdispersed count distribution
(mean ~2.8, median 2). Setting every signal strength to zero makes the
featured labels pure noise.

Everything is drawn from a single seeded generator in a fixed order, so a
given (config, seed) pair always produces a byte-identical corpus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

import numpy as np

from modq.corpus.records import CommentRecord, Status
from modq.corpus.store import CorpusStore, SourceManifest
from modq.errors import CorpusError

# Dutch-flavoured lexicons. The "constructive" list marks substantive
# comments, the filler list low-effort ones; stopwords pad both so the
# bag-of-words pipeline has something to strip.
CONSTRUCTIVE_LEXICON = (
    "argument", "bron", "onderzoek", "feiten", "nuance", "context", "cijfers",
    "rapport", "studie", "wetenschap", "beleid", "oplossing", "voorstel",
    "analyse", "vergelijking", "gegevens", "conclusie", "afweging",
    "perspectief", "toelichting", "onderbouwing", "bewijs", "deskundige",
    "uitleg", "historisch", "economisch", "maatschappelijk", "klimaat",
    "energie", "zorgvuldig", "genuanceerd", "verduidelijking", "kanttekening",
    "aanvulling", "overweging", "standpunt", "redenering", "verband",
    "oorzaak", "gevolg", "maatregel", "statistiek", "peiling", "duurzaam",
    "verkiezing", "pandemie", "vaccinatie", "grondwet", "begroting",
    "transparantie", "verantwoordelijkheid", "samenleving", "wetgeving",
    "infrastructuur", "onderwijs", "gezondheidszorg", "arbeidsmarkt",
)
FILLER_LEXICON = (
    "lol", "haha", "onzin", "tja", "nee", "ja", "echt", "nou", "zucht",
    "pff", "huh", "jammer", "slecht", "dom", "belachelijk", "schandalig",
    "prima", "mooi", "leuk", "saai", "meh", "hoor", "joh", "zeg", "typisch",
    "kletspraat", "flauwekul", "larie", "bla", "duh", "tsja", "ach", "oei",
    "oeps", "hmm", "grapjas", "clown", "drama", "paniek", "hype", "sensatie",
    "gedoe", "gezeur", "blabla", "nietes", "welles", "boeiend", "whatever",
    "zooi", "bagger",
)
_STOP_PAD = ("de", "het", "een", "en", "van", "dat", "is", "in", "op", "met")


@dataclass(frozen=True)
class SynthConfig:
    """Generator settings; signal strengths of zero remove the planted signal."""

    n_articles: int = 200
    n_users: int = 300
    mean_comments: float = 50.0
    comments_sigma: float = 0.55
    signal_quality: float = 1.0
    signal_wordcount: float = 0.8
    signal_likes: float = 0.8
    signal_text: float = 1.0
    noise: float = 0.35
    featured_mean: float = 2.8
    featured_sd: float = 3.0
    reply_prob: float = 0.3
    start: datetime = datetime(2020, 1, 1, 6, 0, tzinfo=timezone.utc)
    article_spacing_minutes: int = 420

    def __post_init__(self):
        if self.n_articles <= 0 or self.n_users <= 0:
            raise CorpusError("degenerate config: need at least one article and one user")
        if self.mean_comments < 1:
            raise CorpusError("mean_comments must be >= 1")


def _featured_count(cfg: SynthConfig, rng: np.random.Generator) -> int:
    """Featured posts per article: negative binomial when overdispersed."""
    mean, var = cfg.featured_mean, cfg.featured_sd**2
    if mean <= 0:
        return 0
    if var > mean:
        r = mean * mean / (var - mean)
        return int(rng.negative_binomial(r, r / (r + mean)))
    return int(rng.poisson(mean))


def _comment_text(
    rng: np.random.Generator, quality: float, n_words: int, signal_text: float
) -> str:
    p_constructive = float(np.clip(0.12 + 0.75 * signal_text * quality, 0.0, 0.97))
    words = []
    sentence_len = 0
    for _ in range(n_words):
        u = rng.random()
        if u < 0.30:
            token = _STOP_PAD[rng.integers(0, len(_STOP_PAD))]
        elif rng.random() < p_constructive:
            token = CONSTRUCTIVE_LEXICON[rng.integers(0, len(CONSTRUCTIVE_LEXICON))]
        else:
            token = FILLER_LEXICON[rng.integers(0, len(FILLER_LEXICON))]
        sentence_len += 1
        if sentence_len >= 6 and rng.random() < 0.18:
            token += "."
            sentence_len = 0
        words.append(token)
    text = " ".join(words)
    if not text.endswith("."):
        text += "."
    return text


def synth_generate(config: SynthConfig, seed: int) -> CorpusStore:
    """Generate a full corpus; deterministic for a given (config, seed)."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    qualities = rng.beta(2.0, 5.0, size=config.n_users)

    mu = math.log(config.mean_comments) - config.comments_sigma**2 / 2.0
    records: list[CommentRecord] = []

    for j in range(config.n_articles):
        article_id = f"a{j:05d}"
        published = config.start + timedelta(minutes=j * config.article_spacing_minutes)
        n_c = max(3, int(round(rng.lognormal(mu, config.comments_sigma))))

        authors = rng.integers(0, config.n_users, size=n_c)
        offsets = 1 + np.floor(rng.exponential(scale=300.0, size=n_c)).astype(int)
        offsets = np.minimum(offsets, 4320)  # comments close after ~3 days
        order = np.argsort(offsets, kind="stable")
        authors = authors[order]
        offsets = offsets[order]
        quality = qualities[authors]

        n_words = np.maximum(
            3,
            np.round(
                rng.lognormal(np.log(12.0 + 60.0 * quality) - 0.1, 0.45)
            ).astype(int),
        )
        texts = [
            _comment_text(rng, float(quality[i]), int(n_words[i]), config.signal_text)
            for i in range(n_c)
        ]
        wordcounts = np.array([len(t.split()) for t in texts], dtype=float)

        like_mean = 0.4 + 11.0 * config.signal_likes * quality
        likes = rng.poisson(rng.gamma(1.3, like_mean / 1.3, size=n_c))

        rejected = rng.random(n_c) < 0.3 * (1.0 - quality)

        parents = np.full(n_c, -1)
        for i in range(1, n_c):
            if rng.random() < config.reply_prob:
                candidates = [k for k in range(i) if not rejected[k]]
                if candidates:
                    weights = 0.25 + quality[candidates]
                    weights = weights / weights.sum()
                    parents[i] = candidates[rng.choice(len(candidates), p=weights)]

        # featured: top-m non-rejected comments by noisy score
        m = _featured_count(config, rng)
        candidates = np.flatnonzero(~rejected)
        score_noise = rng.standard_normal(n_c)
        statuses = np.where(rejected, Status.REJECTED.value, Status.PUBLISHED.value)
        if m > 0 and len(candidates) > 0:
            zw = _zscores(wordcounts[candidates])
            zl = _zscores(likes[candidates].astype(float))
            scores = (
                config.signal_quality * quality[candidates]
                + config.signal_wordcount * zw
                + config.signal_likes * zl
                + config.noise * score_noise[candidates]
            )
            top = candidates[np.lexsort((candidates, -scores))][: min(m, len(candidates))]
            statuses[top] = Status.FEATURED.value

        for i in range(n_c):
            cid = f"{article_id}-c{i:04d}"
            records.append(
                CommentRecord(
                    comment_id=cid,
                    article_id=article_id,
                    user_key=f"u{authors[i]:05d}",
                    created_at=published + timedelta(minutes=int(offsets[i])),
                    article_published_at=published,
                    text=texts[i],
                    respect_count=int(likes[i]),
                    parent_id=f"{article_id}-c{parents[i]:04d}" if parents[i] >= 0 else None,
                    status=Status(statuses[i]),
                )
            )

    manifest = SourceManifest(source=f"synthetic(seed={seed})")
    manifest.total_lines = manifest.valid_records = len(records)
    return CorpusStore(records, manifest)


def _zscores(values: np.ndarray) -> np.ndarray:
    std = values.std()
    if std == 0.0:
        return np.zeros_like(values)
    return (values - values.mean()) / std
