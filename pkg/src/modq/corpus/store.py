"""Corpus container: validated comments grouped per article, plus JSONL ingestion.

The store is immutable after construction and canonically ordered, so two
stores built from the same records (in any input order) compare identical.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

from modq.corpus.records import CommentRecord, Status, record_from_dict
from modq.errors import CorpusError


@dataclass(frozen=True)
class Article:
    article_id: str
    published_at: datetime
    comment_ids: tuple[str, ...]


@dataclass
class SourceManifest:
    """Ingestion metadata: where the records came from and what was dropped."""

    source: str
    file_digest: str | None = None
    total_lines: int = 0
    valid_records: int = 0
    rejected_records: int = 0
    unresolved_parents: int = 0
    diagnostics: list[str] = field(default_factory=list)


class CorpusStore:
    """Immutable comment corpus with per-article chronological ordering."""

    def __init__(self, records: list[CommentRecord], manifest: SourceManifest):
        seen: dict[str, CommentRecord] = {}
        for rec in records:
            if rec.comment_id in seen:
                raise CorpusError(f"duplicate comment_id {rec.comment_id!r}")
            seen[rec.comment_id] = rec

        # Unresolvable parent links (absent from the corpus, or pointing into
        # another article) are normalized to None and counted; the comment
        # itself stays.
        resolved: list[CommentRecord] = []
        unresolved = 0
        for rec in records:
            if rec.parent_id is not None:
                parent = seen.get(rec.parent_id)
                if parent is None or parent.article_id != rec.article_id:
                    manifest.diagnostics.append(
                        f"comment {rec.comment_id!r}: unresolved parent {rec.parent_id!r}"
                    )
                    rec = dataclasses.replace(rec, parent_id=None)
                    unresolved += 1
            resolved.append(rec)
        manifest.unresolved_parents = unresolved

        ordered = sorted(resolved, key=lambda r: (r.created_at, r.comment_id))
        self.comments: tuple[CommentRecord, ...] = tuple(ordered)
        self._by_id: dict[str, CommentRecord] = {r.comment_id: r for r in ordered}

        by_article: dict[str, list[CommentRecord]] = {}
        published: dict[str, datetime] = {}
        for rec in ordered:
            by_article.setdefault(rec.article_id, []).append(rec)
            prev = published.get(rec.article_id)
            # disagreeing article timestamps collapse to the earliest observed
            if prev is None or rec.article_published_at < prev:
                published[rec.article_id] = rec.article_published_at

        articles = [
            Article(aid, published[aid], tuple(r.comment_id for r in recs))
            for aid, recs in by_article.items()
        ]
        articles.sort(key=lambda a: (a.published_at, a.article_id))
        self.articles: dict[str, Article] = {a.article_id: a for a in articles}

        replies: dict[str, int] = {}
        for rec in ordered:
            if rec.parent_id is not None:
                replies[rec.parent_id] = replies.get(rec.parent_id, 0) + 1
        self._reply_counts = replies
        self.manifest = manifest

    def __len__(self) -> int:
        return len(self.comments)

    def comment(self, comment_id: str) -> CommentRecord:
        try:
            return self._by_id[comment_id]
        except KeyError:
            raise CorpusError(f"unknown comment_id {comment_id!r}") from None

    def has_comment(self, comment_id: str) -> bool:
        return comment_id in self._by_id

    def reply_count(self, comment_id: str) -> int:
        """Direct replies to a comment, over the full corpus snapshot."""
        return self._reply_counts.get(comment_id, 0)

    def article_ids(self) -> tuple[str, ...]:
        return tuple(self.articles)

    def article_comments(self, article_id: str) -> list[CommentRecord]:
        return [self._by_id[cid] for cid in self.article_comment_ids(article_id)]

    def article_comment_ids(self, article_id: str) -> list[str]:
        try:
            art = self.articles[article_id]
        except KeyError:
            raise CorpusError(f"unknown article_id {article_id!r}") from None
        return list(art.comment_ids)

    def comments_for_articles(self, article_ids) -> list[CommentRecord]:
        out: list[CommentRecord] = []
        for aid in article_ids:
            out.extend(self.article_comments(aid))
        out.sort(key=lambda r: (r.created_at, r.comment_id))
        return out

    def content_digest(self) -> str:
        """Digest of the canonical serialized content (manifest excluded)."""
        h = hashlib.sha256()
        for rec in self.comments:
            h.update(_canonical_line(rec).encode("utf-8"))
        return h.hexdigest()


def _canonical_line(rec: CommentRecord) -> str:
    return json.dumps(rec.to_json_dict(), sort_keys=True, ensure_ascii=False) + "\n"


def write_jsonl(store: CorpusStore, path: str | Path) -> None:
    """Write the corpus in canonical order; identical stores yield identical bytes."""
    with open(path, "w", encoding="utf-8") as fh:
        for rec in store.comments:
            fh.write(_canonical_line(rec))


def ingest_comments(path: str | Path, fmt: str = "jsonl") -> CorpusStore:
    """Load a JSONL comment file into a validated store.

    Malformed lines are counted and reported via the manifest rather than
    aborting the load; duplicate comment ids and files with zero valid
    records are fatal.
    """
    if fmt != "jsonl":
        raise CorpusError(f"unsupported format {fmt!r}")
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc

    manifest = SourceManifest(
        source=str(path), file_digest=hashlib.sha256(raw).hexdigest()
    )
    records: list[CommentRecord] = []
    for lineno, line in enumerate(raw.decode("utf-8", errors="replace").splitlines(), 1):
        if not line.strip():
            continue
        manifest.total_lines += 1
        try:
            obj = json.loads(line)
            records.append(record_from_dict(obj))
        except (json.JSONDecodeError, CorpusError) as exc:
            manifest.rejected_records += 1
            if len(manifest.diagnostics) < 100:
                manifest.diagnostics.append(f"line {lineno}: {exc}")
            continue
    manifest.valid_records = len(records)
    if not records:
        raise CorpusError(f"zero valid records in {path}")
    return CorpusStore(records, manifest)


def featured_ids(store: CorpusStore, comment_ids) -> set[str]:
    return {
        cid for cid in comment_ids if store.comment(cid).status is Status.FEATURED
    }
