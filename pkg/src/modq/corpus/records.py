"""Comment records and timestamp handling.

Timestamps are stored timezone-aware in UTC and truncated to minute
precision, the resolution every downstream uptime computation uses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from datetime import datetime, timezone

from modq.errors import CorpusError


class Status(str, enum.Enum):
    REJECTED = "rejected"
    PUBLISHED = "published"
    FEATURED = "featured"


def parse_timestamp(raw: str) -> datetime:
    """Parse an RFC3339 timestamp into a minute-truncated UTC datetime."""
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError as exc:
        raise CorpusError(f"invalid timestamp {raw!r}") from exc
    if parsed.tzinfo is None:
        # naive timestamps are taken as UTC
        parsed = parsed.replace(tzinfo=timezone.utc)
    parsed = parsed.astimezone(timezone.utc)
    return parsed.replace(second=0, microsecond=0)


def format_timestamp(ts: datetime) -> str:
    """Canonical RFC3339 form used in every file this package writes."""
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def epoch_minutes(ts: datetime) -> int:
    return int(ts.timestamp()) // 60


@dataclass(frozen=True)
class CommentRecord:
    """One pseudonymized comment as it appears in the corpus."""

    comment_id: str
    article_id: str
    user_key: str
    created_at: datetime
    article_published_at: datetime
    text: str
    respect_count: int
    parent_id: str | None
    status: Status

    def is_featured(self) -> bool:
        return self.status is Status.FEATURED

    def to_json_dict(self) -> dict:
        return {
            "comment_id": self.comment_id,
            "article_id": self.article_id,
            "user_key": self.user_key,
            "created_at": format_timestamp(self.created_at),
            "article_published_at": format_timestamp(self.article_published_at),
            "text": self.text,
            "respect_count": self.respect_count,
            "parent_id": self.parent_id,
            "status": self.status.value,
        }


_REQUIRED_FIELDS = (
    "comment_id",
    "article_id",
    "user_key",
    "created_at",
    "article_published_at",
    "text",
    "respect_count",
    "status",
)


def record_from_dict(obj: dict) -> CommentRecord:
    """Validate one parsed JSONL object. Raises CorpusError on any violation."""
    if not isinstance(obj, dict):
        raise CorpusError("record is not a JSON object")
    for field in _REQUIRED_FIELDS:
        if field not in obj:
            raise CorpusError(f"missing field {field!r}")
    for field in ("comment_id", "article_id", "user_key", "text"):
        if not isinstance(obj[field], str):
            raise CorpusError(f"field {field!r} must be a string")
    if not obj["comment_id"] or not obj["article_id"]:
        raise CorpusError("comment_id and article_id must be non-empty")
    respect = obj["respect_count"]
    if not isinstance(respect, int) or isinstance(respect, bool) or respect < 0:
        raise CorpusError("respect_count must be a non-negative integer")
    try:
        status = Status(obj["status"])
    except ValueError:
        raise CorpusError(f"unknown status {obj['status']!r}") from None
    parent = obj.get("parent_id")
    if parent is not None and not isinstance(parent, str):
        raise CorpusError("parent_id must be a string or null")
    created = parse_timestamp(obj["created_at"])
    published = parse_timestamp(obj["article_published_at"])
    if created < published:
        raise CorpusError(
            f"comment {obj['comment_id']!r} created before its article was published"
        )
    return CommentRecord(
        comment_id=obj["comment_id"],
        article_id=obj["article_id"],
        user_key=obj["user_key"],
        created_at=created,
        article_published_at=published,
        text=obj["text"],
        respect_count=respect,
        parent_id=parent or None,
        status=status,
    )
