"""Durable moderator-pick storage: append-only JSONL with compaction.

One JSON object per line, strictly appended under a lock, so concurrent
submissions are serialized and a crash can at worst lose the final partial
line (which the loader skips). The effective state is the last event per
(article_id, comment_id, rater_id): moderators may change their mind.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from modq.errors import ModqError


class PickLogError(ModqError):
    pass


@dataclass(frozen=True)
class PickEvent:
    article_id: str
    comment_id: str
    rater_id: str
    decision: bool
    at: str  # RFC3339 UTC, e.g. 2026-08-22T09:15:30Z

    def key(self) -> tuple[str, str, str]:
        return (self.article_id, self.comment_id, self.rater_id)

    def to_json_dict(self) -> dict:
        return {
            "article_id": self.article_id,
            "comment_id": self.comment_id,
            "rater_id": self.rater_id,
            "decision": self.decision,
            "at": self.at,
        }


def _event_from_dict(d: dict) -> PickEvent:
    try:
        event = PickEvent(
            article_id=d["article_id"],
            comment_id=d["comment_id"],
            rater_id=d["rater_id"],
            decision=d["decision"],
            at=d["at"],
        )
    except (KeyError, TypeError) as exc:
        raise PickLogError(f"malformed pick event: {exc}") from exc
    for field in ("article_id", "comment_id", "rater_id", "at"):
        if not isinstance(getattr(event, field), str) or not getattr(event, field):
            raise PickLogError(f"pick event field {field} must be a non-empty string")
    if not isinstance(event.decision, bool):
        raise PickLogError("pick event decision must be a boolean")
    return event


class PickLog:
    """Append-only pick journal bound to one file path."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._effective: dict[tuple[str, str, str], PickEvent] = {}
        self.skipped_lines = 0
        self._replay()

    def _replay(self) -> None:
        if not self.path.exists():
            return
        with self.path.open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    event = _event_from_dict(json.loads(line))
                except (json.JSONDecodeError, PickLogError):
                    self.skipped_lines += 1
                    continue
                self._effective[event.key()] = event

    def append(self, event: PickEvent) -> None:
        line = json.dumps(event.to_json_dict(), sort_keys=True, ensure_ascii=False)
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")
                fh.flush()
            self._effective[event.key()] = event

    def effective(self) -> list[PickEvent]:
        """Last event per (article, comment, rater), in a stable order."""
        with self._lock:
            return sorted(self._effective.values(), key=PickEvent.key)

    def events_for_articles(self, article_ids=None) -> list[PickEvent]:
        events = self.effective()
        if article_ids is None:
            return events
        wanted = set(article_ids)
        return [e for e in events if e.article_id in wanted]

    def compact(self) -> int:
        """Rewrite the file keeping only effective events; returns count."""
        with self._lock:
            events = sorted(self._effective.values(), key=PickEvent.key)
            tmp = self.path.with_suffix(self.path.suffix + ".tmp")
            with tmp.open("w", encoding="utf-8") as fh:
                for event in events:
                    fh.write(
                        json.dumps(
                            event.to_json_dict(), sort_keys=True, ensure_ascii=False
                        )
                        + "\n"
                    )
            tmp.replace(self.path)
            return len(events)

    def __len__(self) -> int:
        with self._lock:
            return len(self._effective)
