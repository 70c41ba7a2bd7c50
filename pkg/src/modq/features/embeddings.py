"""Precomputed per-comment embedding vectors, read from JSONL or binary files.

Binary layout (little-endian): 8-byte magic b"MODQEMB1", uint32 dim,
uint64 count, then per record uint16 id-length, the comment id in UTF-8,
and dim float64 values. README documents the same layout for producers.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from modq.errors import FeatureError

MAGIC = b"MODQEMB1"


@dataclass
class EmbeddingTable:
    dim: int
    vectors: dict[str, np.ndarray]

    def __len__(self) -> int:
        return len(self.vectors)

    def vector(self, comment_id: str) -> np.ndarray:
        vec = self.vectors.get(comment_id)
        if vec is None:
            raise FeatureError(f"no embedding vector for comment {comment_id!r}")
        return vec


def load_embeddings(path: str | Path) -> EmbeddingTable:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise FeatureError(f"cannot read embeddings {path}: {exc}") from exc
    if raw[: len(MAGIC)] == MAGIC:
        return _parse_binary(raw, path)
    return _parse_jsonl(raw, path)


def _parse_jsonl(raw: bytes, path: Path) -> EmbeddingTable:
    vectors: dict[str, np.ndarray] = {}
    dim: int | None = None
    for lineno, line in enumerate(raw.decode("utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            cid = obj["comment_id"]
            vec = np.asarray(obj["vector"], dtype=np.float64)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise FeatureError(f"{path}:{lineno}: bad embedding record: {exc}") from exc
        if vec.ndim != 1 or vec.size == 0:
            raise FeatureError(f"{path}:{lineno}: vector must be a non-empty list")
        if not np.all(np.isfinite(vec)):
            raise FeatureError(f"{path}:{lineno}: vector has non-finite values")
        if dim is None:
            dim = vec.size
        elif vec.size != dim:
            raise FeatureError(
                f"{path}:{lineno}: vector length {vec.size} != first length {dim}"
            )
        if cid in vectors:
            raise FeatureError(f"{path}:{lineno}: duplicate comment_id {cid!r}")
        vectors[cid] = vec
    if dim is None:
        raise FeatureError(f"{path}: no embedding records")
    return EmbeddingTable(dim=dim, vectors=vectors)


def _parse_binary(raw: bytes, path: Path) -> EmbeddingTable:
    header = struct.Struct("<IQ")
    offset = len(MAGIC)
    try:
        dim, count = header.unpack_from(raw, offset)
        offset += header.size
        vectors: dict[str, np.ndarray] = {}
        for _ in range(count):
            (id_len,) = struct.unpack_from("<H", raw, offset)
            offset += 2
            cid = raw[offset : offset + id_len].decode("utf-8")
            offset += id_len
            vec = np.frombuffer(raw, dtype="<f8", count=dim, offset=offset).copy()
            offset += 8 * dim
            if cid in vectors:
                raise FeatureError(f"{path}: duplicate comment_id {cid!r}")
            vectors[cid] = vec
    except (struct.error, UnicodeDecodeError, ValueError) as exc:
        raise FeatureError(f"{path}: truncated or corrupt binary embeddings") from exc
    if offset != len(raw):
        raise FeatureError(f"{path}: trailing bytes after {count} records")
    if not vectors:
        raise FeatureError(f"{path}: no embedding records")
    return EmbeddingTable(dim=dim, vectors=vectors)


def write_embeddings_jsonl(table: EmbeddingTable, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for cid in sorted(table.vectors):
            fh.write(
                json.dumps(
                    {"comment_id": cid, "vector": table.vectors[cid].tolist()},
                    sort_keys=True,
                )
                + "\n"
            )


def write_embeddings_binary(table: EmbeddingTable, path: str | Path) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<IQ", table.dim, len(table.vectors)))
        for cid in sorted(table.vectors):
            encoded = cid.encode("utf-8")
            fh.write(struct.pack("<H", len(encoded)))
            fh.write(encoded)
            fh.write(table.vectors[cid].astype("<f8").tobytes())
