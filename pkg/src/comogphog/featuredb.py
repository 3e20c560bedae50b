"""Binary persistence for descriptor collections plus directory ingestion.

Store layout (little-endian throughout):

    magic  b"CMGP"
    u32    format version (currently 1)
    u32    entry count
    per entry:
        u16    id byte length
        bytes  id (UTF-8)
        f64[1024]  descriptor values

Raw float64 bytes round-trip bit-exactly.
"""

from __future__ import annotations

import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .features import FEATURE_LENGTH, FeatureVector, extract_features
from .structure_io import parse_structure

MAGIC = b"CMGP"
VERSION = 1

_HEADER = struct.Struct("<4sII")
_IDLEN = struct.Struct("<H")
_VEC_BYTES = FEATURE_LENGTH * 8


class BadMagicError(ValueError):
    """File does not start with the feature-store magic bytes."""


class UnsupportedVersionError(ValueError):
    """Feature store written by an unknown format version."""


class CorruptEntryError(ValueError):
    """Feature store ends mid-entry or carries trailing bytes."""


class EmptyCorpusError(ValueError):
    """Ingestion found no parseable structure files."""


@dataclass
class FeatureStore:
    """An ordered collection of descriptors with unique ids."""

    version: int = VERSION
    entries: list[FeatureVector] = field(default_factory=list)

    def ids(self) -> list[str]:
        return [e.id for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def _check_store(store: FeatureStore) -> None:
    seen: set[str] = set()
    for e in store.entries:
        if e.id in seen:
            raise ValueError(f"duplicate id {e.id!r} in store")
        seen.add(e.id)
        if e.values.shape != (FEATURE_LENGTH,):
            raise ValueError(
                f"{e.id!r}: vector has {e.values.size} entries, store format "
                f"v{VERSION} holds exactly {FEATURE_LENGTH}"
            )


def save_store(store: FeatureStore, path) -> None:
    """Write a store; raises ValueError on duplicate ids or wrong vector length."""
    _check_store(store)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, store.version, len(store.entries)))
        for e in store.entries:
            idb = e.id.encode("utf-8")
            fh.write(_IDLEN.pack(len(idb)))
            fh.write(idb)
            fh.write(np.ascontiguousarray(e.values, dtype="<f8").tobytes())


def load_store(path) -> FeatureStore:
    """Read a store back, verifying magic, version and entry framing."""
    blob = Path(path).read_bytes()
    if len(blob) < len(MAGIC) or blob[: len(MAGIC)] != MAGIC:
        raise BadMagicError(f"{path}: not a feature store")
    if len(blob) < _HEADER.size:
        raise CorruptEntryError(f"{path}: truncated header")
    _, version, count = _HEADER.unpack_from(blob, 0)
    if version != VERSION:
        raise UnsupportedVersionError(f"{path}: unsupported store version {version}")
    pos = _HEADER.size
    entries: list[FeatureVector] = []
    for _ in range(count):
        if pos + _IDLEN.size > len(blob):
            raise CorruptEntryError(f"{path}: truncated id length")
        (idlen,) = _IDLEN.unpack_from(blob, pos)
        pos += _IDLEN.size
        if pos + idlen + _VEC_BYTES > len(blob):
            raise CorruptEntryError(f"{path}: truncated entry")
        sid = blob[pos : pos + idlen].decode("utf-8")
        pos += idlen
        values = np.frombuffer(blob[pos : pos + _VEC_BYTES], dtype="<f8").astype(
            np.float64
        )
        pos += _VEC_BYTES
        entries.append(FeatureVector(id=sid, values=values))
    if pos != len(blob):
        raise CorruptEntryError(f"{path}: trailing bytes after last entry")
    return FeatureStore(version=version, entries=entries)


def export_csv(store: FeatureStore, path) -> None:
    """Write ``id,v0,...,v1023`` rows at full round-trip precision (export only)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for e in store.entries:
            fh.write(e.id + "," + ",".join(format(v, ".17g") for v in e.values) + "\n")


def _extract_file(path: str, structure_id: str, kwargs: dict) -> tuple:
    """Worker: returns (id, values, None) or (id, None, reason)."""
    try:
        text = Path(path).read_text(errors="replace")
        trace = parse_structure(text, structure_id=structure_id)
        return structure_id, extract_features(trace, **kwargs).values, None
    except OSError:
        raise
    except Exception as exc:  # parse or shape problems: skip and report
        return structure_id, None, f"{type(exc).__name__}: {exc}"


def ingest_dir(
    dir_path,
    labels: dict | None = None,
    jobs: int = 1,
    report=None,
    **extract_kwargs,
) -> FeatureStore:
    """Extract descriptors for every structure file under a directory.

    Entries take the file stem as id and come out sorted by id, so the
    resulting store bytes are identical across runs and across ``jobs``
    settings.  Files that fail to parse are skipped and reported through
    ``report(name, status, detail)``, as are duplicate stems and (when a
    label map is given) files without a label.

    Raises :class:`EmptyCorpusError` when nothing survives.
    """
    root = Path(dir_path)
    if not root.is_dir():
        raise NotADirectoryError(f"{dir_path} is not a directory")
    say = report or (lambda name, status, detail: None)
    tasks: list[tuple[Path, str]] = []
    seen: set[str] = set()
    for p in sorted(root.iterdir()):
        if not p.is_file():
            continue
        sid = p.stem
        if sid in seen:
            say(p.name, "skip", "duplicate id")
            continue
        if labels is not None and sid not in labels:
            say(p.name, "skip", "no label")
            continue
        seen.add(sid)
        tasks.append((p, sid))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_extract_file, str(p), sid, extract_kwargs)
                for p, sid in tasks
            ]
            results = [f.result() for f in futures]
    else:
        results = [_extract_file(str(p), sid, extract_kwargs) for p, sid in tasks]
    entries: list[FeatureVector] = []
    for sid, values, err in results:
        if err is None:
            entries.append(FeatureVector(id=sid, values=values))
            say(sid, "ok", "")
        else:
            say(sid, "skip", err)
    if not entries:
        raise EmptyCorpusError(f"no parseable structure files in {root}")
    entries.sort(key=lambda e: e.id)
    return FeatureStore(entries=entries)
