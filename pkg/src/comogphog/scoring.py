"""Euclidean scoring between descriptors and linear nearest-structure search."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .features import FeatureVector


class LengthMismatchError(ValueError):
    """Scored vectors must have equal length."""


@dataclass(frozen=True)
class ScoreResult:
    """One ranked hit from a database search."""

    query_id: str
    target_id: str
    distance: float


def _values(f) -> np.ndarray:
    if isinstance(f, FeatureVector):
        return f.values
    return np.asarray(f, dtype=np.float64)


def score(fq, fi) -> float:
    """Euclidean distance between two descriptors (lower means more similar).

    Accepts :class:`FeatureVector` or plain arrays.  Runs in O(length),
    independent of the size of the original proteins.
    """
    a = _values(fq)
    b = _values(fi)
    if a.shape != b.shape:
        raise LengthMismatchError(f"vector shapes differ: {a.shape} vs {b.shape}")
    d = a - b
    return math.sqrt(float(np.dot(d, d)))


def search(db: list[FeatureVector], query, k: int) -> list[ScoreResult]:
    """Rank a database against a query, ascending by score.

    Ties are broken by target id (lexicographic).  Returns the first
    min(k, len(db)) hits.
    """
    if not db:
        raise ValueError("search database is empty")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    ranked = sorted((score(entry, query), entry.id) for entry in db)
    qid = getattr(query, "id", "")
    return [
        ScoreResult(query_id=qid, target_id=tid, distance=d)
        for d, tid in ranked[:k]
    ]
