"""Binary-classifier statistics for pairwise similarity scores.

Treats "same family" (or "same superfamily") as the positive class and a
pairwise score as the discriminant: empirical match-probability curves over
score bins, Matthews correlation sweeps over thresholds, ROC staircases and
trapezoid AUC.  Works both on descriptor stores (scoring all structure
pairs) and on externally computed score files.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .featuredb import FeatureStore
from .structure_io import ScopLabel, family_match, superfamily_match

DEFAULT_EVAL_BINS = 200

# pairs scored per work unit; fixed so results do not depend on the job count
_CHUNK = 8192


class DegenerateRangeError(ValueError):
    """All scores are equal; equal-width bins are undefined."""


class SingleClassError(ValueError):
    """ROC needs at least one match and one non-match."""


class UndefinedRateError(ValueError):
    """Sensitivity/specificity undefined for an empty actual class."""


class MissingLabelError(KeyError):
    """A scored id has no entry in the label table."""


class Polarity(Enum):
    """Reading direction of a score: which end means 'similar'."""

    LOWER_IS_SIMILAR = "lower"
    HIGHER_IS_SIMILAR = "higher"


@dataclass(frozen=True)
class ScoredPair:
    """One structure pair: its score and whether the labels agree."""

    id_a: str
    id_b: str
    score: float
    is_match: bool


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


def _as_arrays(pairs) -> tuple[np.ndarray, np.ndarray]:
    scores = np.fromiter((p.score for p in pairs), dtype=np.float64, count=len(pairs))
    match = np.fromiter((p.is_match for p in pairs), dtype=bool, count=len(pairs))
    return scores, match


def confusion_at_threshold(pairs, threshold: float, polarity: Polarity) -> ConfusionCounts:
    """Tally the 2x2 table at one decision threshold.

    With LOWER_IS_SIMILAR a pair is predicted a match iff score <= threshold;
    with HIGHER_IS_SIMILAR iff score >= threshold.
    """
    if not pairs:
        raise ValueError("no pairs to tally")
    scores, match = _as_arrays(pairs)
    if polarity is Polarity.LOWER_IS_SIMILAR:
        pred = scores <= threshold
    else:
        pred = scores >= threshold
    tp = int(np.count_nonzero(pred & match))
    fp = int(np.count_nonzero(pred & ~match))
    fn = int(np.count_nonzero(~pred & match))
    tn = len(pairs) - tp - fp - fn
    return ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn)


def mcc(c: ConfusionCounts) -> float:
    """Matthews correlation coefficient.

    (tp*tn - fp*fn) / sqrt((tp+fp)(tp+fn)(tn+fp)(tn+fn)), defined as 0
    whenever any marginal of the table is empty.
    """
    d1 = c.tp + c.fp
    d2 = c.tp + c.fn
    d3 = c.tn + c.fp
    d4 = c.tn + c.fn
    if 0 in (d1, d2, d3, d4):
        return 0.0
    num = c.tp * c.tn - c.fp * c.fn
    return num / math.sqrt(float(d1) * d2 * d3 * d4)


def mcc_curve(pairs, polarity: Polarity, thresholds) -> list[tuple[float, float]]:
    """MCC swept over thresholds, via one sort and cumulative tallies.

    Each (threshold, mcc) point agrees exactly with
    ``mcc(confusion_at_threshold(...))``; the sweep just avoids re-scanning
    all pairs per threshold.
    """
    if not pairs:
        raise ValueError("no pairs to sweep")
    scores, match = _as_arrays(pairs)
    order = np.argsort(scores, kind="stable")
    s = scores[order]
    cum_m = np.cumsum(match[order])
    n = len(pairs)
    m_total = int(cum_m[-1])
    out: list[tuple[float, float]] = []
    for t in np.asarray(thresholds, dtype=np.float64):
        if polarity is Polarity.LOWER_IS_SIMILAR:
            npos = int(np.searchsorted(s, t, side="right"))
            tp = int(cum_m[npos - 1]) if npos else 0
        else:
            lo = int(np.searchsorted(s, t, side="left"))
            npos = n - lo
            tp = m_total - (int(cum_m[lo - 1]) if lo else 0)
        fp = npos - tp
        fn = m_total - tp
        tn = n - m_total - fp
        out.append((float(t), mcc(ConfusionCounts(tp=tp, tn=tn, fp=fp, fn=fn))))
    return out


def pvalue_curve(pairs, polarity: Polarity, num_bins: int) -> list[tuple[float, float, int]]:
    """Empirical per-bin match probability over equal-width score bins.

    Returns (bin_center, probability, pair_count) per bin.  The probability
    is the raw fraction of match pairs among the pairs landing in the bin;
    empty bins carry count 0 and NaN and are never interpolated.  ``polarity``
    only documents the reading direction (binning is polarity-agnostic).
    """
    del polarity
    if num_bins < 2:
        raise ValueError(f"need at least 2 bins, got {num_bins}")
    if not pairs:
        raise ValueError("no pairs to bin")
    scores, match = _as_arrays(pairs)
    lo = float(scores.min())
    hi = float(scores.max())
    if lo == hi:
        raise DegenerateRangeError("all scores are equal; bins are undefined")
    width = (hi - lo) / num_bins
    idx = np.minimum(((scores - lo) / width).astype(np.int64), num_bins - 1)
    total = np.bincount(idx, minlength=num_bins)
    matched = np.bincount(idx[match], minlength=num_bins)
    out: list[tuple[float, float, int]] = []
    for i in range(num_bins):
        center = lo + (i + 0.5) * width
        if total[i]:
            out.append((center, matched[i] / total[i], int(total[i])))
        else:
            out.append((center, float("nan"), 0))
    return out


def default_thresholds(pairs, num_bins: int = DEFAULT_EVAL_BINS) -> list[float]:
    """Centers of the equal-width score bins (same grid as the match-probability curve)."""
    scores, _ = _as_arrays(pairs)
    lo = float(scores.min())
    hi = float(scores.max())
    if lo == hi:
        raise DegenerateRangeError("all scores are equal; bins are undefined")
    width = (hi - lo) / num_bins
    return [lo + (i + 0.5) * width for i in range(num_bins)]


def roc_curve(pairs, polarity: Polarity) -> list[tuple[float, float]]:
    """(fpr, tpr) staircase swept over every distinct score.

    Starts at exactly (0, 0) and ends at exactly (1, 1); both coordinates
    are monotone non-decreasing.  Raises :class:`SingleClassError` when all
    pairs are matches or all are non-matches.
    """
    if not pairs:
        raise ValueError("no pairs to sweep")
    scores, match = _as_arrays(pairs)
    n_match = int(match.sum())
    n_non = len(pairs) - n_match
    if n_match == 0 or n_non == 0:
        raise SingleClassError("need at least one match and one non-match")
    if polarity is Polarity.LOWER_IS_SIMILAR:
        order = np.argsort(scores, kind="stable")
    else:
        order = np.argsort(-scores, kind="stable")
    s = scores[order]
    m = match[order]
    # index of the last pair in each group of equal scores
    ends = np.append(np.nonzero(np.diff(s) != 0)[0], len(s) - 1)
    cum_m = np.cumsum(m)
    points = [(0.0, 0.0)]
    for e in ends:
        tp = int(cum_m[e])
        fp = int(e) + 1 - tp
        points.append((fp / n_non, tp / n_match))
    if points[-1] != (1.0, 1.0):
        points.append((1.0, 1.0))
    return points


def auc(curve) -> float:
    """Trapezoid area under an ROC staircase (0.5 means chance ranking)."""
    area = 0.0
    for (x0, y0), (x1, y1) in zip(curve, curve[1:]):
        area += (x1 - x0) * (y0 + y1) / 2.0
    return area


def sensitivity_specificity(c: ConfusionCounts) -> tuple[float, float]:
    """(tp/(tp+fn), tn/(tn+fp)); raises when either actual class is empty."""
    if c.tp + c.fn == 0 or c.tn + c.fp == 0:
        raise UndefinedRateError("empty actual-positive or actual-negative class")
    return c.tp / (c.tp + c.fn), c.tn / (c.tn + c.fp)


def _match_fn(level: str):
    if level == "family":
        return family_match
    if level == "superfamily":
        return superfamily_match
    raise ValueError(f"unknown match level {level!r}")


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_from_index(k: int, n: int) -> tuple[int, int]:
    """Decode flat index k in [0, n*(n-1)/2) to the k-th pair (i, j), i < j.

    Pairs are ordered lexicographically: (0,1), (0,2), ..., (1,2), ...
    Integer binary search keeps the decoding exact for any n.
    """
    if not 0 <= k < pair_count(n):
        raise ValueError(f"pair index {k} out of range for n={n}")
    lo, hi = 0, n - 1
    while lo < hi:  # largest i whose preceding rows hold <= k pairs
        mid = (lo + hi + 1) // 2
        if mid * (n - 1) - mid * (mid - 1) // 2 <= k:
            lo = mid
        else:
            hi = mid - 1
    before = lo * (n - 1) - lo * (lo - 1) // 2
    return lo, lo + 1 + (k - before)


def sample_pair_indices(total: int, count: int, seed: int) -> list[int]:
    """Deterministic uniform sample without replacement (Floyd), sorted."""
    if count >= total:
        return list(range(total))
    rng = random.Random(seed)
    chosen: set[int] = set()
    for j in range(total - count, total):
        t = rng.randrange(j + 1)
        chosen.add(t if t not in chosen else j)
    return sorted(chosen)


_PAIR_MAT: np.ndarray | None = None
_PAIR_N = 0


def _init_pair_worker(mat: np.ndarray, n: int) -> None:
    global _PAIR_MAT, _PAIR_N
    _PAIR_MAT = mat
    _PAIR_N = n


def _pair_worker(chunk: list[int]) -> np.ndarray:
    ij = [pair_from_index(k, _PAIR_N) for k in chunk]
    ia = np.fromiter((i for i, _ in ij), dtype=np.int64, count=len(ij))
    ib = np.fromiter((j for _, j in ij), dtype=np.int64, count=len(ij))
    d = _PAIR_MAT[ia] - _PAIR_MAT[ib]
    return np.sqrt((d * d).sum(axis=1))


def score_pairs(
    store: FeatureStore,
    labels: dict[str, ScopLabel],
    level: str = "family",
    sample: int | None = None,
    seed: int = 0,
    jobs: int = 1,
) -> list[ScoredPair]:
    """Score labeled structure pairs from a descriptor store.

    All n*(n-1)/2 unordered pairs by default; ``sample`` draws that many
    pairs with a seeded deterministic sampler.  Entries are paired in id
    order and results are identical for any ``jobs`` setting.
    """
    entries = sorted(store.entries, key=lambda e: e.id)
    missing = [e.id for e in entries if e.id not in labels]
    if missing:
        raise MissingLabelError(
            f"{len(missing)} ids without labels, e.g. {', '.join(missing[:5])}"
        )
    if len(entries) < 2:
        raise ValueError("need at least two entries to form pairs")
    match = _match_fn(level)
    n = len(entries)
    total = pair_count(n)
    if sample is not None and sample < total:
        ks = sample_pair_indices(total, sample, seed)
    else:
        ks = list(range(total))
    mat = np.stack([e.values for e in entries])
    chunks = [ks[i : i + _CHUNK] for i in range(0, len(ks), _CHUNK)]
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(
            max_workers=jobs, initializer=_init_pair_worker, initargs=(mat, n)
        ) as pool:
            dists = list(pool.map(_pair_worker, chunks))
    else:
        _init_pair_worker(mat, n)
        dists = [_pair_worker(c) for c in chunks]
    out: list[ScoredPair] = []
    for chunk, d in zip(chunks, dists):
        for k, dist in zip(chunk, d):
            i, j = pair_from_index(k, n)
            a, b = entries[i], entries[j]
            out.append(
                ScoredPair(
                    id_a=a.id,
                    id_b=b.id,
                    score=float(dist),
                    is_match=match(labels[a.id], labels[b.id]),
                )
            )
    return out


def read_score_file(
    text: str, labels: dict[str, ScopLabel], level: str = "family"
) -> list[ScoredPair]:
    """Parse ``id_a,id_b,score`` rows (optional header, # comments) into pairs.

    Every id must appear in the label table; otherwise
    :class:`MissingLabelError` is raised.
    """
    match = _match_fn(level)
    pairs: list[ScoredPair] = []
    first = True
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) < 3:
            raise ValueError(f"score row needs id_a,id_b,score: {raw!r}")
        try:
            s = float(parts[2])
        except ValueError:
            if first:
                first = False
                continue
            raise
        first = False
        a, b = parts[0], parts[1]
        for sid in (a, b):
            if sid not in labels:
                raise MissingLabelError(f"no label for id {sid!r}")
        pairs.append(
            ScoredPair(id_a=a, id_b=b, score=s, is_match=match(labels[a], labels[b]))
        )
    return pairs


def write_curve_csv(path, metric: str, polarity, rows) -> None:
    """Write (threshold_or_bin, value, count) rows under a one-line header.

    The header's first field names the metric and the score polarity, e.g.
    ``mcc:lower,value,count``.
    """
    pol = polarity.value if isinstance(polarity, Polarity) else str(polarity)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"{metric}:{pol},value,count\n")
        for x, value, count in rows:
            fh.write(f"{x:.17g},{value:.17g},{count}\n")
