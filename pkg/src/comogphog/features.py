"""Oriented-gradient descriptors of distance-matrix images.

Two blocks make up the fixed 1024-entry descriptor:

* a 16x16 co-occurrence matrix of quantized gradient orientations over
  right and down neighbor offsets (256 entries), and
* magnitude-weighted 9-bin orientation histograms over a 4-level quad
  tree of the image (85 cells, 765 values, zero-padded to 768 so the
  combined vector keeps its fixed size).

Both blocks are L1-normalized independently; a gradient-free image yields
an all-zero block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distmat import distance_matrix, to_gray
from .imageops import GradientField, gradient_field, normalize_size
from .structure_io import CaTrace

COMOGRAD_BINS = 16
PHOG_BINS = 9
PHOG_LEVELS = 3
IMAGE_SIZE = 128
COMOGRAD_LENGTH = COMOGRAD_BINS * COMOGRAD_BINS  # 256
PHOG_LENGTH = 768  # padded pyramid block; see phog()
FEATURE_LENGTH = COMOGRAD_LENGTH + PHOG_LENGTH  # 1024

# gradient magnitudes at or below this are treated as orientation-free
MAGNITUDE_EPS = 1e-12

# ordered neighbor offsets (row, col): right and down
_CO_OFFSETS = ((0, 1), (1, 0))


def phog_cells(levels: int = PHOG_LEVELS) -> int:
    """Number of quad-tree cells over levels 0..levels: 1 + 4 + ... + 4^levels."""
    return (4 ** (levels + 1) - 1) // 3


@dataclass
class QuantizedOrientations:
    """Orientation bin indices plus a validity mask.

    ``bin`` holds indices in [0, bins); ``valid`` marks pixels whose gradient
    magnitude exceeds the epsilon (orientation is meaningless elsewhere).
    """

    bins: int
    bin: np.ndarray
    valid: np.ndarray


def quantize_orientations(field: GradientField, bins: int) -> QuantizedOrientations:
    """Quantize orientations into equal angular bins of 360/bins degrees.

    The default counts give 22.5-degree bins (16) and 40-degree bins (9).
    Bin index is floor(orientation / width), clipped to bins - 1 as a guard
    against floating-point edge cases; the input orientation range [0, 360)
    already maps inside [0, bins).
    """
    if bins < 1:
        raise ValueError(f"bin count must be >= 1, got {bins}")
    width = 360.0 / bins
    idx = np.floor(field.orientation / width).astype(np.int64)
    np.minimum(idx, bins - 1, out=idx)
    valid = field.magnitude > MAGNITUDE_EPS
    return QuantizedOrientations(bins=bins, bin=idx, valid=valid)


def comograd(quant: QuantizedOrientations) -> np.ndarray:
    """Co-occurrence of orientation bins at right and down neighbor offsets.

    Counts ordered pairs (pixel, neighbor) where both pixels are valid,
    accumulates them into a bins x bins matrix C[bin(p)][bin(p+offset)],
    L1-normalizes, and returns the row-major flattening (all-zero when no
    valid pairs exist).
    """
    b = quant.bin
    v = quant.valid
    n = quant.bins
    counts = np.zeros(n * n, dtype=np.float64)
    h, w = b.shape
    for dr, dc in _CO_OFFSETS:
        src = b[: h - dr, : w - dc]
        dst = b[dr:, dc:]
        ok = v[: h - dr, : w - dc] & v[dr:, dc:]
        if ok.any():
            flat = src[ok] * n + dst[ok]
            counts += np.bincount(flat, minlength=n * n).astype(np.float64)
    total = counts.sum()
    if total > 0.0:
        counts /= total
    return counts


def phog(
    field: GradientField,
    bins: int = PHOG_BINS,
    levels: int = PHOG_LEVELS,
    length: int | None = PHOG_LENGTH,
) -> np.ndarray:
    """Magnitude-weighted orientation histograms over a quad tree.

    Level l splits the image into 2^l x 2^l equal cells; cells are visited
    breadth-first (level 0 first) in row-major order and each contributes a
    ``bins``-entry histogram of quantized orientations weighted by gradient
    magnitude over valid pixels.  The concatenation is L1-normalized as one
    block (all-zero if the total weight is 0).

    The default geometry gives 85 cells x 9 bins = 765 histogram values; the
    tail is zero-padded to ``length`` (768 by default) so the combined
    descriptor keeps its fixed 1024 size.  Pass ``length=None`` for the raw
    concatenation.
    """
    size = field.shape[0]
    if field.shape[0] != field.shape[1]:
        raise ValueError(f"gradient field must be square, got {field.shape}")
    if size % (1 << levels):
        raise ValueError(f"side {size} not divisible by 2^{levels}")
    quant = quantize_orientations(field, bins)
    weight = np.where(quant.valid, field.magnitude, 0.0)
    cells: list[np.ndarray] = []
    for level in range(levels + 1):
        step = size >> level
        for r in range(0, size, step):
            for c in range(0, size, step):
                wb = weight[r : r + step, c : c + step].ravel()
                bb = quant.bin[r : r + step, c : c + step].ravel()
                cells.append(np.bincount(bb, weights=wb, minlength=bins))
    hist = np.concatenate(cells)
    if length is not None:
        if length < hist.size:
            raise ValueError(f"length {length} < {hist.size} histogram values")
        hist = np.concatenate([hist, np.zeros(length - hist.size)])
    total = hist.sum()
    if total > 0.0:
        hist /= total
    return hist


@dataclass
class FeatureVector:
    """Fixed-length descriptor: co-occurrence block then pyramid block."""

    id: str
    values: np.ndarray


def extract_features(
    trace: CaTrace,
    comograd_bins: int = COMOGRAD_BINS,
    phog_bins: int = PHOG_BINS,
    phog_levels: int = PHOG_LEVELS,
    image_size: int = IMAGE_SIZE,
) -> FeatureVector:
    """Full pipeline from CA trace to descriptor.

    distance matrix -> grayscale -> resize to image_size -> gradient field
    -> co-occurrence block + pyramid block.  With default parameters the
    result always has exactly 1024 entries, independent of protein size.
    """
    gray = to_gray(distance_matrix(trace))
    img = normalize_size(gray, image_size)
    # A distance-matrix image is symmetric, and resampling with identical
    # row/column weights keeps it so in exact arithmetic; restore the
    # symmetry the floating-point matmul loses.  Diagonal pixels then keep
    # gx == gy exactly, so their 45/225-degree orientations quantize
    # identically for rigidly moved copies of the same structure.
    img = (img + img.T) / 2.0
    field = gradient_field(img)
    co = comograd(quantize_orientations(field, comograd_bins))
    canonical = (phog_bins, phog_levels) == (PHOG_BINS, PHOG_LEVELS)
    ph = phog(
        field,
        bins=phog_bins,
        levels=phog_levels,
        length=PHOG_LENGTH if canonical else None,
    )
    return FeatureVector(id=trace.id, values=np.concatenate([co, ph]))
