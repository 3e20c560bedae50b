"""Pairwise CA distance matrices and their normalized grayscale images."""

from __future__ import annotations

import numpy as np

from .structure_io import CaTrace


def distance_matrix(trace: CaTrace) -> np.ndarray:
    """n x n Euclidean distances between CA coordinates, in Angstrom.

    The result is symmetric with a zero diagonal and is invariant under
    rigid motion of the input coordinates.
    """
    coords = trace.coords
    diff = coords[:, None, :] - coords[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def to_gray(dist: np.ndarray) -> np.ndarray:
    """Scale a distance matrix into [0, 1] by its maximum entry.

    Small distances map toward black (0) and the largest distance maps to
    exactly 1.  An all-zero matrix stays all-zero.
    """
    dist = np.asarray(dist, dtype=np.float64)
    peak = dist.max()
    if peak <= 0.0:
        return np.zeros_like(dist)
    return dist / peak


def write_pgm(img: np.ndarray, path) -> None:
    """Dump a [0, 1] grayscale image as a binary 8-bit PGM (debug aid).

    Intensities are rounded to the nearest of 256 levels.
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError("expected a 2-D image")
    h, w = img.shape
    data = np.floor(img * 255.0 + 0.5).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        fh.write(data.tobytes())
