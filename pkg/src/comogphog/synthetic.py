"""Synthetic CA traces and rigid-motion helpers for experiments and tests."""

from __future__ import annotations

import numpy as np

from .structure_io import CaTrace

HELIX_RADIUS = 2.3  # Angstrom
HELIX_RISE = 1.5  # Angstrom per residue
HELIX_TURN = 100.0  # degrees per residue
STRAND_RISE = 3.4  # Angstrom per residue along the strand axis
STRAND_WOBBLE = 0.95  # zigzag amplitude
CA_STEP = 3.8  # typical consecutive-CA distance


def helix_trace(n: int, trace_id: str = "helix", jitter: float = 0.0, seed: int = 0) -> CaTrace:
    """Ideal alpha-helical CA trace, optionally with Gaussian coordinate noise."""
    t = np.arange(n, dtype=np.float64)
    theta = np.radians(HELIX_TURN) * t
    coords = np.stack(
        [HELIX_RADIUS * np.cos(theta), HELIX_RADIUS * np.sin(theta), HELIX_RISE * t],
        axis=1,
    )
    if jitter > 0.0:
        rng = np.random.default_rng(seed)
        coords = coords + rng.normal(scale=jitter, size=coords.shape)
    return CaTrace(id=trace_id, coords=coords)


def extended_trace(n: int, trace_id: str = "strand", jitter: float = 0.0, seed: int = 0) -> CaTrace:
    """Extended (strand-like) zigzag CA trace."""
    t = np.arange(n, dtype=np.float64)
    coords = np.stack(
        [STRAND_RISE * t, STRAND_WOBBLE * np.where(t % 2 == 0, 1.0, -1.0), np.zeros(n)],
        axis=1,
    )
    if jitter > 0.0:
        rng = np.random.default_rng(seed)
        coords = coords + rng.normal(scale=jitter, size=coords.shape)
    return CaTrace(id=trace_id, coords=coords)


def random_walk_trace(n: int, trace_id: str = "walk", seed: int = 0, step: float = CA_STEP) -> CaTrace:
    """Random chain with fixed step length (crude compact-protein stand-in)."""
    rng = np.random.default_rng(seed)
    steps = rng.normal(size=(n - 1, 3))
    steps /= np.linalg.norm(steps, axis=1, keepdims=True)
    coords = np.vstack([np.zeros(3), np.cumsum(step * steps, axis=0)])
    return CaTrace(id=trace_id, coords=coords)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniformly distributed proper rotation matrix (QR of a Gaussian matrix)."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def transform(trace: CaTrace, rotation=None, translation=None, trace_id: str | None = None) -> CaTrace:
    """Apply a rigid motion (rotation then translation) to a trace."""
    coords = trace.coords
    if rotation is not None:
        coords = coords @ np.asarray(rotation, dtype=np.float64).T
    if translation is not None:
        coords = coords + np.asarray(translation, dtype=np.float64)
    return CaTrace(id=trace.id if trace_id is None else trace_id, coords=coords)


def ca_trace_to_pdb(trace: CaTrace) -> str:
    """Minimal single-chain PDB text with one CA ATOM record per residue.

    Coordinates are written at the standard 3-decimal precision, so values
    must fit the 8-character fields (|coordinate| < 10000).
    """
    lines = []
    for i, (x, y, z) in enumerate(trace.coords, start=1):
        lines.append(
            f"ATOM  {i:5d}  CA  GLY A{i:4d}    "
            f"{x:8.3f}{y:8.3f}{z:8.3f}  1.00  0.00           C"
        )
    lines.append("END")
    return "\n".join(lines) + "\n"
