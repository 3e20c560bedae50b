"""Resampling to the 128x128 working size and gradient-field computation.

Distance-matrix images come in at the protein's own size, so everything
downstream funnels through :func:`normalize_size`: small images are
upsampled straight to the working size with cubic convolution, large ones
are first taken to the next power of two and then halved with the Haar
low-low filter until they land on the target.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WORKING_SIZE = 128


class OddDimensionError(ValueError):
    """Haar downsampling needs even height and width."""


def cubic_kernel(x, a: float = -0.5) -> np.ndarray:
    """Keys cubic convolution kernel (Catmull-Rom at a = -0.5).

    Piecewise cubic with support (-2, 2):

        (a+2)|x|^3 - (a+3)|x|^2 + 1          for |x| <= 1
        a|x|^3 - 5a|x|^2 + 8a|x| - 4a        for 1 < |x| < 2
        0                                     otherwise
    """
    x = np.abs(np.asarray(x, dtype=np.float64))
    x2 = x * x
    x3 = x2 * x
    near = (a + 2.0) * x3 - (a + 3.0) * x2 + 1.0
    far = a * x3 - 5.0 * a * x2 + 8.0 * a * x - 4.0 * a
    return np.where(x <= 1.0, near, np.where(x < 2.0, far, 0.0))


def _resample_weights(n_src: int, n_dst: int) -> np.ndarray:
    """(n_dst, n_src) matrix of 1-D cubic convolution weights.

    Output samples sit on half-pixel centers, source index
    s = (i + 0.5) * n_src / n_dst - 0.5, so equal sizes give an exact
    identity.  The four taps around s are clipped into range, which
    replicates edge samples.
    """
    w = np.zeros((n_dst, n_src))
    scale = n_src / n_dst
    for i in range(n_dst):
        s = (i + 0.5) * scale - 0.5
        i0 = int(np.floor(s))
        t = s - i0
        taps = np.arange(i0 - 1, i0 + 3)
        weights = cubic_kernel(t - (taps - i0))
        np.add.at(w[i], np.clip(taps, 0, n_src - 1), weights)
    return w


def bicubic_resize(img: np.ndarray, out_h: int, out_w: int, clamp: bool = True) -> np.ndarray:
    """Separable cubic-convolution resampling (a = -0.5) with replicated edges.

    Parameters
    ----------
    img : 2-D array
    out_h, out_w : target dimensions, each >= 1
    clamp : clip the result into [0, 1] (cubic interpolation can overshoot);
        pass False to see the raw linear resampling.
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2:
        raise ValueError("expected a 2-D image")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError("empty input image")
    if out_h < 1 or out_w < 1:
        raise ValueError("output dimensions must be >= 1")
    wr = _resample_weights(img.shape[0], out_h)
    wc = _resample_weights(img.shape[1], out_w)
    out = wr @ img @ wc.T
    if clamp:
        out = np.clip(out, 0.0, 1.0)
    return out


def haar_downsample(img: np.ndarray) -> np.ndarray:
    """One low-low wavelet level: each output pixel is its 2x2 block mean."""
    img = np.asarray(img, dtype=np.float64)
    h, w = img.shape
    if h % 2 or w % 2:
        raise OddDimensionError(f"dimensions must be even, got {h}x{w}")
    a = img[0::2, 0::2]
    b = img[0::2, 1::2]
    c = img[1::2, 0::2]
    d = img[1::2, 1::2]
    return (a + b + c + d) / 4.0


def normalize_size(img: np.ndarray, size: int = WORKING_SIZE) -> np.ndarray:
    """Bring a square image to size x size.

    Inputs smaller than the target are bicubic-upsampled directly; an input
    already at the target passes through unchanged; larger inputs are
    bicubic-resized up to the next power of two and then Haar-halved down to
    the target.  ``size`` must be a power of two.
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] != img.shape[1]:
        raise ValueError(f"expected a square image, got {img.shape}")
    if size < 2 or size & (size - 1):
        raise ValueError(f"target size must be a power of two >= 2, got {size}")
    n = img.shape[0]
    if n < 2:
        raise ValueError("image side must be >= 2")
    if n < size:
        return bicubic_resize(img, size, size)
    if n == size:
        return img
    p = 1 << (n - 1).bit_length()  # smallest power of two >= n
    out = img if n == p else bicubic_resize(img, p, p)
    while out.shape[0] > size:
        out = haar_downsample(out)
    return out


@dataclass
class GradientField:
    """Per-pixel gradient magnitude and orientation (degrees in [0, 360))."""

    magnitude: np.ndarray
    orientation: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.magnitude.shape


def gradient_field(img: np.ndarray) -> GradientField:
    """Central-difference gradients with replicated borders.

    gx runs along columns, gy along rows; orientation is
    atan2(gy, gx) mapped into [0, 360) degrees and magnitude is
    sqrt(gx^2 + gy^2).  A constant image has zero magnitude everywhere
    (orientation is reported as 0 there).
    """
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] < 2 or img.shape[1] < 2:
        raise ValueError("image must be 2-D and at least 2x2")
    padded = np.pad(img, 1, mode="edge")
    gx = (padded[1:-1, 2:] - padded[1:-1, :-2]) / 2.0
    gy = (padded[2:, 1:-1] - padded[:-2, 1:-1]) / 2.0
    magnitude = np.hypot(gx, gy)
    orientation = np.degrees(np.arctan2(gy, gx)) % 360.0
    # floating-point wrap guard: values like 360 - 1e-14 can round to 360.0
    orientation[orientation >= 360.0] = 0.0
    return GradientField(magnitude=magnitude, orientation=orientation)
