"""Pointwise and windowed baseline filters: gaussian blur, median, histogram EQ."""

import math

import numpy as np
from scipy import ndimage

from .errors import NegativeSigmaError
from .image import Image, quantize, round_half_up


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Discrete gaussian taps over radius ceil(3*sigma), normalized to sum 1."""
    if sigma <= 0:
        return np.array([1.0])
    radius = math.ceil(3.0 * sigma)
    xs = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(xs * xs) / (2.0 * sigma * sigma))
    return k / k.sum()


def gaussian_blur(image: Image, sigma: float) -> Image:
    """Separable gaussian smoothing with edge replication; sigma=0 is identity."""
    if sigma < 0:
        raise NegativeSigmaError(f"sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return Image(image.a)
    k = gaussian_kernel(sigma)
    out = ndimage.convolve1d(image.a, k, axis=1, mode="nearest")
    out = ndimage.convolve1d(out, k, axis=0, mode="nearest")
    return Image(out)


def median_filter(image: Image, radius: int) -> Image:
    """Median over the (2r+1) x (2r+1) window, edge handling by replication."""
    if not isinstance(radius, (int, np.integer)) or radius < 1:
        raise ValueError(f"radius must be an integer >= 1, got {radius!r}")
    size = 2 * int(radius) + 1
    return Image(ndimage.median_filter(image.a, size=size, mode="nearest"))


def histogram_equalize(image: Image) -> Image:
    """Classic 256-bin CDF remap.

    out = round(255 * (cdf(v) - cdf_min) / (N - cdf_min)) where cdf_min is the
    CDF at the lowest occupied bin.  A constant image maps to constant 0 (the
    formula's own edge case: its single level sits at cdf_min).
    """
    q = quantize(image).a.astype(np.int64)
    hist = np.bincount(q.ravel(), minlength=256)
    cdf = np.cumsum(hist)
    n = q.size
    cdf_min = int(cdf[np.flatnonzero(hist)[0]])
    if n == cdf_min:
        return Image(np.zeros_like(q, dtype=np.float64))
    lut = round_half_up(255.0 * (cdf - cdf_min) / (n - cdf_min))
    lut = np.clip(lut, 0.0, 255.0)
    return Image(lut[q])
