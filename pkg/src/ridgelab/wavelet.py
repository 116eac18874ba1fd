"""Orthonormal 2-D Haar transform and VisuShrink hard thresholding.

The 1-D analysis pair is (a, d) = ((x0 + x1)/sqrt(2), (x0 - x1)/sqrt(2)),
applied to rows first and then to columns, so energy is preserved exactly
(up to float rounding) and the inverse is the transpose.

Subband naming: the first letter is the row-direction (horizontal) filter,
the second the column-direction one; HH is the diagonal detail band used by
the median noise-sigma estimator.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import IndivisibleDimsError, NegativeSigmaError
from .image import Image

_SQRT2 = math.sqrt(2.0)
VISU_LEVELS = 3


def _dwt_level(a: np.ndarray):
    lo = (a[:, 0::2] + a[:, 1::2]) / _SQRT2
    hi = (a[:, 0::2] - a[:, 1::2]) / _SQRT2
    ll = (lo[0::2, :] + lo[1::2, :]) / _SQRT2
    lh = (lo[0::2, :] - lo[1::2, :]) / _SQRT2
    hl = (hi[0::2, :] + hi[1::2, :]) / _SQRT2
    hh = (hi[0::2, :] - hi[1::2, :]) / _SQRT2
    return ll, lh, hl, hh


def _idwt_level(ll, lh, hl, hh):
    lo = np.empty((ll.shape[0] * 2, ll.shape[1]))
    hi = np.empty_like(lo)
    lo[0::2, :] = (ll + lh) / _SQRT2
    lo[1::2, :] = (ll - lh) / _SQRT2
    hi[0::2, :] = (hl + hh) / _SQRT2
    hi[1::2, :] = (hl - hh) / _SQRT2
    a = np.empty((lo.shape[0], lo.shape[1] * 2))
    a[:, 0::2] = (lo + hi) / _SQRT2
    a[:, 1::2] = (lo - hi) / _SQRT2
    return a


@dataclass
class HaarPyramid:
    """Multi-level decomposition: coarsest LL plus (LH, HL, HH) per level.

    details[0] is the finest level (first split).  width/height record the
    shape the pyramid reconstructs to.
    """

    ll: np.ndarray
    details: list
    width: int
    height: int

    @property
    def levels(self) -> int:
        return len(self.details)


def haar_dwt2(image: Image, levels: int) -> HaarPyramid:
    """Decompose `levels` times; dims must be divisible by 2**levels."""
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    div = 2**levels
    if image.width % div or image.height % div:
        raise IndivisibleDimsError(
            f"dims {image.width}x{image.height} not divisible by 2**{levels}"
        )
    cur = image.a
    details = []
    for _ in range(levels):
        cur, lh, hl, hh = _dwt_level(cur)
        details.append((lh, hl, hh))
    return HaarPyramid(cur, details, image.width, image.height)


def haar_idwt2(pyramid: HaarPyramid) -> Image:
    cur = pyramid.ll
    for lh, hl, hh in reversed(pyramid.details):
        cur = _idwt_level(cur, lh, hl, hh)
    return Image(cur)


def hard_threshold(pyramid: HaarPyramid, threshold: float) -> HaarPyramid:
    """Zero every detail coefficient with |c| <= threshold; LL untouched."""
    details = [
        tuple(np.where(np.abs(band) <= threshold, 0.0, band) for band in level)
        for level in pyramid.details
    ]
    return HaarPyramid(pyramid.ll.copy(), details, pyramid.width, pyramid.height)


def _pad_to_multiple(a: np.ndarray, multiple: int) -> np.ndarray:
    ph = (-a.shape[0]) % multiple
    pw = (-a.shape[1]) % multiple
    if ph == 0 and pw == 0:
        return a
    return np.pad(a, ((0, ph), (0, pw)), mode="edge")


def hh_noise_sigma(a: np.ndarray) -> float:
    """Robust sigma estimate: median(|HH|)/0.6745 at one decomposition level."""
    p = _pad_to_multiple(np.asarray(a, dtype=np.float64), 2)
    _, _, _, hh = _dwt_level(p)
    return float(np.median(np.abs(hh)) / 0.6745)


def visu_threshold(sigma: float, pixel_count: int) -> float:
    """The universal threshold T = sigma * sqrt(2 ln N)."""
    return float(sigma * math.sqrt(2.0 * math.log(pixel_count)))


def visu_shrink(image: Image, sigma="auto") -> Image:
    """Hard-threshold all detail bands of a 3-level Haar pyramid at T = sigma*sqrt(2 ln N).

    sigma="auto" uses the HH median estimate.  N is the pixel count of the
    input image (padding added for divisibility does not inflate it).  The
    LL band passes through; the result is clipped to [0, 255].
    """
    if sigma == "auto":
        sigma = hh_noise_sigma(image.a)
    if sigma < 0:
        raise NegativeSigmaError(f"sigma must be >= 0, got {sigma}")
    t = visu_threshold(sigma, image.width * image.height)
    padded = _pad_to_multiple(image.a, 2**VISU_LEVELS)
    pyramid = haar_dwt2(Image(padded), VISU_LEVELS)
    out = haar_idwt2(hard_threshold(pyramid, t))
    return Image(np.clip(out.a[: image.height, : image.width], 0.0, 255.0))
