"""Ridge orientation / frequency estimation and oriented Gabor enhancement.

Orientation uses the gradient structure tensor per block: theta is half the
angle of the summed (gxx - gyy, 2 gxy) vector plus pi/2, which points along
the ridges (perpendicular to the dominant gradient).  Frequency comes from
peak spacing in an oriented window projection.  Enhancement correlates each
block with an even-symmetric, zero-DC Gabor kernel tuned to that block's
(theta, f).
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import ndimage, signal

from .errors import BlockTooSmallError
from .image import Image, round_half_up
from .wavelet import haar_dwt2, haar_idwt2, hard_threshold, hh_noise_sigma, visu_threshold

FREQ_MIN = 1.0 / 25.0
FREQ_MAX = 1.0 / 3.0
KERNEL_RADIUS_CAP = 24


@dataclass(frozen=True)
class GaborConfig:
    """Enhancement knobs: envelope factors, block/window sizes, fallbacks."""

    kx: float = 0.5
    ky: float = 0.5
    orientation_block: int = 16
    freq_window: int = 32
    fallback_frequency: float = 0.1
    orient_bins: Optional[int] = None

    def __post_init__(self):
        for name in ("kx", "ky", "orientation_block", "freq_window", "fallback_frequency"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.orient_bins is not None and self.orient_bins < 1:
            raise ValueError("orient_bins must be >= 1")


@dataclass(eq=False)
class OrientationField:
    """Block-wise ridge directions in [0, pi) with a [0, 1] coherence grid."""

    block_size: int
    angles: np.ndarray
    coherence: np.ndarray


@dataclass(eq=False)
class FrequencyMap:
    """Block-wise ridge frequencies (cycles/pixel); NaN marks invalid blocks."""

    frequencies: np.ndarray

    def valid(self) -> np.ndarray:
        return ~np.isnan(self.frequencies)


def estimate_orientation(image: Image, block_size: int = 16) -> OrientationField:
    """Structure-tensor orientation per block_size x block_size block.

    Zero-gradient blocks get coherence 0 and the default angle 0.
    """
    if block_size < 4:
        raise BlockTooSmallError(f"block_size must be >= 4, got {block_size}")
    return _orientation_arrays(image.a, block_size)


def _orientation_arrays(a: np.ndarray, block_size: int) -> OrientationField:
    gx = ndimage.sobel(a, axis=1, mode="nearest")
    gy = ndimage.sobel(a, axis=0, mode="nearest")
    h, w = a.shape
    gh = -(-h // block_size)
    gw = -(-w // block_size)
    angles = np.zeros((gh, gw))
    coherence = np.zeros((gh, gw))
    for i in range(gh):
        for j in range(gw):
            sx = gx[i * block_size : (i + 1) * block_size, j * block_size : (j + 1) * block_size]
            sy = gy[i * block_size : (i + 1) * block_size, j * block_size : (j + 1) * block_size]
            gxx = float(np.sum(sx * sx))
            gyy = float(np.sum(sy * sy))
            gxy = float(np.sum(sx * sy))
            denom = gxx + gyy
            if denom <= 0:
                continue
            theta = 0.5 * math.atan2(2.0 * gxy, gxx - gyy) + math.pi / 2.0
            angles[i, j] = theta % math.pi
            coherence[i, j] = math.hypot(gxx - gyy, 2.0 * gxy) / denom
    return OrientationField(block_size, angles, coherence)


def quantize_orientation(field: OrientationField, bins: int = 16) -> OrientationField:
    """Snap every angle to the nearest of `bins` evenly spaced directions in [0, pi)."""
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    step = math.pi / bins
    snapped = (round_half_up(field.angles / step) % bins) * step
    return OrientationField(field.block_size, snapped, field.coherence.copy())


def estimate_ridge_frequency(
    image: Image, field: OrientationField, freq_window: int = 32
) -> FrequencyMap:
    """Peak-spacing frequency per block; NaN outside [1/25, 1/3] or when unreadable."""
    return _frequency_arrays(image.a, field, freq_window)


def _frequency_arrays(a: np.ndarray, field: OrientationField, win: int) -> FrequencyMap:
    h, w = a.shape
    bs = field.block_size
    gh, gw = field.angles.shape
    freq = np.full((gh, gw), np.nan)
    half = win // 2
    offsets = np.arange(-half, half, dtype=np.float64)
    t_grid, u_grid = np.meshgrid(offsets, offsets, indexing="ij")
    for i in range(gh):
        for j in range(gw):
            if field.coherence[i, j] <= 0:
                continue
            theta = field.angles[i, j]
            cy = i * bs + bs / 2.0
            cx = j * bs + bs / 2.0
            # t runs across the ridges (along the normal), u along them.
            nx, ny = math.cos(theta - math.pi / 2.0), math.sin(theta - math.pi / 2.0)
            rx, ry = math.cos(theta), math.sin(theta)
            px = np.floor(cx + t_grid * nx + u_grid * rx + 0.5).astype(np.intp)
            py = np.floor(cy + t_grid * ny + u_grid * ry + 0.5).astype(np.intp)
            inside = (px >= 0) & (px < w) & (py >= 0) & (py < h)
            counts = inside.sum(axis=1)
            if (counts == 0).any():
                continue
            vals = np.where(inside, a[np.clip(py, 0, h - 1), np.clip(px, 0, w - 1)], 0.0)
            sig = vals.sum(axis=1) / counts
            sig = sig - sig.mean()
            peaks = _positive_peaks(sig)
            if len(peaks) < 2:
                continue
            span = peaks[-1] - peaks[0]
            if span <= 0:
                continue
            f = (len(peaks) - 1) / span
            if FREQ_MIN <= f <= FREQ_MAX:
                freq[i, j] = f
    return FrequencyMap(freq)


def _positive_peaks(sig: np.ndarray) -> list:
    # Local maxima above zero; plateaus count once at their center position.
    n = sig.size
    peaks = []
    k = 1
    while k < n - 1:
        if sig[k] > 0 and sig[k] >= sig[k - 1]:
            e = k
            while e + 1 < n and sig[e + 1] == sig[k]:
                e += 1
            if e + 1 < n and sig[e + 1] < sig[k]:
                peaks.append((k + e) / 2.0)
                k = e + 1
                continue
        k += 1
    return peaks


def gabor_kernel(theta: float, freq: float, kx: float = 0.5, ky: float = 0.5) -> np.ndarray:
    """Even-symmetric Gabor tap grid for one (theta, f), mean-subtracted.

    The cosine axis runs along theta - pi/2 (across the ridges); envelope
    sigmas are kx/f and ky/f; radius is ceil(3 * max sigma) capped at 24, so
    kernels never exceed 49 x 49.
    """
    if freq <= 0:
        raise ValueError(f"freq must be positive, got {freq}")
    sx = kx / freq
    sy = ky / freq
    radius = min(int(math.ceil(3.0 * max(sx, sy))), KERNEL_RADIUS_CAP)
    yy, xx = np.mgrid[-radius : radius + 1, -radius : radius + 1].astype(np.float64)
    phi = theta - math.pi / 2.0
    xr = xx * math.cos(phi) + yy * math.sin(phi)
    yr = -xx * math.sin(phi) + yy * math.cos(phi)
    k = np.cos(2.0 * math.pi * freq * xr) * np.exp(-0.5 * (xr**2 / sx**2 + yr**2 / sy**2))
    return k - k.mean()


def gabor_enhance(image: Image, config: GaborConfig = None) -> Image:
    """Contrast-normalized, per-block Gabor filtering, stretched to [0, 255].

    The image is first normalized to zero mean and unit variance; orientation
    and frequency are estimated on the normalized copy.  Blocks without a
    valid frequency use the fallback.  A flat input, or a response with no
    range, maps to constant 128.
    """
    cfg = config or GaborConfig()
    a = image.a
    mean = a.mean()
    std = a.std()
    if std == 0:
        return Image(np.full(a.shape, 128.0))
    norm = (a - mean) / std
    field = _orientation_arrays(norm, cfg.orientation_block)
    if cfg.orient_bins is not None:
        field = quantize_orientation(field, cfg.orient_bins)
    freqs = _frequency_arrays(norm, field, cfg.freq_window)
    h, w = a.shape
    bs = cfg.orientation_block
    out = np.zeros_like(a)
    padded = np.pad(norm, KERNEL_RADIUS_CAP, mode="edge")
    gh, gw = field.angles.shape
    for i in range(gh):
        for j in range(gw):
            f = freqs.frequencies[i, j]
            if np.isnan(f):
                f = cfg.fallback_frequency
            kern = gabor_kernel(field.angles[i, j], f, cfg.kx, cfg.ky)
            r = kern.shape[0] // 2
            y0, x0 = i * bs, j * bs
            y1, x1 = min((i + 1) * bs, h), min((j + 1) * bs, w)
            region = padded[
                KERNEL_RADIUS_CAP + y0 - r : KERNEL_RADIUS_CAP + y1 + r,
                KERNEL_RADIUS_CAP + x0 - r : KERNEL_RADIUS_CAP + x1 + r,
            ]
            out[y0:y1, x0:x1] = signal.correlate2d(region, kern, mode="valid")
    lo = out.min()
    hi = out.max()
    if hi - lo < 1e-9:
        return Image(np.full(a.shape, 128.0))
    return Image(np.clip((out - lo) / (hi - lo) * 255.0, 0.0, 255.0))


def wavelet_gabor_composite(image: Image, config: GaborConfig = None) -> Image:
    """Gabor enhancement of the 1-level LL band plus thresholded details.

    The LL band is affinely mapped onto [0, 255], enhanced, and mapped back
    (left untouched when it is constant); detail bands get the universal hard
    threshold sigma_hat * sqrt(2 ln N) with sigma_hat estimated from the
    image's own HH band and N its pixel count.  Reconstruction is clipped
    to [0, 255].
    """
    cfg = config or GaborConfig()
    a = image.a
    t = visu_threshold(hh_noise_sigma(a), image.width * image.height)
    ph = (-a.shape[0]) % 2
    pw = (-a.shape[1]) % 2
    padded = np.pad(a, ((0, ph), (0, pw)), mode="edge") if (ph or pw) else a
    pyramid = hard_threshold(haar_dwt2(Image(padded), 1), t)
    ll = pyramid.ll
    mn = ll.min()
    mx = ll.max()
    if mx > mn:
        scaled = (ll - mn) / (mx - mn) * 255.0
        enhanced = gabor_enhance(Image(scaled), cfg)
        pyramid.ll = enhanced.a / 255.0 * (mx - mn) + mn
    out = haar_idwt2(pyramid)
    return Image(np.clip(out.a[: image.height, : image.width], 0.0, 255.0))
