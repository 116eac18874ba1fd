"""Image quality metrics: MSE, energy-ratio SNR, PSNR, and a noise estimate.

snr_db treats its first argument as the reference signal:
10*log10(sum(ref^2) / sum((ref - test)^2)).  Zero residual yields +inf; a
zero-energy reference with nonzero residual yields -inf.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatchError, ImageTooSmallError
from .image import Image
from .wavelet import hh_noise_sigma

PEAK = 255.0


def _check_dims(reference: Image, test: Image):
    if reference.a.shape != test.a.shape:
        raise DimensionMismatchError(
            f"dimension mismatch: {reference.width}x{reference.height}"
            f" vs {test.width}x{test.height}"
        )


def mse(reference: Image, test: Image) -> float:
    _check_dims(reference, test)
    d = reference.a - test.a
    return float(np.mean(d * d))


def snr_db(reference: Image, test: Image) -> float:
    _check_dims(reference, test)
    resid = reference.a - test.a
    noise_energy = float(np.sum(resid * resid))
    if noise_energy == 0.0:
        return math.inf
    signal_energy = float(np.sum(reference.a * reference.a))
    if signal_energy == 0.0:
        return -math.inf
    return 10.0 * math.log10(signal_energy / noise_energy)


def psnr_db(reference: Image, test: Image) -> float:
    m = mse(reference, test)
    if m == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / m)


def estimate_noise_sigma(image: Image) -> float:
    """No-reference sigma estimate: median(|HH|)/0.6745 at one Haar level.

    Structure (edges, ridges) leaks into HH, so this overestimates on highly
    textured content; it is exact on constants and good on smooth scenes.
    """
    if image.width < 2 or image.height < 2:
        raise ImageTooSmallError(
            f"need at least 2x2 for sigma estimation, got {image.width}x{image.height}"
        )
    return hh_noise_sigma(image.a)


@dataclass(frozen=True)
class MetricsReport:
    """MSE/SNR/PSNR for one (reference, test) pair, plus optional sigma_hat."""

    mse: float
    snr_db: float
    psnr_db: float
    sigma_hat: Optional[float] = None


def report(reference: Image, test: Image) -> MetricsReport:
    """Full report for a pair; sigma_hat estimated on `test` when it is >= 2x2."""
    sigma = None
    if test.width >= 2 and test.height >= 2:
        sigma = estimate_noise_sigma(test)
    return MetricsReport(
        mse=mse(reference, test),
        snr_db=snr_db(reference, test),
        psnr_db=psnr_db(reference, test),
        sigma_hat=sigma,
    )
