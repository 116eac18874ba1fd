"""Synthetic oriented-sinusoid ridge fixtures for reproducible benchmarks."""

import math

import numpy as np

from .errors import InvalidDimensionsError
from .image import Image


def synth_ridge(width: int, height: int, period: float, theta_deg: float) -> Image:
    """Quantized sinusoidal ridge pattern with ridges along theta_deg.

    I(x, y) = 128 + 100 sin(2 pi s / period) where s measures distance along
    the normal (theta - 90 degrees), so equal-intensity lines run at theta.
    """
    if width < 1 or height < 1:
        raise InvalidDimensionsError(f"dims must be >= 1, got {width}x{height}")
    if period <= 0:
        raise ValueError(f"period must be positive, got {period}")
    phi = math.radians(theta_deg) - math.pi / 2.0
    y, x = np.mgrid[0:height, 0:width].astype(np.float64)
    s = x * math.cos(phi) + y * math.sin(phi)
    img = 128.0 + 100.0 * np.sin(2.0 * math.pi * s / period)
    return Image(np.clip(np.floor(img + 0.5), 0.0, 255.0))


def parse_synth_spec(text: str):
    """Parse "WxH:period:deg" (e.g. "256x256:8:45") into its four numbers."""
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise ValueError(f"synthetic spec must be WxH:period:deg, got {text!r}")
    dims = parts[0].lower().split("x")
    if len(dims) != 2:
        raise ValueError(f"bad dimensions {parts[0]!r} in synthetic spec")
    try:
        width, height = int(dims[0]), int(dims[1])
        period = float(parts[1])
        deg = float(parts[2])
    except ValueError:
        raise ValueError(f"non-numeric field in synthetic spec {text!r}") from None
    if width < 1 or height < 1:
        raise ValueError(f"dims must be >= 1, got {width}x{height}")
    if period <= 0:
        raise ValueError(f"period must be positive, got {period}")
    return width, height, period, deg
