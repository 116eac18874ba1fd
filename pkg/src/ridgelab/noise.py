"""Seeded noise injectors: additive gaussian, multiplicative speckle, impulses.

Every injector is a pure function of (image, parameter, seed) and consumes the
SplitMix64 streams from :mod:`ridgelab.rng` in a fixed order, so outputs are
bit-reproducible anywhere:

- gaussian / speckle draw one standard normal per pixel, row-major.
- salt_pepper draws two uniforms per pixel, row-major and interleaved:
  the first decides corruption (u < density), the second picks the polarity
  (u < 0.5 selects salt 255, otherwise pepper 0).

A zero parameter (sigma, variance, or density) is an exact identity: no
stream is consumed and no clipping is applied.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DensityOutOfRangeError,
    NegativeSigmaError,
    NegativeVarianceError,
    NoiseSpecError,
)
from .image import Image
from .rng import SEED_MAX, normal_stream, uniform_stream


def _fmt_num(v: float) -> str:
    # Compact float for spec strings: 15.0 -> "15", 0.05 -> "0.05".
    f = float(v)
    if f == int(f) and abs(f) < 1e15:
        return str(int(f))
    return repr(f)


def add_gaussian(image: Image, sigma: float, seed: int) -> Image:
    """Additive white gaussian noise: out = clip(in + sigma * z, 0, 255)."""
    if sigma < 0:
        raise NegativeSigmaError(f"sigma must be >= 0, got {sigma}")
    if sigma == 0:
        return Image(image.a)
    z = normal_stream(seed, image.a.size).reshape(image.a.shape)
    return Image(np.clip(image.a + sigma * z, 0.0, 255.0))


def add_speckle(image: Image, variance: float, seed: int) -> Image:
    """Multiplicative noise: out = clip(in * (1 + sqrt(variance) * z), 0, 255)."""
    if variance < 0:
        raise NegativeVarianceError(f"variance must be >= 0, got {variance}")
    if variance == 0:
        return Image(image.a)
    z = normal_stream(seed, image.a.size).reshape(image.a.shape)
    return Image(np.clip(image.a * (1.0 + np.sqrt(variance) * z), 0.0, 255.0))


def add_salt_pepper(image: Image, density: float, seed: int) -> Image:
    """Impulse corruption: each pixel independently becomes 0 or 255.

    A pixel is corrupted with probability `density`; a corrupted pixel is
    salt (255) or pepper (0) with equal probability.
    """
    if not 0.0 <= density <= 1.0:
        raise DensityOutOfRangeError(f"density must be in [0, 1], got {density}")
    if density == 0:
        return Image(image.a)
    u = uniform_stream(seed, 2 * image.a.size)
    hit = (u[0::2] < density).reshape(image.a.shape)
    salt = (u[1::2] < 0.5).reshape(image.a.shape)
    out = image.a.copy()
    out[hit & salt] = 255.0
    out[hit & ~salt] = 0.0
    return Image(out)


_KIND_ALIASES = {
    "gaussian": "gaussian",
    "gauss": "gaussian",
    "speckle": "speckle",
    "salt_pepper": "salt_pepper",
    "saltpepper": "salt_pepper",
    "sp": "salt_pepper",
}

# Short tokens used when a spec is rendered back to text.
_KIND_TOKENS = {"gaussian": "gauss", "speckle": "speckle", "salt_pepper": "sp"}


@dataclass(frozen=True)
class NoiseSpec:
    """One injector selection: kind, its parameter, and the stream seed.

    kind is canonical ("gaussian", "speckle", "salt_pepper"); param means
    sigma, variance, or density respectively.
    """

    kind: str
    param: float
    seed: int

    def __post_init__(self):
        if self.kind not in _KIND_TOKENS:
            raise NoiseSpecError(f"unknown noise kind {self.kind!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed <= SEED_MAX:
            raise NoiseSpecError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.kind == "gaussian" and self.param < 0:
            raise NegativeSigmaError(f"sigma must be >= 0, got {self.param}")
        if self.kind == "speckle" and self.param < 0:
            raise NegativeVarianceError(f"variance must be >= 0, got {self.param}")
        if self.kind == "salt_pepper" and not 0.0 <= self.param <= 1.0:
            raise DensityOutOfRangeError(f"density must be in [0, 1], got {self.param}")

    @classmethod
    def parse(cls, text: str) -> "NoiseSpec":
        """Parse "kind:param:seed", e.g. "sp:0.05:42" or "gauss:15:7"."""
        parts = text.strip().split(":")
        if len(parts) != 3:
            raise NoiseSpecError(f"noise spec must be kind:param:seed, got {text!r}")
        kind = _KIND_ALIASES.get(parts[0].strip().lower())
        if kind is None:
            raise NoiseSpecError(f"unknown noise kind {parts[0]!r}")
        try:
            param = float(parts[1])
        except ValueError:
            raise NoiseSpecError(f"non-numeric noise parameter {parts[1]!r}") from None
        try:
            seed = int(parts[2])
        except ValueError:
            raise NoiseSpecError(f"non-integer noise seed {parts[2]!r}") from None
        return cls(kind, param, seed)

    def apply(self, image: Image) -> Image:
        if self.kind == "gaussian":
            return add_gaussian(image, self.param, self.seed)
        if self.kind == "speckle":
            return add_speckle(image, self.param, self.seed)
        return add_salt_pepper(image, self.param, self.seed)

    def __str__(self):
        return f"{_KIND_TOKENS[self.kind]}:{_fmt_num(self.param)}:{self.seed}"
