"""Block-wise homogeneity screening and outlier-pixel repair.

The de-noiser tiles the image into non-overlapping 3x3 blocks (edge-replicated
to multiples of 3), calls a block homogeneous when its intensity range is at
most tau, flags every pixel further than tau/2 from the block median
otherwise, and replaces each flagged pixel by the median of its un-flagged
8-neighbors in the full image.  One pass is Jacobi style: all flags and all
repair donors are read from the pre-pass image, so the result is independent
of block visitation order.
"""

from dataclasses import dataclass, replace
from typing import FrozenSet, Union

import numpy as np

from .errors import InvalidRangeError
from .image import Image, normalize_clip
from .metrics import estimate_noise_sigma

BLOCK_SIZE = 3
AUTO_TAU_FLOOR = 6.0
_N8 = [(dy, dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1) if (dy, dx) != (0, 0)]


@dataclass(frozen=True)
class PcaConfig:
    """De-noiser knobs: range threshold, pass count, output normalization.

    tau is the homogeneity range threshold (intensities), or "auto" for
    max(6, 3 * estimated noise sigma).  The outlier margin is always tau/2.
    """

    tau: Union[float, str] = 24.0
    max_passes: int = 1
    stretch_output: bool = False

    block_size = BLOCK_SIZE

    def __post_init__(self):
        if self.tau != "auto":
            if not isinstance(self.tau, (int, float)) or not self.tau > 0:
                raise InvalidRangeError(f"tau must be > 0 or 'auto', got {self.tau!r}")
        if not isinstance(self.max_passes, (int, np.integer)) or self.max_passes < 1:
            raise InvalidRangeError(f"max_passes must be an integer >= 1, got {self.max_passes!r}")

    @property
    def outlier_margin(self) -> float:
        if self.tau == "auto":
            raise ValueError("tau is 'auto'; resolve it against an image first")
        return float(self.tau) / 2.0

    def resolved(self, image: Image) -> "PcaConfig":
        """Replace tau='auto' with its numeric value for this image."""
        return replace(self, tau=resolve_tau(image, self.tau))


def resolve_tau(image: Image, tau) -> float:
    if tau == "auto":
        return max(AUTO_TAU_FLOOR, 3.0 * estimate_noise_sigma(image))
    return float(tau)


@dataclass(frozen=True, eq=False)
class Block:
    """One 3x3 tile at top-left (x0, y0) of the padded grid."""

    x0: int
    y0: int
    tile: np.ndarray


@dataclass(eq=False)
class BlockGrid:
    """The padded 3x3 tiling of an image, row-major, with crop bookkeeping."""

    source_width: int
    source_height: int
    padded_width: int
    padded_height: int
    blocks: list

    def reassemble(self) -> Image:
        """Place every tile back and crop the padding; identity for untouched tiles."""
        canvas = np.empty((self.padded_height, self.padded_width))
        for b in self.blocks:
            canvas[b.y0 : b.y0 + BLOCK_SIZE, b.x0 : b.x0 + BLOCK_SIZE] = b.tile
        return Image(canvas[: self.source_height, : self.source_width])


@dataclass(frozen=True)
class HomogeneityVerdict:
    """Block classification: homogeneous flag, its median, flagged tile indices."""

    homogeneous: bool
    block_median: float
    flagged: FrozenSet[int]


def _pad3(a: np.ndarray) -> np.ndarray:
    ph = (-a.shape[0]) % BLOCK_SIZE
    pw = (-a.shape[1]) % BLOCK_SIZE
    if ph == 0 and pw == 0:
        return a
    return np.pad(a, ((0, ph), (0, pw)), mode="edge")


def partition_blocks(image: Image) -> BlockGrid:
    p = _pad3(image.a)
    ph, pw = p.shape
    blocks = []
    for y0 in range(0, ph, BLOCK_SIZE):
        for x0 in range(0, pw, BLOCK_SIZE):
            blocks.append(Block(x0, y0, p[y0 : y0 + BLOCK_SIZE, x0 : x0 + BLOCK_SIZE].copy()))
    return BlockGrid(image.width, image.height, pw, ph, blocks)


def _as_tile(block) -> np.ndarray:
    if isinstance(block, Block):
        return block.tile.reshape(9)
    t = np.asarray(block, dtype=np.float64)
    if t.size != 9:
        raise ValueError(f"block must hold 9 intensities, got {t.size}")
    return t.reshape(9)


def analyze_block(block, config: PcaConfig) -> HomogeneityVerdict:
    """Classify one tile: homogeneous iff max-min <= tau, else flag outliers.

    Flagged indices are row-major positions 0..8 of pixels further than tau/2
    from the tile median.  Whenever the range exceeds tau at least one of the
    extremes is beyond the margin, so flagged is empty iff homogeneous.
    """
    t = _as_tile(block)
    margin = config.outlier_margin
    med = float(np.median(t))
    if t.max() - t.min() <= float(config.tau):
        return HomogeneityVerdict(True, med, frozenset())
    flagged = frozenset(int(i) for i in np.flatnonzero(np.abs(t - med) > margin))
    return HomogeneityVerdict(False, med, flagged)


def repair_pixel(image: Image, x: int, y: int, flagged_mask, block_median: float) -> float:
    """Median of the un-flagged in-bounds 8-neighbors of (x, y); fallback block_median."""
    a = image.a
    mask = np.asarray(flagged_mask, dtype=bool)
    donors = []
    for dy, dx in _N8:
        ny, nx = y + dy, x + dx
        if 0 <= ny < a.shape[0] and 0 <= nx < a.shape[1] and not mask[ny, nx]:
            donors.append(a[ny, nx])
    if not donors:
        return float(block_median)
    return float(np.median(donors))


def flag_map(image: Image, config: PcaConfig):
    """Per-pixel flag mask and block-median map for one pass over `image`.

    Returns (mask, medians): boolean and float arrays at source resolution.
    Block statistics include any replicated padding the block covers.
    """
    cfg = config.resolved(image)
    return _flag_arrays(image.a, float(cfg.tau))


def _flag_arrays(a: np.ndarray, tau: float):
    h, w = a.shape
    p = _pad3(a)
    ph, pw = p.shape
    gh, gw = ph // BLOCK_SIZE, pw // BLOCK_SIZE
    tiles = p.reshape(gh, BLOCK_SIZE, gw, BLOCK_SIZE).swapaxes(1, 2).reshape(-1, 9)
    spread = tiles.max(axis=1) - tiles.min(axis=1)
    med = np.median(tiles, axis=1)
    flags = (np.abs(tiles - med[:, None]) > tau / 2.0) & (spread > tau)[:, None]
    mask_p = flags.reshape(gh, gw, BLOCK_SIZE, BLOCK_SIZE).swapaxes(1, 2).reshape(ph, pw)
    med_p = np.repeat(np.repeat(med.reshape(gh, gw), BLOCK_SIZE, 0), BLOCK_SIZE, 1)
    return mask_p[:h, :w].copy(), med_p[:h, :w].copy()


def _repair_all(a: np.ndarray, mask: np.ndarray, med_map: np.ndarray) -> np.ndarray:
    h, w = a.shape
    flat_idx = np.flatnonzero(mask)
    donors = np.full((8, h, w), np.nan)
    src = np.where(mask, np.nan, a)
    for k, (dy, dx) in enumerate(_N8):
        ys_dst = slice(max(0, -dy), min(h, h - dy))
        xs_dst = slice(max(0, -dx), min(w, w - dx))
        ys_src = slice(max(0, dy), min(h, h + dy))
        xs_src = slice(max(0, dx), min(w, w + dx))
        donors[k][ys_dst, xs_dst] = src[ys_src, xs_src]
    cols = donors.reshape(8, -1)[:, flat_idx]
    has_donor = ~np.all(np.isnan(cols), axis=0)
    repaired = np.empty(flat_idx.shape)
    if has_donor.any():
        repaired[has_donor] = np.nanmedian(cols[:, has_donor], axis=0)
    repaired[~has_donor] = med_map.ravel()[flat_idx[~has_donor]]
    out = a.copy().ravel()
    out[flat_idx] = repaired
    return out.reshape(h, w)


def denoise(image: Image, config: PcaConfig = None) -> Image:
    """Run up to max_passes flag-and-repair passes, normalizing after each.

    Each pass: flag from the current image, repair every flagged pixel from
    the same pre-pass image, then clip to [0, 255] (or min-max stretch when
    stretch_output is set).  A pass that flags nothing ends the run with the
    image returned untouched, which makes every homogeneous image a bit-exact
    fixed point under any config.
    """
    cfg = (config or PcaConfig()).resolved(image)
    tau = float(cfg.tau)
    a = image.a
    for _ in range(cfg.max_passes):
        mask, med_map = _flag_arrays(a, tau)
        if not mask.any():
            return Image(a)
        a = _repair_all(a, mask, med_map)
        a = normalize_clip(Image(a), 0.0, 255.0, cfg.stretch_output).a
    return Image(a)
