"""Grayscale image type, PGM/PNG codecs, and intensity/geometry preprocessing.

Intensities are real-valued float64 internally with canonical range [0, 255];
quantization to integers happens only at file boundaries.  The single rounding
rule everywhere is round-half-up: floor(x + 0.5).
"""

import io
from pathlib import Path

import numpy as np

from .errors import (
    InvalidDimensionsError,
    InvalidRangeError,
    MalformedHeaderError,
    UnsupportedFormatError,
)

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
_WHITESPACE = b" \t\r\n\x0b\x0c"


def round_half_up(a):
    """Round-half-up on an array or scalar: floor(x + 0.5)."""
    return np.floor(np.asarray(a, dtype=np.float64) + 0.5)


class Image:
    """An immutable 2-D grid of grayscale intensities.

    Wraps a read-only float64 array of shape (height, width).  Any finite
    values are representable; a *quantized* image has every intensity an
    integer in [0, 255] (the form produced by codecs).
    """

    __slots__ = ("_a",)

    def __init__(self, pixels):
        a = np.array(pixels, dtype=np.float64, copy=True)
        if a.ndim != 2:
            raise InvalidDimensionsError(f"image must be 2-D, got ndim={a.ndim}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise InvalidDimensionsError(f"image must be at least 1x1, got {a.shape}")
        if not np.isfinite(a).all():
            raise ValueError("image intensities must all be finite")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def from_flat(cls, width: int, height: int, values) -> "Image":
        """Build from a row-major flat sequence of width*height intensities."""
        v = np.asarray(values, dtype=np.float64)
        if v.size != width * height:
            raise InvalidDimensionsError(
                f"expected {width * height} values for {width}x{height}, got {v.size}"
            )
        return cls(v.reshape(height, width))

    @property
    def a(self) -> np.ndarray:
        """The underlying read-only (height, width) array."""
        return self._a

    @property
    def width(self) -> int:
        return self._a.shape[1]

    @property
    def height(self) -> int:
        return self._a.shape[0]

    @property
    def is_quantized(self) -> bool:
        a = self._a
        return bool((a == np.floor(a)).all() and a.min() >= 0 and a.max() <= 255)

    def __eq__(self, other):
        if not isinstance(other, Image):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    __hash__ = None

    def __repr__(self):
        return f"Image({self.width}x{self.height})"


class RgbImage:
    """An 8-bit RGB image: read-only (height, width, 3) array of channel values."""

    __slots__ = ("_a",)

    def __init__(self, pixels):
        a = np.array(pixels, dtype=np.float64, copy=True)
        if a.ndim != 3 or a.shape[2] != 3:
            raise InvalidDimensionsError(f"rgb image must have shape (h, w, 3), got {a.shape}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise InvalidDimensionsError(f"rgb image must be at least 1x1, got {a.shape[:2]}")
        if not np.isfinite(a).all() or a.min() < 0 or a.max() > 255:
            raise ValueError("rgb channel values must be finite and in [0, 255]")
        a.setflags(write=False)
        self._a = a

    @property
    def a(self) -> np.ndarray:
        return self._a

    @property
    def width(self) -> int:
        return self._a.shape[1]

    @property
    def height(self) -> int:
        return self._a.shape[0]


def quantize(image: Image) -> Image:
    """Round half-up and clip into [0, 255] (the file-boundary form)."""
    return Image(np.clip(round_half_up(image.a), 0.0, 255.0))


def to_grayscale(rgb: RgbImage) -> Image:
    """Collapse RGB to gray with BT.601 luma weights, rounded half-up.

    gray = 0.299 R + 0.587 G + 0.114 B; the weights sum to 1 so neutral
    pixels (R == G == B == v) map to exactly v.
    """
    a = rgb.a
    gray = a[:, :, 0] * 0.299 + a[:, :, 1] * 0.587 + a[:, :, 2] * 0.114
    return Image(round_half_up(gray))


def resize_nearest(image: Image, new_w: int, new_h: int) -> Image:
    """Nearest-neighbor resample: source index = floor((i + 0.5) * old / new)."""
    if new_w < 1 or new_h < 1:
        raise InvalidDimensionsError(f"target dimensions must be >= 1, got {new_w}x{new_h}")
    a = image.a
    xs = np.floor((np.arange(new_w) + 0.5) * image.width / new_w).astype(np.intp)
    ys = np.floor((np.arange(new_h) + 0.5) * image.height / new_h).astype(np.intp)
    xs = np.minimum(xs, image.width - 1)
    ys = np.minimum(ys, image.height - 1)
    return Image(a[np.ix_(ys, xs)])


def normalize_clip(image: Image, lo: float, hi: float, stretch: bool = False) -> Image:
    """Clip intensities into [lo, hi], or affinely stretch onto it.

    stretch=False clips each pixel.  stretch=True maps [min, max] of the
    image onto [lo, hi]; a constant image maps to the midpoint (lo + hi) / 2.
    """
    if not lo < hi:
        raise InvalidRangeError(f"need lo < hi, got lo={lo}, hi={hi}")
    a = image.a
    if not stretch:
        return Image(np.clip(a, lo, hi))
    mn = a.min()
    mx = a.max()
    if mx == mn:
        return Image(np.full(a.shape, (lo + hi) / 2.0))
    # (a - mn) / (mx - mn) hits exactly 0.0 and 1.0 at the extremes, so the
    # stretched extremes land on lo and hi bit-exactly; clip guards interior
    # rounding.
    return Image(np.clip((a - mn) / (mx - mn) * (hi - lo) + lo, lo, hi))


# ---------------------------------------------------------------------------
# codecs

def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # Skips PNM whitespace and '#' comments, returns (token, position after it).
    n = len(data)
    while pos < n:
        c = data[pos]
        if c in _WHITESPACE:
            pos += 1
        elif c == 0x23:  # '#'
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
        else:
            break
    if pos >= n:
        raise MalformedHeaderError("unexpected end of file in PGM header")
    start = pos
    while pos < n and data[pos] not in _WHITESPACE and data[pos] != 0x23:
        pos += 1
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    tok, pos = _next_token(data, pos)
    try:
        return int(tok), pos
    except ValueError:
        raise MalformedHeaderError(f"non-numeric {what} {tok!r} in PGM header") from None


def _load_pgm(data: bytes) -> Image:
    magic, pos = _next_token(data, 0)
    w, pos = _header_int(data, pos, "width")
    h, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if w < 1 or h < 1:
        raise MalformedHeaderError(f"non-positive PGM dimensions {w}x{h}")
    if maxval < 1 or maxval > 65535:
        raise MalformedHeaderError(f"PGM maxval {maxval} outside [1, 65535]")
    count = w * h
    if magic == b"P2":
        values = np.empty(count, dtype=np.float64)
        for i in range(count):
            v, pos = _header_int(data, pos, "sample")
            values[i] = v
    else:  # P5: exactly one whitespace byte separates maxval from raw samples
        pos += 1
        if maxval < 256:
            raw = data[pos : pos + count]
            if len(raw) < count:
                raise MalformedHeaderError("truncated PGM pixel data")
            values = np.frombuffer(raw, dtype=np.uint8).astype(np.float64)
        else:
            raw = data[pos : pos + 2 * count]
            if len(raw) < 2 * count:
                raise MalformedHeaderError("truncated PGM pixel data")
            values = np.frombuffer(raw, dtype=">u2").astype(np.float64)
    if values.min() < 0 or values.max() > maxval:
        raise MalformedHeaderError("PGM sample value exceeds maxval")
    if maxval != 255:
        values = round_half_up(values * (255.0 / maxval))
    return Image.from_flat(w, h, values)


def _load_png(data: bytes) -> Image:
    from PIL import Image as PILImage

    with PILImage.open(io.BytesIO(data)) as img:
        img.load()
        mode = img.mode
        if mode == "L":
            return Image(np.asarray(img, dtype=np.uint8))
        if mode == "RGB":
            return to_grayscale(RgbImage(np.asarray(img, dtype=np.uint8)))
    raise UnsupportedFormatError(
        f"unsupported PNG mode {mode!r}; only 8-bit grayscale (L) and RGB are readable"
    )


def load_image(path) -> Image:
    """Read a binary/ASCII PGM or an 8-bit grayscale/RGB PNG as a quantized Image.

    PGM files with maxval != 255 are linearly rescaled to [0, 255] and rounded
    half-up.  RGB PNGs are collapsed with :func:`to_grayscale`.
    """
    data = Path(path).read_bytes()
    if data[:8] == _PNG_MAGIC:
        return _load_png(data)
    magic = data[:2]
    if magic in (b"P5", b"P2"):
        return _load_pgm(data)
    raise UnsupportedFormatError(
        f"unsupported file format (magic {magic!r}); expected P2/P5 PGM or PNG"
    )


def save_pgm(image: Image, path) -> None:
    """Write as binary P5 with maxval 255; intensities are quantized first."""
    q = quantize(image)
    header = f"P5\n{q.width} {q.height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + q.a.astype(np.uint8).tobytes())
