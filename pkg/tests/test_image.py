"""image module: codecs, grayscale, resize, normalization, rounding."""

import numpy as np
import pytest

import ridgelab as rl
from ridgelab.errors import (
    InvalidDimensionsError,
    InvalidRangeError,
    MalformedHeaderError,
    UnsupportedFormatError,
)

from conftest import rand_image


def test_round_half_up_rule():
    vals = np.array([0.5, 1.5, 2.4, 2.6, -0.5, 41.5])
    assert rl.round_half_up(vals).tolist() == [1.0, 2.0, 2.0, 3.0, 0.0, 42.0]


def test_image_invariants():
    img = rl.Image([[0.0, 255.0], [3.5, 7.0]])
    assert img.width == 2 and img.height == 2
    assert not img.is_quantized
    assert rl.quantize(img).is_quantized
    with pytest.raises(InvalidDimensionsError):
        rl.Image(np.empty((0, 3)))
    with pytest.raises(ValueError):
        rl.Image([[np.nan, 1.0]])
    with pytest.raises(InvalidDimensionsError):
        rl.Image.from_flat(2, 2, [1, 2, 3])


def test_image_array_is_read_only():
    img = rl.Image([[1.0, 2.0]])
    with pytest.raises(ValueError):
        img.a[0, 0] = 9.0


# --- PGM loading


def test_load_p5_direct_bytes(tmp_path):
    p = tmp_path / "a.pgm"
    p.write_bytes(b"P5\n2 2\n255\n" + bytes([0, 128, 255, 7]))
    img = rl.load_image(p)
    assert img.a.tolist() == [[0.0, 128.0], [255.0, 7.0]]


def test_load_p2_single_pixel(tmp_path):
    p = tmp_path / "a.pgm"
    p.write_text("P2\n1 1\n255\n42")
    assert rl.load_image(p).a.tolist() == [[42.0]]


def test_load_pgm_maxval_rescale(tmp_path):
    p = tmp_path / "a.pgm"
    p.write_bytes(b"P5\n2 1\n15\n" + bytes([15, 7]))
    img = rl.load_image(p)
    # round_half_up(v * 255 / 15): 15 -> 255, 7 -> 119
    assert img.a.tolist() == [[255.0, 119.0]]


def test_load_pgm_16bit_samples(tmp_path):
    p = tmp_path / "a.pgm"
    p.write_bytes(b"P5\n2 1\n65535\n" + (65535).to_bytes(2, "big") + (0).to_bytes(2, "big"))
    assert rl.load_image(p).a.tolist() == [[255.0, 0.0]]


def test_load_pgm_header_comments(tmp_path):
    p = tmp_path / "a.pgm"
    p.write_bytes(b"P5\n# a comment\n1 1\n# another\n255\n\x2a")
    assert rl.load_image(p).a.tolist() == [[42.0]]


def test_load_pgm_errors(tmp_path):
    cases = [
        (b"P6\n1 1\n255\nxxx", UnsupportedFormatError),
        (b"P5\n0 1\n255\n", MalformedHeaderError),
        (b"P5\n1 1\n70000\n\x00\x00", MalformedHeaderError),
        (b"P5\n2 2\n255\n\x00\x01", MalformedHeaderError),  # truncated body
        (b"P5\n1 1\n255", MalformedHeaderError),  # header cut short
        (b"P2\n1 1\n255\nzz", MalformedHeaderError),
        (b"P2\n1 1\n10\n12", MalformedHeaderError),  # sample over maxval
    ]
    for body, exc in cases:
        p = tmp_path / "bad.pgm"
        p.write_bytes(body)
        with pytest.raises(exc):
            rl.load_image(p)
    with pytest.raises(FileNotFoundError):
        rl.load_image(tmp_path / "missing.pgm")


def test_save_pgm_exact_bytes(tmp_path):
    p = tmp_path / "out.pgm"
    rl.save_pgm(rl.Image([[42.0]]), p)
    assert p.read_bytes() == b"P5\n1 1\n255\n\x2a"
    rl.save_pgm(rl.Image([[-3.0]]), p)
    assert p.read_bytes()[-1] == 0
    rl.save_pgm(rl.Image([[41.5]]), p)
    assert p.read_bytes()[-1] == 42


def test_pgm_round_trip_random(tmp_path, rng):
    for i in range(5):
        img = rand_image(rng, 13 + i, 9 + i)
        p = tmp_path / f"r{i}.pgm"
        rl.save_pgm(img, p)
        assert rl.load_image(p) == img


# --- PNG loading


def test_load_png_grayscale(tmp_path, rng):
    from PIL import Image as PILImage

    a = rng.integers(0, 256, size=(11, 7), dtype=np.uint8)
    p = tmp_path / "g.png"
    PILImage.fromarray(a, mode="L").save(p)
    assert np.array_equal(rl.load_image(p).a, a.astype(float))


def test_load_png_rgb_matches_to_grayscale(tmp_path, rng):
    from PIL import Image as PILImage

    a = rng.integers(0, 256, size=(8, 5, 3), dtype=np.uint8)
    p = tmp_path / "c.png"
    PILImage.fromarray(a, mode="RGB").save(p)
    expect = rl.to_grayscale(rl.RgbImage(a.astype(float)))
    assert rl.load_image(p) == expect


def test_load_png_unsupported_mode(tmp_path):
    from PIL import Image as PILImage

    p = tmp_path / "p.png"
    PILImage.new("P", (4, 4)).save(p)
    with pytest.raises(UnsupportedFormatError):
        rl.load_image(p)


# --- grayscale conversion


def test_to_grayscale_examples():
    rgb = rl.RgbImage([[[255, 255, 255], [0, 0, 0], [0, 0, 255]]])
    assert rl.to_grayscale(rgb).a.tolist() == [[255.0, 0.0, 29.0]]


def test_to_grayscale_neutral_pixels_exact():
    vals = np.arange(256).reshape(16, 16)
    rgb = rl.RgbImage(np.stack([vals] * 3, axis=2).astype(float))
    assert np.array_equal(rl.to_grayscale(rgb).a, vals.astype(float))


# --- resize


def test_resize_identity_and_constant(rng):
    img = rand_image(rng, 4, 4)
    assert rl.resize_nearest(img, 4, 4) == img
    const = rl.Image(np.full((5, 7), 9.0))
    for w, h in ((1, 1), (3, 2), (10, 12)):
        out = rl.resize_nearest(const, w, h)
        assert out.width == w and out.height == h
        assert np.all(out.a == 9.0)


def test_resize_index_rule():
    row = rl.Image([[0.0, 100.0, 200.0, 300.0]])
    assert rl.resize_nearest(row, 2, 1).a.tolist() == [[100.0, 300.0]]
    with pytest.raises(InvalidDimensionsError):
        rl.resize_nearest(row, 0, 1)


# --- normalize_clip


def test_normalize_clip_modes():
    img = rl.Image([[-5.0, 300.0]])
    assert rl.normalize_clip(img, 0, 255).a.tolist() == [[0.0, 255.0]]
    const = rl.Image(np.full((3, 3), 7.0))
    assert np.all(rl.normalize_clip(const, 0, 255, stretch=True).a == 127.5)
    two = rl.Image([[50.0, 150.0]])
    assert rl.normalize_clip(two, 0, 255, stretch=True).a.tolist() == [[0.0, 255.0]]
    with pytest.raises(InvalidRangeError):
        rl.normalize_clip(img, 10, 10)


def test_normalize_clip_idempotent_and_bounded(rng):
    img = rl.Image(rng.uniform(-50, 320, size=(9, 9)))
    once = rl.normalize_clip(img, 0, 255)
    assert once.a.min() >= 0 and once.a.max() <= 255
    assert rl.normalize_clip(once, 0, 255) == once
