"""Gaussian blur, median filter (with brute-force oracle), histogram EQ."""

import numpy as np
import pytest

import ridgelab as rl
from ridgelab.errors import NegativeSigmaError
from ridgelab.filters import gaussian_kernel

from conftest import rand_image


def test_gaussian_blur_identity_and_constant(rng):
    img = rand_image(rng, 9, 9)
    assert rl.gaussian_blur(img, 0.0) == img
    const = rl.Image(np.full((9, 9), 42.0))
    out = rl.gaussian_blur(const, 2.5)
    assert np.allclose(out.a, 42.0, atol=1e-12)
    with pytest.raises(NegativeSigmaError):
        rl.gaussian_blur(img, -1.0)


def test_gaussian_kernel_normalized():
    for sigma in (0.4, 1.0, 3.0):
        k = gaussian_kernel(sigma)
        assert k.size == 2 * int(np.ceil(3 * sigma)) + 1
        assert abs(k.sum() - 1.0) <= 1e-12


def test_gaussian_blur_impulse_response():
    a = np.zeros((9, 9))
    a[4, 4] = 1.0
    out = rl.gaussian_blur(rl.Image(a), 1.0)
    k = gaussian_kernel(1.0)
    center = k[k.size // 2]
    assert out.a[4, 4] == pytest.approx(center * center, rel=1e-12)
    assert out.a.sum() == pytest.approx(1.0, abs=1e-9)


def test_blur_and_median_commute_with_flips(rng):
    img = rand_image(rng, 14, 11)
    flips = (np.fliplr, np.flipud)
    for flip in flips:
        blurred = rl.gaussian_blur(img, 1.3).a
        assert np.allclose(rl.gaussian_blur(rl.Image(flip(img.a)), 1.3).a, flip(blurred), atol=1e-12)
        med = rl.median_filter(img, 1).a
        assert np.array_equal(rl.median_filter(rl.Image(flip(img.a)), 1).a, flip(med))


def test_median_filter_examples():
    const = rl.Image(np.full((5, 5), 8.0))
    assert rl.median_filter(const, 1) == const
    a = np.full((7, 7), 100.0)
    a[3, 3] = 255.0
    out = rl.median_filter(rl.Image(a), 1)
    assert np.all(out.a == 100.0)
    row = rl.Image([[1.0, 2.0, 3.0, 4.0, 5.0]])
    assert rl.median_filter(row, 1).a[0, 2] == 3.0
    with pytest.raises(ValueError):
        rl.median_filter(const, 0)


def _median_oracle(a, r):
    h, w = a.shape
    p = np.pad(a, r, mode="edge")
    out = np.empty_like(a)
    for y in range(h):
        for x in range(w):
            out[y, x] = np.median(p[y : y + 2 * r + 1, x : x + 2 * r + 1])
    return out


def test_median_filter_matches_brute_force(rng):
    for r in (1, 2):
        img = rand_image(rng, 16, 13)
        assert np.array_equal(rl.median_filter(img, r).a, _median_oracle(img.a, r))


def test_histeq_two_level_image():
    a = np.zeros((2, 8))
    a[1, :] = 255.0
    out = rl.histogram_equalize(rl.Image(a))
    # cdf(0) = 8 = cdf_min, cdf(255) = 16: levels map to 0 and 255
    assert set(np.unique(out.a)) == {0.0, 255.0}
    assert np.all(out.a[0] == 0.0) and np.all(out.a[1] == 255.0)


def test_histeq_constant_maps_to_zero():
    const = rl.Image(np.full((4, 4), 170.0))
    assert np.all(rl.histogram_equalize(const).a == 0.0)


def test_histeq_uniform_ramp_unchanged():
    ramp = rl.Image(np.arange(256, dtype=float).reshape(16, 16))
    out = rl.histogram_equalize(ramp)
    assert np.max(np.abs(out.a - ramp.a)) <= 1.0


def test_histeq_monotone_mapping(rng):
    img = rand_image(rng, 32, 32)
    out = rl.histogram_equalize(img)
    pairs = {}
    for v, o in zip(img.a.ravel(), out.a.ravel()):
        pairs[v] = o
    levels = sorted(pairs)
    mapped = [pairs[v] for v in levels]
    assert all(b >= a for a, b in zip(mapped, mapped[1:]))
    assert out.a.min() >= 0 and out.a.max() <= 255
