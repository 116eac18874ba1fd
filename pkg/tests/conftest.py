import numpy as np
import pytest

import ridgelab as rl


@pytest.fixture
def rng():
    return np.random.default_rng(20260825)


def rand_image(rng, w, h):
    """Random quantized image with independent uniform intensities."""
    return rl.Image(rng.integers(0, 256, size=(h, w)).astype(np.float64))
