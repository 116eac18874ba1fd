"""Seeded random streams with a fully specified algorithm.

Noise injection must be bit-reproducible from (image, parameters, seed)
alone, independent of the host platform's RNG library.  Everything here is
therefore pinned to SplitMix64, whose entire state is one 64-bit counter:

    state_k = seed + k * 0x9E3779B97F4A7C15          (mod 2**64, k = 1, 2, ...)
    z = state_k
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9         (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB         (mod 2**64)
    output_k = z ^ (z >> 31)

Because the state advances by a fixed constant per draw, the k-th output is a
pure function of (seed, k), which lets the whole stream be produced as one
vectorized computation.

Uniform doubles take the top 53 bits: u = (output >> 11) * 2**-53, giving
values in [0, 1).

Gaussians use the Box-Muller transform with a fixed consumption order: the
pair of normals (z_{2k}, z_{2k+1}) consumes the pair of raw outputs
(output_{2k+1}, output_{2k+2}) as
    u1 = ((output_{2k+1} >> 11) + 1) * 2**-53        (in (0, 1], so log u1 is finite)
    u2 = (output_{2k+2} >> 11) * 2**-53
    r  = sqrt(-2 ln u1)
    z_{2k}   = r * cos(2 pi u2)
    z_{2k+1} = r * sin(2 pi u2)
For an odd request length the final sine-branch normal is discarded.
"""

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

SEED_MAX = 2**64 - 1


def _check_seed(seed):
    if not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    if seed < 0 or seed > SEED_MAX:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")


def raw_stream(seed: int, count: int) -> np.ndarray:
    """First `count` raw 64-bit outputs of SplitMix64 for this seed."""
    _check_seed(seed)
    if count < 0:
        raise ValueError("count must be >= 0")
    k = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed) + _GOLDEN * k
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def uniform_stream(seed: int, count: int) -> np.ndarray:
    """`count` uniform doubles in [0, 1), top-53-bit convention."""
    bits = raw_stream(seed, count)
    return (bits >> np.uint64(11)).astype(np.float64) * 2.0**-53


def normal_stream(seed: int, count: int) -> np.ndarray:
    """`count` standard normals via Box-Muller in the documented pair order."""
    if count < 0:
        raise ValueError("count must be >= 0")
    pairs = (count + 1) // 2
    bits = raw_stream(seed, 2 * pairs)
    u1 = ((bits[0::2] >> np.uint64(11)) + np.uint64(1)).astype(np.float64) * 2.0**-53
    u2 = (bits[1::2] >> np.uint64(11)).astype(np.float64) * 2.0**-53
    r = np.sqrt(-2.0 * np.log(u1))
    out = np.empty(2 * pairs, dtype=np.float64)
    out[0::2] = r * np.cos(2.0 * np.pi * u2)
    out[1::2] = r * np.sin(2.0 * np.pi * u2)
    return out[:count]
