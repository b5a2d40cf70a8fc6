"""Counter-based splitmix64 streams.

Output r of stream `seed` is the splitmix64 finalizer applied to
``seed + (r + 1) * 0x9E3779B97F4A7C15 (mod 2^64)``. Every output depends only
on (seed, r), so pair orientations and per-trial seeds can be generated in
any order, or in parallel, with identical results.
"""
import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def splitmix64(seed: int, index: int) -> int:
    return mix64(seed + (index + 1) * GOLDEN_GAMMA)


def splitmix64_array(seed: int, count: int, start: int = 0) -> np.ndarray:
    """Outputs start .. start+count-1 of the stream, as uint64; wraps modulo 2^64 like `splitmix64`."""
    counters = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over='ignore'):
        z = np.uint64(seed & MASK64) + counters * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def stream_bits(seed: int, count: int) -> np.ndarray:
    """One fair bit per counter: the top bit of each output."""
    return (splitmix64_array(seed, count) >> np.uint64(63)).astype(bool)
