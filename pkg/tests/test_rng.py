import numpy as np

from teachlab.rng import MASK64, splitmix64, splitmix64_array, stream_bits


def test_splitmix64_reference_outputs():
    """The first outputs of seed 0 match the published splitmix64 sequence."""
    assert splitmix64(0, 0) == 0xE220A8397B1DCDAF
    assert splitmix64(0, 1) == 0x6E789E6AA1B965F4


def test_splitmix64_array_matches_scalar():
    seed = 0xDEADBEEF12345678
    values = splitmix64_array(seed, 50, start=7)
    assert values.dtype == np.uint64
    assert [int(v) for v in values] == [splitmix64(seed, r) for r in range(7, 57)]


def test_splitmix64_wraps_large_seeds():
    assert splitmix64(MASK64, 3) == splitmix64(-1, 3)
    assert int(splitmix64_array(MASK64, 1, start=3)[0]) == splitmix64(MASK64, 3)


def test_stream_bits_is_top_bit():
    seed = 42
    bits = stream_bits(seed, 100)
    assert bits.dtype == bool
    assert [bool(b) for b in bits] == [splitmix64(seed, r) >> 63 == 1 for r in range(100)]


def test_stream_bits_roughly_fair():
    assert 4500 < int(stream_bits(7, 10000).sum()) < 5500
