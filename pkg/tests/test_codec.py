"""Tests for the integer <-> binary sample codec."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from waveparity import codec
from waveparity.errors import InvalidLength, NonBinarySample, OverflowingValue


@pytest.mark.parametrize(
    "value,expected",
    [
        (0, 1),     # bit length of 0 is defined as 1
        (1, 1),
        (2, 2),
        (3, 2),
        (4, 4),
        (255, 8),
        (256, 16),  # bit length 9 rounds up to 16
        (10000, 16),  # bit length 14 rounds up to 16
        (65535, 16),
        (65536, 32),
    ],
)
def test_pad_length(value, expected):
    assert codec.pad_length(value) == expected


def test_pad_length_matches_log2_oracle():
    import math

    for n in range(1, 5000):
        minimal = math.floor(math.log2(n)) + 1
        target = 1
        while target < minimal:
            target *= 2
        assert codec.pad_length(n) == target


def test_pad_length_rejects_negative():
    with pytest.raises(ValueError):
        codec.pad_length(-1)


def test_encode_zero_is_all_zero():
    signal = codec.encode(0, 16)
    assert signal.length == 16
    assert np.all(signal.samples == 0.0)


def test_encode_five_lsb_first():
    signal = codec.encode(5, 8)
    assert signal.samples.tolist() == [1, 0, 1, 0, 0, 0, 0, 0]


def test_encode_10000():
    # 10000 = 2^4 + 2^8 + 2^9 + 2^10 + 2^13
    expected = [0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0]
    assert codec.encode(10000, 16).samples.tolist() == expected


def test_encode_msb_first_reverses():
    lsb = codec.encode(5, 8).samples
    msb = codec.encode(5, 8, codec.MSB_FIRST).samples
    assert np.array_equal(msb, lsb[::-1])


def test_encode_overflow():
    with pytest.raises(OverflowingValue):
        codec.encode(256, 8)
    with pytest.raises(OverflowingValue):
        codec.encode(-1, 8)
    codec.encode(255, 8)  # boundary fits


def test_encode_rejects_non_power_of_two_length():
    for bad in (0, 3, 6, 12, -4):
        with pytest.raises(InvalidLength):
            codec.encode(1, bad)


def test_decode_examples():
    assert codec.decode([0, 0, 0, 0]) == 0
    assert codec.decode([1, 0, 1, 0, 0, 0, 0, 0]) == 5
    assert codec.decode([0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0]) == 10000


def test_decode_rejects_non_binary():
    with pytest.raises(NonBinarySample):
        codec.decode([0.0, 0.5, 1.0])
    with pytest.raises(NonBinarySample):
        codec.decode([0.0, 2.0])


@given(st.integers(0, 2**16 - 1), st.sampled_from([16, 32]), st.sampled_from(codec.BIT_ORDERS))
def test_round_trip(n, length, order):
    assert codec.decode(codec.encode(n, length, order).samples, order) == n


@given(st.integers(0, 2**15 - 1))
def test_parity_at_origin(n):
    assert codec.encode(n, 16).samples[0] == n % 2


@given(st.integers(0, 255), st.sampled_from([8, 16]))
def test_padding_stability(n, length):
    short = codec.encode(n, length).samples
    long = codec.encode(n, 2 * length).samples
    assert np.array_equal(long[:length], short)
    assert np.all(long[length:] == 0.0)


def test_encode_batch_matches_scalar():
    values = np.arange(0, 300, 7)
    for order in codec.BIT_ORDERS:
        batch = codec.encode_batch(values, 16, order)
        stacked = np.stack([codec.encode(int(v), 16, order).samples for v in values])
        assert np.array_equal(batch, stacked)


def test_encode_batch_validations():
    with pytest.raises(OverflowingValue):
        codec.encode_batch([0, 300], 8)
    with pytest.raises(OverflowingValue):
        codec.encode_batch([-1], 8)
    with pytest.raises(InvalidLength):
        codec.encode_batch([1], 12)


def test_bit_signal_properties():
    signal = codec.encode(10, 16)
    assert signal.value == 10
    assert signal.bit_capacity == 16
    assert signal.bit_order == codec.LSB_FIRST
