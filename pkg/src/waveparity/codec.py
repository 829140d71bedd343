"""Integers to and from fixed-length binary sample sequences.

An integer becomes a vector of 0.0/1.0 samples of power-of-two length so the
wavelet stage can consume it unchanged. The default orientation stores the
least significant bit at index 0, which pins the parity-carrying bit to the
same position for every integer; ``msb_first`` is available as a switch so a
sweep can compare both orientations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidLength, NonBinarySample, OverflowingValue

LSB_FIRST = "lsb_first"
MSB_FIRST = "msb_first"
BIT_ORDERS = (LSB_FIRST, MSB_FIRST)


def is_power_of_two(value: int) -> bool:
    return value >= 1 and value & (value - 1) == 0


def pad_length(max_value: int) -> int:
    """Smallest power of two >= the bit length of max_value (0 counts as one bit)."""
    if max_value < 0:
        raise ValueError(f"max_value must be nonnegative, got {max_value}")
    bits = max(int(max_value).bit_length(), 1)
    return 1 << (bits - 1).bit_length()


@dataclass(frozen=True)
class BitSignal:
    """An integer together with its binary sample expansion."""

    value: int
    samples: np.ndarray
    bit_order: str = LSB_FIRST

    @property
    def length(self) -> int:
        return int(self.samples.shape[-1])

    @property
    def bit_capacity(self) -> int:
        """Number of bits the sample vector can hold (same as length)."""
        return self.length


def _check_order(bit_order: str) -> None:
    if bit_order not in BIT_ORDERS:
        raise ValueError(f"bit_order must be one of {BIT_ORDERS}, got {bit_order!r}")


def _check_length(target_length: int) -> None:
    if not is_power_of_two(target_length):
        raise InvalidLength(
            f"target_length must be a positive power of two, got {target_length}"
        )


def encode(n: int, target_length: int, bit_order: str = LSB_FIRST) -> BitSignal:
    """Expand ``n`` into ``target_length`` binary samples.

    Raises InvalidLength unless target_length is a power of two, and
    OverflowingValue when n is negative or needs more than target_length bits.
    """
    _check_order(bit_order)
    _check_length(target_length)
    n = int(n)
    if n < 0:
        raise OverflowingValue(f"n must be nonnegative, got {n}")
    if n >> target_length:
        raise OverflowingValue(f"{n} does not fit in {target_length} bits")
    bits = [float((n >> i) & 1) for i in range(target_length)]
    if bit_order == MSB_FIRST:
        bits.reverse()
    return BitSignal(value=n, samples=np.asarray(bits, dtype=np.float64), bit_order=bit_order)


def encode_batch(values, target_length: int, bit_order: str = LSB_FIRST) -> np.ndarray:
    """Vectorised encode for a whole dataset, returning an (N, target_length) float array."""
    _check_order(bit_order)
    _check_length(target_length)
    if target_length > 64:
        raise InvalidLength("batch encoding supports bit capacities up to 64")
    ints = np.asarray(values)
    if ints.size:
        low, high = int(ints.min()), int(ints.max())
        if low < 0:
            raise OverflowingValue(f"values must be nonnegative, got {low}")
        if high >> target_length:
            raise OverflowingValue(f"{high} does not fit in {target_length} bits")
    shifts = np.arange(target_length, dtype=np.uint64)
    bits = (ints.astype(np.uint64)[:, None] >> shifts[None, :]) & np.uint64(1)
    if bit_order == MSB_FIRST:
        bits = bits[:, ::-1]
    return np.ascontiguousarray(bits, dtype=np.float64)


def decode(samples, bit_order: str = LSB_FIRST) -> int:
    """Invert encode; every sample must be exactly 0.0 or 1.0."""
    _check_order(bit_order)
    arr = np.asarray(samples, dtype=np.float64).ravel()
    if not np.all((arr == 0.0) | (arr == 1.0)):
        raise NonBinarySample("samples must all be exactly 0.0 or 1.0")
    bits = arr.astype(np.int64)
    if bit_order == MSB_FIRST:
        bits = bits[::-1]
    value = 0
    for i in np.flatnonzero(bits):
        value |= 1 << int(i)
    return value
