"""Orthonormal discrete wavelet transform with periodic boundary handling.

Analysis circularly correlates the signal with the low/high pass filters and
keeps every second output, so each step exactly halves the length and the
transform matrix stays orthogonal (Parseval holds up to rounding). Synthesis
applies the transpose, which gives perfect reconstruction.

Conventions, fixed so results are bit-reproducible:

    approx[i] = sum_k h[k] * x[(2i + k) mod n]
    detail[i] = sum_k g[k] * x[(2i + k) mod n]
    g[k]      = (-1)**k * h[support - 1 - k]

All operations act on the last axis, so a stack of signals with shape
(N, length) transforms in a single call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codec import is_power_of_two
from .errors import (
    ConfigError,
    InconsistentShapes,
    InvalidLength,
    LengthMismatch,
    NonPowerOfTwo,
    OddLength,
    TooManyLevels,
)

_FILTER_TOL = 1e-12


@dataclass(frozen=True)
class WaveletFilter:
    """A quadrature-mirror analysis filter pair."""

    name: str
    lowpass: np.ndarray
    highpass: np.ndarray

    @property
    def support(self) -> int:
        return int(self.lowpass.shape[0])


def _qmf_highpass(lowpass: np.ndarray) -> np.ndarray:
    signs = np.where(np.arange(lowpass.shape[0]) % 2 == 0, 1.0, -1.0)
    return signs * lowpass[::-1]


def make_filter(name: str, lowpass) -> WaveletFilter:
    """Build a filter from its lowpass taps, deriving the highpass via the QMF rule."""
    h = np.asarray(lowpass, dtype=np.float64)
    if h.ndim != 1 or h.shape[0] < 2 or h.shape[0] % 2:
        raise InvalidLength("lowpass needs a positive even number of taps")
    if abs(float(h.sum()) - math.sqrt(2.0)) > _FILTER_TOL:
        raise ValueError(f"lowpass of {name!r} must sum to sqrt(2)")
    if abs(float((h * h).sum()) - 1.0) > _FILTER_TOL:
        raise ValueError(f"lowpass of {name!r} must have unit energy")
    return WaveletFilter(name=name, lowpass=h, highpass=_qmf_highpass(h))


def haar_filter() -> WaveletFilter:
    """Two-tap filter; details are scaled pairwise differences."""
    inv = 1.0 / math.sqrt(2.0)
    return make_filter("haar", [inv, inv])


def db4_filter() -> WaveletFilter:
    """Four-tap Daubechies filter, one extra vanishing moment over haar."""
    s3 = math.sqrt(3.0)
    scale = 4.0 * math.sqrt(2.0)
    return make_filter(
        "db4",
        [(1.0 + s3) / scale, (3.0 + s3) / scale, (3.0 - s3) / scale, (1.0 - s3) / scale],
    )


FILTERS = {"haar": haar_filter, "db4": db4_filter}


def get_filter(name: str) -> WaveletFilter:
    try:
        factory = FILTERS[name]
    except KeyError:
        raise ConfigError(f"unknown wavelet {name!r}; available: {sorted(FILTERS)}") from None
    return factory()


def dwt_step(signal, filt: WaveletFilter):
    """One analysis step; returns (approx, detail), each half the input length."""
    x = np.asarray(signal, dtype=np.float64)
    n = x.shape[-1]
    if n < 2:
        raise InvalidLength(f"signal needs at least two samples, got {n}")
    if n % 2:
        raise OddLength(f"signal length must be even, got {n}")
    half = n // 2
    positions = 2 * np.arange(half)
    approx = np.zeros(x.shape[:-1] + (half,), dtype=np.float64)
    detail = np.zeros_like(approx)
    # elementwise tap accumulation rounds identically for single signals and
    # batches, keeping the two paths bit-for-bit interchangeable
    for k in range(filt.support):
        window = x[..., (positions + k) % n]
        approx += filt.lowpass[k] * window
        detail += filt.highpass[k] * window
    return approx, detail


def idwt_step(approx, detail, filt: WaveletFilter) -> np.ndarray:
    """One synthesis step, the exact transpose of dwt_step."""
    a = np.asarray(approx, dtype=np.float64)
    d = np.asarray(detail, dtype=np.float64)
    if a.shape != d.shape:
        raise LengthMismatch(f"approx shape {a.shape} != detail shape {d.shape}")
    half = a.shape[-1]
    if half < 1:
        raise InvalidLength("approx and detail must be nonempty")
    n = 2 * half
    out = np.zeros(a.shape[:-1] + (n,), dtype=np.float64)
    positions = 2 * np.arange(half)
    # per k the target columns are distinct, so fancy-indexed += does not collide
    for k in range(filt.support):
        cols = (positions + k) % n
        out[..., cols] += filt.lowpass[k] * a + filt.highpass[k] * d
    return out


@dataclass(frozen=True)
class Decomposition:
    """Detail vectors d_1..d_J plus the final approximation a_J.

    details[j - 1] holds the level-j coefficients, of length
    signal_length / 2**j; arrays may carry leading batch axes.
    """

    details: tuple[np.ndarray, ...]
    final_approx: np.ndarray
    num_levels: int
    signal_length: int

    def __post_init__(self) -> None:
        if self.num_levels < 1:
            raise ValueError("num_levels must be >= 1")
        count = self.final_approx.shape[-1] + sum(d.shape[-1] for d in self.details)
        if len(self.details) != self.num_levels or count != self.signal_length:
            raise InconsistentShapes(
                f"coefficient counts {count} do not match signal length {self.signal_length}"
            )

    def coefficient_arrays(self) -> list[np.ndarray]:
        """All coefficient vectors, details first, then the final approximation."""
        return list(self.details) + [self.final_approx]


def wavedec(signal, filt: WaveletFilter, num_levels: int) -> Decomposition:
    """Multi-level analysis of a power-of-two-length signal.

    Applies dwt_step num_levels times to the running approximation. Raises
    NonPowerOfTwo for other lengths and TooManyLevels when
    2**num_levels exceeds the signal length.
    """
    x = np.asarray(signal, dtype=np.float64)
    n = x.shape[-1]
    if not is_power_of_two(n):
        raise NonPowerOfTwo(f"signal length must be a power of two, got {n}")
    if num_levels < 1:
        raise ValueError("num_levels must be >= 1")
    if (1 << num_levels) > n:
        raise TooManyLevels(f"2**{num_levels} exceeds signal length {n}")
    details = []
    approx = x
    for _ in range(num_levels):
        approx, detail = dwt_step(approx, filt)
        details.append(detail)
    return Decomposition(tuple(details), approx, num_levels, n)


def waverec(decomp: Decomposition, filt: WaveletFilter) -> np.ndarray:
    """Invert wavedec by running idwt_step from the deepest level upwards."""
    approx = np.asarray(decomp.final_approx, dtype=np.float64)
    for detail in reversed(decomp.details):
        approx = idwt_step(approx, detail, filt)
    return approx
