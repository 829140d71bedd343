"""Per-level coefficient statistics and the dataset feature tensor."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyVector, InconsistentShapes
from .wavelet import Decomposition

FEATURE_NAMES = ("energy", "l2_norm", "mav")
NUM_FEATURES = len(FEATURE_NAMES)


def _as_vector(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=np.float64).ravel()
    if c.size == 0:
        raise EmptyVector("coefficient vector is empty")
    return c


def energy(coeffs) -> float:
    """Sum of squared coefficients."""
    c = _as_vector(coeffs)
    return float((c * c).sum())


def l2_norm(coeffs) -> float:
    """Euclidean magnitude, sqrt(energy)."""
    return math.sqrt(energy(coeffs))


def mav(coeffs) -> float:
    """Mean absolute coefficient value."""
    c = _as_vector(coeffs)
    return float(np.abs(c).mean())


@dataclass(frozen=True)
class FeatureTensor:
    """Statistics per integer, per level, per feature; shape (N, levels, 3).

    Feature order follows FEATURE_NAMES. When includes_approx is true the last
    level row holds the statistics of the final approximation vector as an
    extra pseudo-level after the detail levels.
    """

    values: np.ndarray
    includes_approx: bool = False

    feature_names = FEATURE_NAMES

    @property
    def num_integers(self) -> int:
        return int(self.values.shape[0])

    @property
    def num_levels(self) -> int:
        return int(self.values.shape[1])

    @property
    def num_features(self) -> int:
        return int(self.values.shape[2])

    def level_labels(self) -> list[str]:
        """Short names per level row, e.g. ['d1', 'd2', 'd3', 'a3']."""
        depth = self.num_levels - (1 if self.includes_approx else 0)
        labels = [f"d{j + 1}" for j in range(depth)]
        if self.includes_approx:
            labels.append(f"a{depth}")
        return labels


def feature_tensor_from_batch(decomp: Decomposition, include_approx: bool = False) -> FeatureTensor:
    """Build the tensor from one batched decomposition (leading axis = integers)."""
    vectors = list(decomp.details)
    if include_approx:
        vectors.append(decomp.final_approx)
    rows = []
    for vec in vectors:
        arr = np.atleast_2d(np.asarray(vec, dtype=np.float64))
        e = (arr * arr).sum(axis=-1)
        rows.append(np.stack([e, np.sqrt(e), np.abs(arr).mean(axis=-1)], axis=-1))
    return FeatureTensor(values=np.stack(rows, axis=1), includes_approx=include_approx)


def build_feature_tensor(
    decomps: Sequence[Decomposition], include_approx: bool = False
) -> FeatureTensor:
    """Assemble the (N, levels, features) tensor from per-integer decompositions.

    All decompositions must agree on num_levels and signal_length; detail
    vectors only by default, with the final approximation appended as an extra
    pseudo-level when include_approx is set.
    """
    decomps = list(decomps)
    if not decomps:
        raise InconsistentShapes("need at least one decomposition")
    first = decomps[0]
    for d in decomps[1:]:
        if d.num_levels != first.num_levels or d.signal_length != first.signal_length:
            raise InconsistentShapes(
                "decompositions disagree on level count or signal length"
            )
    details = tuple(
        np.stack([np.asarray(d.details[j], dtype=np.float64) for d in decomps])
        for j in range(first.num_levels)
    )
    approx = np.stack([np.asarray(d.final_approx, dtype=np.float64) for d in decomps])
    batch = Decomposition(details, approx, first.num_levels, first.signal_length)
    return feature_tensor_from_batch(batch, include_approx=include_approx)
