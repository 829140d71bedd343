"""Tests for per-level statistics and feature tensor assembly."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from waveparity import codec
from waveparity.errors import EmptyVector, InconsistentShapes
from waveparity.features import (
    FEATURE_NAMES,
    build_feature_tensor,
    energy,
    feature_tensor_from_batch,
    l2_norm,
    mav,
)
from waveparity.wavelet import haar_filter, wavedec


def test_energy_examples():
    assert energy([0, 0, 0]) == 0.0
    assert energy([3, 4]) == 25.0
    d1 = wavedec(codec.encode(5, 8).samples, haar_filter(), 1).details[0]
    assert abs(energy(d1) - 1.0) < 1e-12


def test_l2_norm_examples():
    assert l2_norm([0, 0]) == 0.0
    assert l2_norm([3, 4]) == 5.0
    assert l2_norm([-2]) == 2.0


def test_mav_examples():
    assert mav([0, 0, 0, 0]) == 0.0
    assert mav([-1, 2, -3, 4]) == 2.5
    assert mav([-7.5]) == 7.5


@pytest.mark.parametrize("fn", [energy, l2_norm, mav])
def test_empty_vector_rejected(fn):
    with pytest.raises(EmptyVector):
        fn([])


finite_vectors = st.lists(
    st.floats(-100, 100, allow_nan=False, width=32), min_size=1, max_size=12
)


@given(finite_vectors)
def test_sign_invariance(values):
    flipped = [-v for v in values]
    assert energy(values) == energy(flipped)
    assert l2_norm(values) == l2_norm(flipped)
    assert mav(values) == mav(flipped)


@given(finite_vectors, st.randoms(use_true_random=False))
def test_permutation_invariance(values, rnd):
    shuffled = list(values)
    rnd.shuffle(shuffled)
    assert abs(energy(values) - energy(shuffled)) <= 1e-9 * max(1.0, energy(values))
    assert abs(mav(values) - mav(shuffled)) <= 1e-9 * max(1.0, mav(values))


def test_tensor_zero_signal():
    decomp = wavedec(codec.encode(0, 8).samples, haar_filter(), 2)
    tensor = build_feature_tensor([decomp])
    assert tensor.values.shape == (1, 2, 3)
    assert np.all(tensor.values == 0.0)


def test_tensor_known_row():
    decomp = wavedec(codec.encode(5, 8).samples, haar_filter(), 1)
    tensor = build_feature_tensor([decomp])
    expected = [1.0, 1.0, 2.0 / np.sqrt(2.0) / 4.0]  # energy, l2, mav of d1
    assert np.allclose(tensor.values[0, 0], expected, atol=1e-12)
    assert abs(tensor.values[0, 0, 2] - 0.35355339) < 1e-7


def test_tensor_invariants_on_real_data():
    decomps = [
        wavedec(codec.encode(n, 16).samples, haar_filter(), 3) for n in range(40)
    ]
    tensor = build_feature_tensor(decomps)
    assert tensor.feature_names == FEATURE_NAMES
    assert tensor.num_features == 3
    assert np.all(tensor.values >= 0.0)
    sq = tensor.values[:, :, 1] ** 2
    assert np.all(np.abs(sq - tensor.values[:, :, 0]) <= 1e-9 * np.maximum(1.0, sq))


def test_tensor_rejects_inconsistent_shapes():
    a = wavedec(codec.encode(1, 8).samples, haar_filter(), 2)
    b = wavedec(codec.encode(1, 16).samples, haar_filter(), 2)
    c = wavedec(codec.encode(1, 8).samples, haar_filter(), 3)
    with pytest.raises(InconsistentShapes):
        build_feature_tensor([a, b])
    with pytest.raises(InconsistentShapes):
        build_feature_tensor([a, c])
    with pytest.raises(InconsistentShapes):
        build_feature_tensor([])


def test_include_approx_adds_pseudo_level():
    decomp = wavedec(codec.encode(9, 16).samples, haar_filter(), 3)
    plain = build_feature_tensor([decomp])
    extended = build_feature_tensor([decomp], include_approx=True)
    assert plain.num_levels == 3
    assert extended.num_levels == 4
    assert extended.level_labels() == ["d1", "d2", "d3", "a3"]
    assert np.array_equal(extended.values[:, :3], plain.values)
    approx = decomp.final_approx
    assert np.isclose(extended.values[0, 3, 0], energy(approx))
    assert np.isclose(extended.values[0, 3, 2], mav(approx))


def test_batch_tensor_matches_list_tensor():
    values = np.arange(10, 30)
    batch_decomp = wavedec(codec.encode_batch(values, 16), haar_filter(), 3)
    from_batch = feature_tensor_from_batch(batch_decomp, include_approx=True)
    singles = [wavedec(codec.encode(int(v), 16).samples, haar_filter(), 3) for v in values]
    from_list = build_feature_tensor(singles, include_approx=True)
    assert np.array_equal(from_batch.values, from_list.values)
