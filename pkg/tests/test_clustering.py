"""Tests for deterministic 1-D 2-means and its exhaustive oracle."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from waveparity.clustering import kmeans_1d, optimal_2means_1d
from waveparity.errors import TooFewPoints


def test_two_point_masses():
    model = kmeans_1d([0, 0, 10, 10])
    assert np.array_equal(model.centroids, [0.0, 10.0])
    assert model.assignments.tolist() == [0, 0, 1, 1]
    assert model.inertia == 0.0
    assert model.converged


def test_outlier_split():
    model = kmeans_1d([1, 2, 3, 100])
    assert np.array_equal(model.centroids, [2.0, 100.0])
    assert model.assignments.tolist() == [0, 0, 0, 1]
    assert model.inertia == 2.0


def test_identical_values_collapse():
    model = kmeans_1d([4.5, 4.5, 4.5])
    assert np.array_equal(model.centroids, [4.5, 4.5])
    assert model.assignments.tolist() == [0, 0, 0]
    assert model.inertia == 0.0
    assert model.converged
    assert model.iterations == 0


def test_too_few_points():
    with pytest.raises(TooFewPoints):
        kmeans_1d([1.0])
    with pytest.raises(TooFewPoints):
        optimal_2means_1d([1.0])


def test_parameter_validation():
    with pytest.raises(ValueError):
        kmeans_1d([1.0, 2.0], tolerance=0.0)
    with pytest.raises(ValueError):
        kmeans_1d([1.0, 2.0], max_iterations=0)
    with pytest.raises(ValueError):
        kmeans_1d([1.0, 2.0], init="bogus")


def test_determinism_bit_identical():
    rng = np.random.default_rng(99)
    values = rng.normal(size=500)
    a = kmeans_1d(values)
    b = kmeans_1d(values)
    assert np.array_equal(a.centroids, b.centroids)
    assert np.array_equal(a.assignments, b.assignments)
    assert a.inertia == b.inertia
    assert a.iterations == b.iterations
    assert np.array_equal(a.inertia_trace, b.inertia_trace)


def test_oracle_examples():
    model = optimal_2means_1d([0, 0, 10, 10])
    km = kmeans_1d([0, 0, 10, 10])
    assert np.array_equal(model.centroids, km.centroids)
    assert np.array_equal(model.assignments, km.assignments)
    assert model.inertia == km.inertia == 0.0

    assert optimal_2means_1d([1, 2, 3, 100]).inertia == 2.0


def test_oracle_pair_split():
    for a, b in [(0.0, 1.0), (-3.5, 2.25), (1e-6, 1e6)]:
        model = optimal_2means_1d([a, b])
        assert np.array_equal(model.centroids, [a, b])
        assert model.inertia == 0.0


def test_fixed_point_after_convergence():
    rng = np.random.default_rng(5)
    for _ in range(50):
        values = rng.normal(size=rng.integers(2, 60)) * rng.uniform(0.1, 50)
        model = kmeans_1d(values)
        assert model.converged
        d0 = np.abs(values - model.centroids[0])
        d1 = np.abs(values - model.centroids[1])
        again = (d1 < d0).astype(np.int8)
        assert np.array_equal(again, model.assignments)
        # and each centroid is the mean of its members
        for c in (0, 1):
            members = values[model.assignments == c]
            if members.size:
                assert model.centroids[c] == members.mean()


def test_monotone_descent():
    rng = np.random.default_rng(11)
    for _ in range(200):
        values = rng.normal(size=rng.integers(2, 40))
        model = kmeans_1d(values)
        trace = model.inertia_trace
        slack = 1e-9 * max(1.0, float(trace[0]))
        assert np.all(np.diff(trace) <= slack)


def test_oracle_lower_bound_random():
    rng = np.random.default_rng(2024)
    for _ in range(300):
        size = rng.integers(2, 25)
        values = rng.uniform(-100, 100, size=size)
        assert kmeans_1d(values).inertia >= optimal_2means_1d(values).inertia


@settings(deadline=None, max_examples=150)
@given(
    st.lists(
        st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False),
        min_size=2,
        max_size=24,
    )
)
def test_oracle_lower_bound_property(values):
    assert kmeans_1d(values).inertia >= optimal_2means_1d(values).inertia


def test_gap_separated_equality():
    rng = np.random.default_rng(77)
    for _ in range(100):
        n_lo = int(rng.integers(1, 12))
        n_hi = int(rng.integers(1, 12))
        lo = rng.uniform(0.0, 1.0, size=n_lo)
        gap = rng.uniform(2.5, 20.0)
        hi = rng.uniform(0.0, 1.0, size=n_hi) + 1.0 + gap  # diameters <= 1 < gap
        values = np.concatenate([lo, hi])
        rng.shuffle(values)
        km = kmeans_1d(values)
        oracle = optimal_2means_1d(values)
        assert km.inertia == oracle.inertia
        assert np.array_equal(np.sort(km.centroids), np.sort(oracle.centroids))


@given(
    st.lists(st.integers(-(2**20), 2**20), min_size=2, max_size=24),
    st.sampled_from([0.5, 2.0, 4.0, 1024.0]),
    st.integers(-(2**20), 2**20),
)
def test_affine_equivariance_of_assignments(ints, scale, shift):
    # power-of-two scale and integer shift keep the arithmetic exact
    values = np.asarray(ints, dtype=np.float64)
    transformed = scale * values + shift
    a = kmeans_1d(values)
    b = kmeans_1d(transformed)
    assert np.array_equal(a.assignments, b.assignments)


def test_empty_cluster_repair():
    # both start centroids sit right of every point, so cluster 1 empties
    model = kmeans_1d([0.0, 1.0, 2.0], init=(1.0, 100.0))
    assert set(model.assignments.tolist()) == {0, 1}
    assert model.converged
    # repair must not break the oracle bound
    assert model.inertia >= optimal_2means_1d([0.0, 1.0, 2.0]).inertia


def test_random_init_is_seeded():
    values = np.random.default_rng(3).normal(size=80)
    a = kmeans_1d(values, init="random", seed=42)
    b = kmeans_1d(values, init="random", seed=42)
    c = kmeans_1d(values, init="random", seed=43)
    assert np.array_equal(a.assignments, b.assignments)
    assert np.array_equal(a.centroids, b.centroids)
    assert c.iterations >= 1  # different seed still converges somewhere valid
    assert c.inertia >= optimal_2means_1d(values).inertia
