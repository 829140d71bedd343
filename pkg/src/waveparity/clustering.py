"""One-dimensional 2-means: deterministic Lloyd iteration plus an exact oracle.

kmeans_1d initialises from the data minimum and maximum, which removes any
seed sensitivity. optimal_2means_1d scans every contiguous split of the
sorted values (the optimal 1-D 2-means partition is always such a threshold)
and exists as a brute-force reference; it evaluates candidates with the same
within-cluster-sum-of-squares routine Lloyd uses, so its inertia is a true
lower bound for kmeans_1d on the same data, with no float slack.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooFewPoints

DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_ITERATIONS = 300


@dataclass(frozen=True)
class ClusterModel:
    """Result of a 2-means fit on scalar values.

    inertia_trace records the within-cluster sum of squares after every
    centroid update, so Lloyd's monotone descent can be checked directly.
    """

    centroids: np.ndarray
    assignments: np.ndarray
    inertia: float
    iterations: int
    converged: bool
    inertia_trace: np.ndarray


def _partition_stats(values: np.ndarray, assignments: np.ndarray):
    """Cluster means and WCSS for a {0,1} partition with both clusters populated."""
    lo = values[assignments == 0]
    hi = values[assignments == 1]
    centroids = np.array([lo.mean(), hi.mean()])
    inertia = float(((values - centroids[assignments]) ** 2).sum())
    return centroids, inertia


def _degenerate_model(values: np.ndarray) -> ClusterModel:
    v = float(values[0])
    return ClusterModel(
        centroids=np.array([v, v]),
        assignments=np.zeros(values.size, dtype=np.int8),
        inertia=0.0,
        iterations=0,
        converged=True,
        inertia_trace=np.zeros(1),
    )


def _initial_centroids(values: np.ndarray, init, seed) -> np.ndarray:
    if isinstance(init, (tuple, list, np.ndarray)):
        c = np.asarray(init, dtype=np.float64).ravel()
        if c.size != 2:
            raise ValueError("explicit init needs exactly two centroids")
        return c.copy()
    if init == "minmax":
        return np.array([values.min(), values.max()])
    if init == "random":
        rng = np.random.default_rng(seed)
        picked = values[rng.choice(values.size, size=2, replace=False)]
        return np.sort(picked)
    raise ValueError(f"unknown init {init!r}")


def _repair_empty(values: np.ndarray, assignments: np.ndarray, centroids: np.ndarray) -> None:
    """Move the point farthest from the surviving centroid into an emptied cluster."""
    for empty in (0, 1):
        if np.any(assignments == empty):
            continue
        donor = 1 - empty
        distances = np.abs(values - centroids[donor])
        assignments[int(np.argmax(distances))] = empty


def kmeans_1d(
    values,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
    init="minmax",
    seed: int | None = None,
) -> ClusterModel:
    """Lloyd's algorithm with k = 2 on scalar values.

    Distance ties go to cluster 0. The loop stops when both centroids move
    less than ``tolerance`` or after ``max_iterations``. If a cluster empties
    mid-iteration the point farthest from the surviving centroid is moved
    across and iteration continues. All-identical inputs collapse to a single
    cluster with both centroids equal to the shared value.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size < 2:
        raise TooFewPoints(f"need at least two values, got {v.size}")
    if tolerance <= 0.0:
        raise ValueError("tolerance must be positive")
    if max_iterations < 1:
        raise ValueError("max_iterations must be >= 1")
    if np.all(v == v[0]):
        return _degenerate_model(v)

    centroids = _initial_centroids(v, init, seed)
    assignments = np.zeros(v.size, dtype=np.int8)
    trace: list[float] = []
    converged = False
    iterations = 0
    for _ in range(max_iterations):
        iterations += 1
        d0 = np.abs(v - centroids[0])
        d1 = np.abs(v - centroids[1])
        assignments = (d1 < d0).astype(np.int8)
        _repair_empty(v, assignments, centroids)
        new_centroids, inertia = _partition_stats(v, assignments)
        trace.append(inertia)
        moved = float(np.max(np.abs(new_centroids - centroids)))
        centroids = new_centroids
        if moved < tolerance:
            converged = True
            break
    return ClusterModel(
        centroids=centroids,
        assignments=assignments,
        inertia=trace[-1],
        iterations=iterations,
        converged=converged,
        inertia_trace=np.asarray(trace),
    )


def optimal_2means_1d(values) -> ClusterModel:
    """Exhaustive globally optimal 2-means for scalar values.

    Evaluates all N - 1 threshold partitions of the sorted values and keeps
    the first one attaining the minimal WCSS. O(N^2); intended as a test
    oracle, not a production path.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size < 2:
        raise TooFewPoints(f"need at least two values, got {v.size}")
    order = np.argsort(v, kind="stable")
    best = None
    for split in range(1, v.size):
        assignments = np.zeros(v.size, dtype=np.int8)
        assignments[order[split:]] = 1
        centroids, inertia = _partition_stats(v, assignments)
        if best is None or inertia < best[0]:
            best = (inertia, centroids, assignments)
    inertia, centroids, assignments = best
    return ClusterModel(
        centroids=centroids,
        assignments=assignments,
        inertia=inertia,
        iterations=0,
        converged=True,
        inertia_trace=np.array([inertia]),
    )
