"""End-to-end orchestration: encode, decompose, featurise, cluster, vote, score.

Clustering never sees parity labels. fit_cells covers the unsupervised half of
a run (encoding through per-cell 2-means); run_pipeline then reveals the
ground-truth labels to map clusters to parity classes, fill the probability
tensor, and aggregate weighted oddness scores.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .clustering import ClusterModel, kmeans_1d
from .codec import encode_batch
from .config import RunConfig
from .errors import LengthMismatch, NonPositiveWeight, ShapeMismatch
from .features import FeatureTensor, feature_tensor_from_batch
from .wavelet import get_filter, wavedec

ODD = 1
EVEN = 0


def label_name(label: int) -> str:
    return "odd" if int(label) == ODD else "even"


@dataclass(frozen=True)
class CellParity:
    """Majority-vote mapping of one cell's clusters to parity classes.

    An empty cluster gets the uninformative fraction 0.5 and is never
    odd-dominant; a tie between two populated clusters marks cluster 1 as
    odd-dominant (and cluster 0 as even-dominant).
    """

    odd_fraction: tuple[float, float]
    odd_dominant: int
    cluster_sizes: tuple[int, int]


@dataclass(frozen=True)
class ProbabilityTensor:
    """Per-integer odd fraction of its assigned cluster; shape (N, levels, features)."""

    values: np.ndarray


@dataclass(frozen=True)
class ScoreVector:
    """Oddness scores plus, once classified, the parity predictions."""

    scores: np.ndarray
    weights: tuple[float, ...]
    normalizer: float
    predictions: np.ndarray | None = None


def map_clusters(model: ClusterModel, parity_labels) -> CellParity:
    """Per-cluster odd fractions plus the odd-dominant cluster index."""
    labels = np.asarray(parity_labels).ravel()
    if labels.shape[0] != model.assignments.shape[0]:
        raise LengthMismatch(
            f"{labels.shape[0]} labels vs {model.assignments.shape[0]} assignments"
        )
    fractions = []
    sizes = []
    for c in (0, 1):
        members = labels[model.assignments == c]
        sizes.append(int(members.size))
        fractions.append(float(members.mean()) if members.size else 0.5)
    if sizes[1] == 0:
        dominant = 0
    elif sizes[0] == 0:
        dominant = 1
    else:
        dominant = 1 if fractions[1] >= fractions[0] else 0
    return CellParity(
        odd_fraction=(fractions[0], fractions[1]),
        odd_dominant=dominant,
        cluster_sizes=(sizes[0], sizes[1]),
    )


def _tensor_from_maps(models, maps, n: int) -> ProbabilityTensor:
    values = np.empty((n, len(models), len(models[0])), dtype=np.float64)
    for j, row in enumerate(models):
        for f, model in enumerate(row):
            fractions = np.asarray(maps[j][f].odd_fraction)
            values[:, j, f] = fractions[model.assignments]
    return ProbabilityTensor(values)


def build_probability_tensor(models, parity_labels) -> ProbabilityTensor:
    """values[n, j, f] = odd fraction of the cluster integer n fell into in cell (j, f)."""
    grid = [tuple(row) for row in models]
    if not grid or not grid[0]:
        raise ShapeMismatch("model grid must be nonempty")
    labels = np.asarray(parity_labels).ravel()
    n = labels.shape[0]
    width = len(grid[0])
    for row in grid:
        if len(row) != width:
            raise ShapeMismatch("model grid rows differ in length")
        for model in row:
            if model.assignments.shape[0] != n:
                raise ShapeMismatch("a cell model covers a different number of integers")
    maps = [[map_clusters(model, labels) for model in row] for row in grid]
    return _tensor_from_maps(grid, maps, n)


def oddness_scores(probabilities, weights) -> ScoreVector:
    """Aggregate the probability tensor into one oddness score per integer.

    Scores are the weighted mean over all (level, feature) cells with the
    level weight repeated across features, so the normaliser equals
    num_features * sum(weights) and every score lies in [0, 1].
    """
    values = (
        probabilities.values
        if isinstance(probabilities, ProbabilityTensor)
        else np.asarray(probabilities, dtype=np.float64)
    )
    if values.ndim != 3:
        raise ShapeMismatch(f"probability tensor must be 3-D, got shape {values.shape}")
    w = np.asarray(weights, dtype=np.float64).ravel()
    if w.shape[0] != values.shape[1]:
        raise LengthMismatch(f"{w.shape[0]} weights for {values.shape[1]} levels")
    if not np.all(w > 0.0):
        raise NonPositiveWeight("weights must all be strictly positive")
    cell_weights = np.repeat(w, values.shape[2])
    flat = values.reshape(values.shape[0], -1)
    # numerator and normaliser accumulate in the same order, term by term, so
    # an all-ones probability row lands on exactly 1.0 and no score exceeds it
    numerator = np.zeros(flat.shape[0], dtype=np.float64)
    normalizer = 0.0
    for k, cell_weight in enumerate(cell_weights):
        numerator += cell_weight * flat[:, k]
        normalizer += cell_weight * 1.0
    return ScoreVector(
        scores=numerator / normalizer,
        weights=tuple(float(x) for x in w),
        normalizer=normalizer,
    )


def classify(scores, threshold: float = 0.5) -> np.ndarray:
    """Predict odd for scores strictly above the threshold, even otherwise."""
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie strictly between 0 and 1")
    s = scores.scores if isinstance(scores, ScoreVector) else np.asarray(scores, dtype=np.float64)
    return (s > threshold).astype(np.int8)


@dataclass(frozen=True)
class FittedCells:
    """Unsupervised state of a run: features and per-cell cluster models, no labels."""

    config: RunConfig
    integers: np.ndarray
    signal_length: int
    feature_tensor: FeatureTensor
    models: tuple[tuple[ClusterModel, ...], ...]


@dataclass(frozen=True)
class PipelineResult:
    """Everything a full run produces."""

    config: RunConfig
    integers: np.ndarray
    labels: np.ndarray
    signal_length: int
    feature_tensor: FeatureTensor
    models: tuple[tuple[ClusterModel, ...], ...]
    parity_maps: tuple[tuple[CellParity, ...], ...]
    probabilities: ProbabilityTensor
    score_vector: ScoreVector

    @property
    def scores(self) -> np.ndarray:
        return self.score_vector.scores

    @property
    def predictions(self) -> np.ndarray:
        return self.score_vector.predictions


def _single_point_model(values: np.ndarray) -> ClusterModel:
    # a one-integer dataset cannot be split; mirror the all-identical rule
    v = float(np.asarray(values).ravel()[0])
    return ClusterModel(
        centroids=np.array([v, v]),
        assignments=np.zeros(1, dtype=np.int8),
        inertia=0.0,
        iterations=0,
        converged=True,
        inertia_trace=np.zeros(1),
    )


def fit_cells(config: RunConfig) -> FittedCells:
    """Unsupervised half of a run: encode, transform, featurise, cluster.

    Parity labels are deliberately absent from this function.
    """
    config.validate()
    integers = np.arange(config.range_start, config.range_end + 1, dtype=np.int64)
    length = config.signal_length
    signals = encode_batch(integers, length, config.bit_order)
    decomp = wavedec(signals, get_filter(config.wavelet), config.num_levels)
    tensor = feature_tensor_from_batch(decomp, include_approx=config.include_approx)
    init, seed = config.resolved_init()
    models = []
    for j in range(tensor.num_levels):
        row = []
        for f in range(tensor.num_features):
            cell_values = tensor.values[:, j, f]
            if cell_values.size < 2:
                row.append(_single_point_model(cell_values))
            else:
                row.append(
                    kmeans_1d(
                        cell_values,
                        tolerance=config.kmeans_tolerance,
                        max_iterations=config.kmeans_max_iterations,
                        init=init,
                        seed=seed,
                    )
                )
        models.append(tuple(row))
    return FittedCells(
        config=config,
        integers=integers,
        signal_length=length,
        feature_tensor=tensor,
        models=tuple(models),
    )


def run_pipeline(config: RunConfig) -> PipelineResult:
    """Execute the full scoring pipeline for one configuration, deterministically."""
    fitted = fit_cells(config)
    # ground truth enters only now, after clustering is done
    labels = (fitted.integers % 2).astype(np.int8)
    maps = tuple(tuple(map_clusters(m, labels) for m in row) for row in fitted.models)
    probabilities = _tensor_from_maps(fitted.models, maps, labels.shape[0])
    score_vector = oddness_scores(probabilities, config.resolved_weights())
    predictions = classify(score_vector, config.threshold)
    return PipelineResult(
        config=config,
        integers=fitted.integers,
        labels=labels,
        signal_length=fitted.signal_length,
        feature_tensor=fitted.feature_tensor,
        models=fitted.models,
        parity_maps=maps,
        probabilities=probabilities,
        score_vector=replace(score_vector, predictions=predictions),
    )


def scores_table(result: PipelineResult) -> str:
    """Scores CSV: one row per integer with columns n, label, score, prediction."""
    lines = ["n,label,score,prediction"]
    for n, label, score, pred in zip(
        result.integers, result.labels, result.scores, result.predictions
    ):
        lines.append(f"{int(n)},{label_name(label)},{score:.17g},{label_name(pred)}")
    return "\n".join(lines) + "\n"
