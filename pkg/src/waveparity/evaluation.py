"""Dataset construction, accuracy, error analysis, and configuration sweeps."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, replace

import numpy as np

from .config import DEFAULT_BOUNDARY_BAND, DEFAULT_BUCKET_SIZE, RunConfig
from .errors import (
    ConfigError,
    EmptyInput,
    InvalidBand,
    InvalidRange,
    LengthMismatch,
    WaveparityError,
)
from .features import FEATURE_NAMES
from .pipeline import PipelineResult, run_pipeline

# headline number that run reports measure themselves against
REFERENCE_ACCURACY = 0.6967

SWEEPABLE_FIELDS = ("bit_order", "include_approx", "num_levels", "wavelet", "weights")


def make_dataset(range_start: int, range_end: int):
    """Ascending integers of the inclusive range plus parity labels (1 = odd)."""
    if range_start < 0 or range_end < range_start:
        raise InvalidRange(f"invalid range [{range_start}, {range_end}]")
    integers = np.arange(range_start, range_end + 1, dtype=np.int64)
    return integers, (integers % 2).astype(np.int8)


def accuracy(predictions, labels) -> float:
    """Fraction of matching entries."""
    p = np.asarray(predictions).ravel()
    l = np.asarray(labels).ravel()
    if p.shape[0] != l.shape[0]:
        raise LengthMismatch(f"{p.shape[0]} predictions vs {l.shape[0]} labels")
    if p.shape[0] == 0:
        raise EmptyInput("accuracy of zero items is undefined")
    return float(np.mean(p == l))


def confusion_counts(predictions, labels) -> dict[str, int]:
    """Counts keyed as <true>_as_<predicted>."""
    p = np.asarray(predictions).ravel()
    l = np.asarray(labels).ravel()
    if p.shape[0] != l.shape[0]:
        raise LengthMismatch(f"{p.shape[0]} predictions vs {l.shape[0]} labels")
    return {
        "odd_as_odd": int(np.sum((l == 1) & (p == 1))),
        "odd_as_even": int(np.sum((l == 1) & (p == 0))),
        "even_as_odd": int(np.sum((l == 0) & (p == 1))),
        "even_as_even": int(np.sum((l == 0) & (p == 0))),
    }


def per_cell_accuracies(result: PipelineResult) -> np.ndarray:
    """Standalone accuracy of each (level, feature) cell.

    Each cluster predicts its own majority parity (odd when its odd fraction
    exceeds 0.5, even otherwise), which can never lose to chance on the data
    the cell was fitted on.
    """
    labels = result.labels
    shape = (len(result.models), len(result.models[0]))
    out = np.empty(shape)
    for j, row in enumerate(result.models):
        for f, model in enumerate(row):
            fractions = result.parity_maps[j][f].odd_fraction
            cluster_label = np.array([1 if frac > 0.5 else 0 for frac in fractions], np.int8)
            out[j, f] = float(np.mean(cluster_label[model.assignments] == labels))
    return out


@dataclass(frozen=True)
class BucketAccuracy:
    """Accuracy over one magnitude bucket [lower, upper]."""

    lower: int
    upper: int
    count: int
    accuracy: float


def magnitude_buckets(integers, predictions, labels, bucket_size: int = DEFAULT_BUCKET_SIZE):
    """Accuracy per floor(n / bucket_size) bucket, ascending; empty buckets omitted."""
    if bucket_size < 1:
        raise ValueError("bucket_size must be >= 1")
    ints = np.asarray(integers).ravel()
    p = np.asarray(predictions).ravel()
    l = np.asarray(labels).ravel()
    buckets = []
    for bucket_id in np.unique(ints // bucket_size):
        mask = (ints // bucket_size) == bucket_id
        buckets.append(
            BucketAccuracy(
                lower=int(bucket_id) * bucket_size,
                upper=(int(bucket_id) + 1) * bucket_size - 1,
                count=int(mask.sum()),
                accuracy=float(np.mean(p[mask] == l[mask])),
            )
        )
    return buckets


@dataclass(frozen=True)
class BoundaryStats:
    """Misclassification inside vs outside the |score - 0.5| < band region."""

    band: float
    inside_count: int
    outside_count: int
    inside_error_rate: float | None
    outside_error_rate: float | None


def boundary_report(scores, predictions, labels, band: float = DEFAULT_BOUNDARY_BAND) -> BoundaryStats:
    """Count integers scored within the band and compare error rates across it."""
    if not 0.0 < band < 0.5:
        raise InvalidBand(f"band must lie strictly between 0 and 0.5, got {band}")
    s = np.asarray(scores).ravel()
    p = np.asarray(predictions).ravel()
    l = np.asarray(labels).ravel()
    inside = np.abs(s - 0.5) < band
    wrong = p != l
    def _rate(mask):
        return float(np.mean(wrong[mask])) if mask.any() else None
    return BoundaryStats(
        band=band,
        inside_count=int(inside.sum()),
        outside_count=int((~inside).sum()),
        inside_error_rate=_rate(inside),
        outside_error_rate=_rate(~inside),
    )


def scatter_data(integers, scores, labels, range_start=None, range_end=None):
    """Points (n, score, parity) for plotting, optionally restricted to a range."""
    ints = np.asarray(integers).ravel()
    s = np.asarray(scores).ravel()
    l = np.asarray(labels).ravel()
    mask = np.ones(ints.shape[0], dtype=bool)
    if range_start is not None:
        mask &= ints >= range_start
    if range_end is not None:
        mask &= ints <= range_end
    return [
        (int(n), float(score), int(parity))
        for n, score, parity in zip(ints[mask], s[mask], l[mask])
    ]


@dataclass(frozen=True)
class EvalReport:
    """Evaluation summary of one pipeline run."""

    n: int
    overall_accuracy: float
    delta_vs_reference: float
    confusion: dict[str, int]
    per_cell_accuracy: list[dict]
    magnitude_buckets: list[BucketAccuracy]
    boundary: BoundaryStats
    config: dict

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "overall_accuracy": self.overall_accuracy,
            "reference_accuracy": REFERENCE_ACCURACY,
            "delta_vs_reference": self.delta_vs_reference,
            "confusion": dict(self.confusion),
            "per_cell_accuracy": [dict(cell) for cell in self.per_cell_accuracy],
            "magnitude_buckets": [
                {
                    "lower": b.lower,
                    "upper": b.upper,
                    "count": b.count,
                    "accuracy": b.accuracy,
                }
                for b in self.magnitude_buckets
            ],
            "boundary": {
                "band": self.boundary.band,
                "inside_count": self.boundary.inside_count,
                "outside_count": self.boundary.outside_count,
                "inside_error_rate": self.boundary.inside_error_rate,
                "outside_error_rate": self.boundary.outside_error_rate,
            },
            "config": dict(self.config),
        }


def evaluate(
    result: PipelineResult,
    bucket_size: int = DEFAULT_BUCKET_SIZE,
    boundary_band: float = DEFAULT_BOUNDARY_BAND,
) -> EvalReport:
    """Build the evaluation report for a finished run."""
    labels = result.labels
    predictions = result.predictions
    cm = confusion_counts(predictions, labels)
    correct = cm["odd_as_odd"] + cm["even_as_even"]
    overall = correct / labels.size
    cells = per_cell_accuracies(result)
    level_names = result.feature_tensor.level_labels()
    per_cell = []
    for j, name in enumerate(level_names):
        row: dict = {"level": name}
        for f, feature in enumerate(FEATURE_NAMES):
            row[feature] = float(cells[j, f])
        per_cell.append(row)
    return EvalReport(
        n=int(labels.size),
        overall_accuracy=float(overall),
        delta_vs_reference=float(overall - REFERENCE_ACCURACY),
        confusion=cm,
        per_cell_accuracy=per_cell,
        magnitude_buckets=magnitude_buckets(
            result.integers, predictions, labels, bucket_size=bucket_size
        ),
        boundary=boundary_report(result.scores, predictions, labels, band=boundary_band),
        config=result.config.to_dict(),
    )


def report_json(report: EvalReport, artifacts=None) -> str:
    """Serialise a report (plus optional artifact checksums) with stable key order."""
    payload = report.to_dict()
    if artifacts is not None:
        payload["artifacts"] = [
            {"kind": kind, "path": str(path), "sha256": digest}
            for kind, path, digest in artifacts
        ]
    return json.dumps(payload, indent=2) + "\n"


@dataclass(frozen=True)
class SweepEntry:
    """One grid point of a sweep: its config and either a report or an error."""

    config: RunConfig
    report: EvalReport | None
    error: str | None

    @property
    def accuracy(self) -> float | None:
        return self.report.overall_accuracy if self.report is not None else None


def default_sweep_grid() -> dict:
    """The standard reproduction grid: bit order x approx inclusion x weight scheme."""
    return {
        "bit_order": ["lsb_first", "msb_first"],
        "include_approx": [False, True],
        "weights": [None, "uniform"],
    }


def sweep(
    base_config: RunConfig,
    grid: dict,
    bucket_size: int = DEFAULT_BUCKET_SIZE,
    boundary_band: float = DEFAULT_BOUNDARY_BAND,
) -> list[SweepEntry]:
    """Run the pipeline once per point of the cartesian grid.

    Entries come back sorted by accuracy descending, ties broken by the
    canonical config string; a failing configuration is recorded with its
    error message instead of aborting the sweep.
    """
    if not grid:
        raise ValueError("grid must be nonempty")
    for key in grid:
        if key not in SWEEPABLE_FIELDS:
            raise ConfigError(f"cannot sweep {key!r}; sweepable: {SWEEPABLE_FIELDS}")
    names = sorted(grid)
    entries = []
    for combo in itertools.product(*(list(grid[name]) for name in names)):
        cfg = replace(base_config, **dict(zip(names, combo)))
        try:
            result = run_pipeline(cfg)
            report = evaluate(result, bucket_size=bucket_size, boundary_band=boundary_band)
            entries.append(SweepEntry(config=cfg, report=report, error=None))
        except WaveparityError as exc:
            entries.append(SweepEntry(config=cfg, report=None, error=str(exc)))

    def _order(entry: SweepEntry):
        if entry.report is None:
            return (1, 0.0, entry.config.sort_key())
        return (0, -entry.report.overall_accuracy, entry.config.sort_key())

    entries.sort(key=_order)
    return entries


def sweep_json(entries) -> str:
    """Serialise ranked sweep entries with stable key order."""
    payload = []
    for rank, entry in enumerate(entries, start=1):
        item = {
            "rank": rank,
            "accuracy": entry.accuracy,
            "delta_vs_reference": (
                entry.report.delta_vs_reference if entry.report is not None else None
            ),
            "error": entry.error,
            "config": entry.config.to_dict(),
        }
        payload.append(item)
    return json.dumps({"reference_accuracy": REFERENCE_ACCURACY, "entries": payload}, indent=2) + "\n"
