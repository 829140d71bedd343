"""Parity prediction from wavelet-domain features of binary signals.

Pipeline: integers become fixed-length binary sample sequences, a multi-level
orthonormal DWT extracts per-level statistics (energy, L2 norm, mean absolute
value), each (level, feature) cell is split by deterministic 2-means, clusters
are mapped to parity classes by majority vote, and a weighted aggregate of the
resulting odd fractions yields a per-integer oddness score thresholded at 0.5.
"""

from . import errors
from .clustering import ClusterModel, kmeans_1d, optimal_2means_1d
from .codec import (
    BIT_ORDERS,
    LSB_FIRST,
    MSB_FIRST,
    BitSignal,
    decode,
    encode,
    encode_batch,
    pad_length,
)
from .config import RunConfig, parse_config_file
from .evaluation import (
    REFERENCE_ACCURACY,
    BoundaryStats,
    BucketAccuracy,
    EvalReport,
    SweepEntry,
    accuracy,
    boundary_report,
    confusion_counts,
    default_sweep_grid,
    evaluate,
    magnitude_buckets,
    make_dataset,
    per_cell_accuracies,
    scatter_data,
    sweep,
)
from .features import (
    FEATURE_NAMES,
    FeatureTensor,
    build_feature_tensor,
    energy,
    l2_norm,
    mav,
)
from .figures import render_scatter_svg
from .pipeline import (
    CellParity,
    FittedCells,
    PipelineResult,
    ProbabilityTensor,
    ScoreVector,
    build_probability_tensor,
    classify,
    fit_cells,
    map_clusters,
    oddness_scores,
    run_pipeline,
    scores_table,
)
from .wavelet import (
    FILTERS,
    Decomposition,
    WaveletFilter,
    db4_filter,
    dwt_step,
    get_filter,
    haar_filter,
    idwt_step,
    wavedec,
    waverec,
)

__version__ = "0.1.0"

__all__ = [
    "BIT_ORDERS",
    "BitSignal",
    "BoundaryStats",
    "BucketAccuracy",
    "CellParity",
    "ClusterModel",
    "Decomposition",
    "EvalReport",
    "FEATURE_NAMES",
    "FILTERS",
    "FeatureTensor",
    "FittedCells",
    "LSB_FIRST",
    "MSB_FIRST",
    "PipelineResult",
    "ProbabilityTensor",
    "REFERENCE_ACCURACY",
    "RunConfig",
    "ScoreVector",
    "SweepEntry",
    "WaveletFilter",
    "accuracy",
    "boundary_report",
    "build_feature_tensor",
    "build_probability_tensor",
    "classify",
    "confusion_counts",
    "db4_filter",
    "decode",
    "default_sweep_grid",
    "dwt_step",
    "encode",
    "encode_batch",
    "energy",
    "errors",
    "evaluate",
    "fit_cells",
    "get_filter",
    "haar_filter",
    "idwt_step",
    "kmeans_1d",
    "l2_norm",
    "magnitude_buckets",
    "make_dataset",
    "map_clusters",
    "mav",
    "oddness_scores",
    "optimal_2means_1d",
    "pad_length",
    "parse_config_file",
    "per_cell_accuracies",
    "render_scatter_svg",
    "run_pipeline",
    "scatter_data",
    "scores_table",
    "sweep",
    "wavedec",
    "waverec",
]
