"""ganseval: nearest-neighbor-distance workbench for GAN time-series output."""

from .core import (
    DistanceMetric,
    GenerationRun,
    PcaModel,
    RealDataset,
    dtw_distance,
    euclidean_distance,
    fit_pca,
    project_pc1,
    sort_by_pc1,
)
from .metrics import (
    IterationViewMatrix,
    MatrixKind,
    RealStats,
    TimeHistogram,
    build_iteration_view,
    compute_bin_edges,
    diff_to_median,
    nearest_neighbor_distances,
    percentile_membership,
    real_stats,
    time_histogram,
)
from .workspace import Workspace, load_real, load_run

__all__ = [
    "DistanceMetric",
    "GenerationRun",
    "IterationViewMatrix",
    "MatrixKind",
    "PcaModel",
    "RealDataset",
    "RealStats",
    "TimeHistogram",
    "Workspace",
    "build_iteration_view",
    "compute_bin_edges",
    "diff_to_median",
    "dtw_distance",
    "euclidean_distance",
    "fit_pca",
    "load_real",
    "load_run",
    "nearest_neighbor_distances",
    "percentile_membership",
    "project_pc1",
    "real_stats",
    "sort_by_pc1",
    "time_histogram",
]

__version__ = "0.1.0"
