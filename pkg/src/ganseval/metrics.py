"""Derived structures: INND/ONND matrices, time histograms, percentile stats.

INND (incoming) measures, per generated series, the minimal distance to any
real series: low values mean realistic-looking samples. ONND (outgoing)
measures, per real series, the minimal distance to any generated series:
uniformly low values mean the real variety is covered, persistently high
values for many real series are the mode-collapse signature.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import (
    DistanceMetric,
    GenerationRun,
    PcaModel,
    RealDataset,
    as_matrix,
    as_series,
    fit_pca,
    sort_by_pc1,
)
from .errors import DegenerateData, InvalidInput

DEFAULT_BINS = 20

# Centered coverage intervals, the 1/2/3-sigma analogs of a Gaussian.
BAND_QUANTILES = {
    "68": (0.16, 0.84),
    "95": (0.025, 0.975),
    "99.7": (0.0015, 0.9985),
}


class MatrixKind(enum.Enum):
    INND = "innd"
    ONND = "onnd"

    @classmethod
    def parse(cls, token: str) -> "MatrixKind":
        for k in cls:
            if k.value == token.lower():
                return k
        raise InvalidInput(f"unknown matrix kind {token!r} (expected 'innd' or 'onnd')")


@dataclass(frozen=True, eq=False)
class IterationViewMatrix:
    """Samples x iterations nearest-neighbor distance matrix.

    One column per iteration. ONND columns all have N rows in the fixed
    PC1 order of the real data; INND column k has that snapshot's M_k rows in
    the per-column PC1 order of the generated samples. ``row_order[k]`` maps
    display row -> original row index of the source matrix for column k.
    """

    kind: MatrixKind
    metric: DistanceMetric
    iterations: tuple[int, ...]
    columns: tuple[np.ndarray, ...]       # each (rows_k,) of distances, display order
    row_order: tuple[np.ndarray, ...]     # each (rows_k,) of original indices

    def __post_init__(self):
        if len(self.columns) != len(self.iterations) or len(self.row_order) != len(
            self.iterations
        ):
            raise InvalidInput("columns, row_order and iterations must align")
        for col in self.columns:
            if not np.all(np.isfinite(col)) or np.any(col < 0):
                raise InvalidInput("matrix cells must be finite and non-negative")

    @property
    def vmin(self) -> float:
        return float(min(col.min() for col in self.columns))

    @property
    def vmax(self) -> float:
        return float(max(col.max() for col in self.columns))


@dataclass(frozen=True, eq=False)
class TimeHistogram:
    """Per-time-step histogram of a series set: T x B count matrix."""

    bin_edges: np.ndarray   # (B+1,), strictly increasing
    counts: np.ndarray      # (T, B), int64

    def __post_init__(self):
        if np.any(np.diff(self.bin_edges) <= 0):
            raise InvalidInput("bin edges must be strictly increasing")
        if np.any(self.counts < 0):
            raise InvalidInput("histogram counts must be non-negative")


@dataclass(frozen=True, eq=False)
class RealStats:
    """Per-time-step median and centered 68/95/99.7 percentile bands."""

    median: np.ndarray                     # (T,)
    band68: tuple[np.ndarray, np.ndarray]  # (lo, hi), each (T,)
    band95: tuple[np.ndarray, np.ndarray]
    band997: tuple[np.ndarray, np.ndarray]

    def band(self, name: str) -> tuple[np.ndarray, np.ndarray]:
        return {"68": self.band68, "95": self.band95, "99.7": self.band997}[name]


def nearest_neighbor_distances(sources, targets, metric: DistanceMetric) -> np.ndarray:
    """For each source row, the minimal distance to any target row.

    INND = nearest_neighbor_distances(generated, real);
    ONND = nearest_neighbor_distances(real, generated).
    """
    src = as_matrix(sources, "sources")
    tgt = as_matrix(targets, "targets")
    if src.shape[0] == 0 or tgt.shape[0] == 0:
        raise InvalidInput("sources and targets must be non-empty")
    if src.shape[1] != tgt.shape[1]:
        raise InvalidInput(
            f"length mismatch: sources T={src.shape[1]} vs targets T={tgt.shape[1]}"
        )
    if metric is DistanceMetric.EUCLIDEAN:
        return _kernels.min_euclidean(src, tgt)
    return _kernels.min_dtw(src, tgt)


def build_iteration_view(
    real: RealDataset,
    run: GenerationRun,
    metric: DistanceMetric,
    kind: MatrixKind,
    pca: PcaModel | None = None,
) -> IterationViewMatrix:
    """Assemble the samples x iterations matrix for one run/metric/kind."""
    if run.t != real.t:
        raise InvalidInput(f"run T={run.t} does not match real T={real.t}")
    if pca is None:
        pca = fit_pca(real)
    real_order = sort_by_pc1(pca, real.values)
    columns = []
    orders = []
    for _, snapshot in run.iterations:
        if kind is MatrixKind.ONND:
            dists = nearest_neighbor_distances(real.values, snapshot, metric)
            order = real_order
        else:
            dists = nearest_neighbor_distances(snapshot, real.values, metric)
            order = sort_by_pc1(pca, snapshot)
        columns.append(dists[order])
        orders.append(order)
    return IterationViewMatrix(
        kind=kind,
        metric=metric,
        iterations=tuple(run.iteration_numbers),
        columns=tuple(columns),
        row_order=tuple(orders),
    )


def compute_bin_edges(real: RealDataset, bins: int = DEFAULT_BINS) -> np.ndarray:
    """Equal-width bin edges spanning the real data's full value range.

    Edges are computed once from the real data and reused for every iteration
    so juxtaposed histograms stay comparable; lookup clamps outliers into the
    edge bins (see time_histogram).
    """
    if bins < 2:
        raise InvalidInput(f"need at least 2 bins, got {bins}")
    lo = float(real.values.min())
    hi = float(real.values.max())
    if lo == hi:
        raise DegenerateData(
            f"real data has zero value range (all values == {lo}); cannot bin"
        )
    return np.linspace(lo, hi, bins + 1)


def time_histogram(series_set, edges: np.ndarray) -> TimeHistogram:
    """Count series values per (time step, bin).

    Bins are [edge_b, edge_{b+1}) with the last bin closed; values outside
    the edge range clamp into the first/last bin, so every column sums to M.
    """
    mat = as_matrix(series_set, "series_set")
    edges = np.asarray(edges, dtype=np.float64)
    n_bins = edges.shape[0] - 1
    idx = np.searchsorted(edges, mat, side="right") - 1
    idx = np.clip(idx, 0, n_bins - 1)
    t_len = mat.shape[1]
    counts = np.zeros((t_len, n_bins), dtype=np.int64)
    for t in range(t_len):
        counts[t] = np.bincount(idx[:, t], minlength=n_bins)
    return TimeHistogram(bin_edges=edges.copy(), counts=counts)


def real_stats(real: RealDataset) -> RealStats:
    """Median and nested centered percentile bands of the real data.

    Quantiles use linear interpolation between order statistics, which keeps
    the bands continuous as the dataset grows and guarantees nesting.
    """
    x = real.values
    med = np.quantile(x, 0.5, axis=0)
    bands = {}
    for name, (lo_q, hi_q) in BAND_QUANTILES.items():
        bands[name] = (
            np.quantile(x, lo_q, axis=0),
            np.quantile(x, hi_q, axis=0),
        )
    return RealStats(
        median=med, band68=bands["68"], band95=bands["95"], band997=bands["99.7"]
    )


def diff_to_median(s, stats: RealStats) -> np.ndarray:
    """Absolute element-wise difference between a series and the real median."""
    s = as_series(s, "s")
    if s.shape[0] != stats.median.shape[0]:
        raise InvalidInput(
            f"length mismatch: series {s.shape[0]} vs stats {stats.median.shape[0]}"
        )
    return np.abs(s - stats.median)


def percentile_membership(s, stats: RealStats) -> str | None:
    """Smallest percentile band fully containing the series, or None.

    Returns "68", "95" or "99.7"; membership at each time step is inclusive
    of the band endpoints.
    """
    s = as_series(s, "s")
    if s.shape[0] != stats.median.shape[0]:
        raise InvalidInput(
            f"length mismatch: series {s.shape[0]} vs stats {stats.median.shape[0]}"
        )
    for name in ("68", "95", "99.7"):
        lo, hi = stats.band(name)
        if np.all((s >= lo) & (s <= hi)):
            return name
    return None
