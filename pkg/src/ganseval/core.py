"""Domain types, distance measures and PCA-based ordering.

Everything downstream (metric matrices, the HTTP API, the CLI) builds on the
values defined here. All values are immutable after construction and all
operations are pure, so they can be shared freely across workers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateData, InvalidInput


def as_series(values, name: str = "series") -> np.ndarray:
    """Validate and return a time series as a read-only float64 vector.

    Requires length >= 2 and all-finite values.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidInput(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 2:
        raise InvalidInput(f"{name} must have length >= 2, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} contains non-finite values")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


def as_matrix(values, name: str = "matrix") -> np.ndarray:
    """Validate a set of equal-length series as a read-only M x T float64 matrix."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidInput(f"{name} must be two-dimensional, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 2:
        raise InvalidInput(f"{name} needs >= 1 rows and length >= 2, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} contains non-finite values")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


class DistanceMetric(enum.Enum):
    EUCLIDEAN = "ed"
    DTW = "dtw"

    @classmethod
    def parse(cls, token: str) -> "DistanceMetric":
        for m in cls:
            if m.value == token.lower():
                return m
        raise InvalidInput(f"unknown distance metric {token!r} (expected 'ed' or 'dtw')")


@dataclass(frozen=True, eq=False)
class RealDataset:
    """Reference corpus: N real series of identical length T, ids in file order."""

    values: np.ndarray  # (N, T), read-only

    def __post_init__(self):
        object.__setattr__(self, "values", as_matrix(self.values, "real dataset"))
        if self.n < 2:
            raise InvalidInput(f"real dataset needs >= 2 series, got {self.n}")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def t(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True, eq=False)
class GenerationRun:
    """Ordered iteration snapshots from one generator training run."""

    name: str
    iterations: tuple[tuple[int, np.ndarray], ...]  # (iteration_number, M x T)

    def __post_init__(self):
        validated = []
        prev = -1
        t_len = None
        for k, (num, snap) in enumerate(self.iterations):
            if num < 0 or num <= prev:
                raise InvalidInput(
                    f"iteration numbers must be strictly increasing non-negative "
                    f"integers; entry {k} has {num} after {prev}"
                )
            prev = num
            snap = as_matrix(snap, f"snapshot {num}")
            if t_len is None:
                t_len = snap.shape[1]
            elif snap.shape[1] != t_len:
                raise InvalidInput(
                    f"snapshot {num} has length {snap.shape[1]}, expected {t_len}"
                )
            validated.append((int(num), snap))
        if not validated:
            raise InvalidInput("a generation run needs at least one iteration")
        object.__setattr__(self, "iterations", tuple(validated))

    @property
    def t(self) -> int:
        return self.iterations[0][1].shape[1]

    @property
    def iteration_numbers(self) -> list[int]:
        return [num for num, _ in self.iterations]

    def snapshot(self, iteration: int) -> np.ndarray:
        for num, snap in self.iterations:
            if num == iteration:
                return snap
        raise InvalidInput(f"run {self.name!r} has no iteration {iteration}")


@dataclass(frozen=True, eq=False)
class PcaModel:
    """Per-time-point mean and unit first principal direction of the real data.

    Orientation is fixed: the largest-magnitude entry of ``pc1`` is positive,
    so repeated fits of the same data give the same sign.
    """

    mean: np.ndarray
    pc1: np.ndarray

    def __post_init__(self):
        mean = as_series(self.mean, "mean")
        pc1 = as_series(self.pc1, "pc1")
        if mean.shape != pc1.shape:
            raise InvalidInput("mean and pc1 must have equal length")
        if abs(np.linalg.norm(pc1) - 1.0) > 1e-9:
            raise InvalidInput("pc1 must be a unit vector")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "pc1", pc1)

    @property
    def t(self) -> int:
        return self.mean.shape[0]


def _canonical_pair(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Fix argument order so d(a, b) and d(b, a) run the exact same float ops.
    if a.shape[0] != b.shape[0]:
        return (a, b) if a.shape[0] < b.shape[0] else (b, a)
    for x, y in zip(a, b):
        if x < y:
            return a, b
        if y < x:
            return b, a
    return a, b


def euclidean_distance(a, b) -> float:
    """Euclidean distance between two equal-length series."""
    a = as_series(a, "a")
    b = as_series(b, "b")
    if a.shape[0] != b.shape[0]:
        raise InvalidInput(
            f"length mismatch: {a.shape[0]} vs {b.shape[0]} (ED needs equal lengths)"
        )
    a, b = _canonical_pair(a, b)
    d = a - b
    return float(np.sqrt(np.dot(d, d)))


def dtw_distance(a, b) -> float:
    """Dynamic time warping distance with squared-difference local cost.

    Full DP band (no warping window); final cumulative cost is square-rooted
    so DTW values sit on the same scale as Euclidean distances. Lengths may
    differ. For equal-length inputs the diagonal path is admissible, hence
    dtw_distance(a, b) <= euclidean_distance(a, b).
    """
    a = as_series(a, "a")
    b = as_series(b, "b")
    a, b = _canonical_pair(a, b)
    return float(np.sqrt(_kernels.dtw_squared_cost(a, b)))


def distance(a, b, metric: DistanceMetric) -> float:
    if metric is DistanceMetric.EUCLIDEAN:
        return euclidean_distance(a, b)
    return dtw_distance(a, b)


def fit_pca(real: RealDataset) -> PcaModel:
    """Fit the first principal component of the real data.

    Centered (not standardized) sample covariance; raises DegenerateData when
    every series is identical and no direction of variance exists.
    """
    x = real.values
    mean = x.mean(axis=0)
    centered = x - mean
    if not np.any(centered):
        raise DegenerateData(
            "real dataset has zero variance (all series identical); "
            "no principal direction exists"
        )
    cov = (centered.T @ centered) / (real.n - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    pc1 = eigvecs[:, -1]
    if eigvals[-1] <= 0:
        raise DegenerateData("covariance of real dataset has no positive eigenvalue")
    idx = int(np.argmax(np.abs(pc1)))
    if pc1[idx] < 0:
        pc1 = -pc1
    pc1 = pc1 / np.linalg.norm(pc1)
    return PcaModel(mean=mean, pc1=pc1)


def project_pc1(model: PcaModel, s) -> float:
    """Score of a series on the first principal direction: dot(s - mean, pc1)."""
    s = as_series(s, "s")
    if s.shape[0] != model.t:
        raise InvalidInput(f"length mismatch: series {s.shape[0]} vs model {model.t}")
    return float(np.dot(s - model.mean, model.pc1))


def sort_by_pc1(model: PcaModel, series_set) -> np.ndarray:
    """Indices of ``series_set`` rows ordered by ascending PC1 score.

    Ties break by ascending original index (stable), so the permutation is
    deterministic and usable as a cache-keyed row order.
    """
    mat = as_matrix(series_set, "series_set")
    if mat.shape[1] != model.t:
        raise InvalidInput(
            f"length mismatch: series_set T={mat.shape[1]} vs model T={model.t}"
        )
    scores = (mat - model.mean) @ model.pc1
    return np.argsort(scores, kind="stable")
