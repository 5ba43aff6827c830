"""Hot numeric kernels: DTW dynamic program and pairwise nearest-neighbor scans.

Two interchangeable backends live here. The default compiles the inner loops
with numba's ``@njit``; setting the environment variable
``GANSEVAL_DISABLE_NUMBA=1`` (or a failed numba import) selects a pure-numpy
path instead. Both backends produce identical float64 results because they
perform the same operations in the same order; tests assert this and
``benchmarks/bench_kernels.py`` compares their speed.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("GANSEVAL_DISABLE_NUMBA", "").strip() in {"1", "true", "yes"}

_INF = np.inf


def _dtw_sq_py(a: np.ndarray, b: np.ndarray) -> float:
    # Two-row DP over the full (no window) alignment grid.
    n = a.shape[0]
    m = b.shape[0]
    prev = np.empty(m, dtype=np.float64)
    curr = np.empty(m, dtype=np.float64)
    d = a[0] - b[0]
    prev[0] = d * d
    for j in range(1, m):
        d = a[0] - b[j]
        prev[j] = prev[j - 1] + d * d
    for i in range(1, n):
        d = a[i] - b[0]
        curr[0] = prev[0] + d * d
        for j in range(1, m):
            best = prev[j - 1]
            if prev[j] < best:
                best = prev[j]
            if curr[j - 1] < best:
                best = curr[j - 1]
            d = a[i] - b[j]
            curr[j] = best + d * d
        prev, curr = curr, prev
    return prev[m - 1]


def _min_ed_py(sources: np.ndarray, targets: np.ndarray) -> np.ndarray:
    # Same sequential accumulation order as the numba kernel so the two
    # backends agree bit-for-bit (pairwise numpy reductions would not).
    out = np.empty(sources.shape[0], dtype=np.float64)
    for i in range(sources.shape[0]):
        best = _INF
        for j in range(targets.shape[0]):
            acc = 0.0
            for t in range(targets.shape[1]):
                d = sources[i, t] - targets[j, t]
                acc += d * d
            if acc < best:
                best = acc
        out[i] = np.sqrt(best)
    return out


def _min_dtw_py(sources: np.ndarray, targets: np.ndarray) -> np.ndarray:
    out = np.empty(sources.shape[0], dtype=np.float64)
    for i in range(sources.shape[0]):
        best = _INF
        for j in range(targets.shape[0]):
            v = _dtw_sq_py(sources[i], targets[j])
            if v < best:
                best = v
        out[i] = np.sqrt(best)
    return out


if not _DISABLE:
    try:
        from numba import njit, prange

        _dtw_sq_nb = njit(cache=True, nogil=True)(_dtw_sq_py)

        @njit(cache=True, nogil=True, parallel=True)
        def _min_ed_nb(sources, targets):
            out = np.empty(sources.shape[0], dtype=np.float64)
            for i in prange(sources.shape[0]):
                best = _INF
                for j in range(targets.shape[0]):
                    acc = 0.0
                    for t in range(targets.shape[1]):
                        d = sources[i, t] - targets[j, t]
                        acc += d * d
                    if acc < best:
                        best = acc
                out[i] = np.sqrt(best)
            return out

        @njit(cache=True, nogil=True, parallel=True)
        def _min_dtw_nb(sources, targets):
            out = np.empty(sources.shape[0], dtype=np.float64)
            for i in prange(sources.shape[0]):
                best = _INF
                for j in range(targets.shape[0]):
                    v = _dtw_sq_nb(sources[i], targets[j])
                    if v < best:
                        best = v
                out[i] = np.sqrt(best)
            return out

        BACKEND = "numba"
        dtw_squared_cost = _dtw_sq_nb
        min_euclidean = _min_ed_nb
        min_dtw = _min_dtw_nb
    except ImportError:  # pragma: no cover - exercised only without numba
        BACKEND = "numpy"
        dtw_squared_cost = _dtw_sq_py
        min_euclidean = _min_ed_py
        min_dtw = _min_dtw_py
else:
    BACKEND = "numpy"
    dtw_squared_cost = _dtw_sq_py
    min_euclidean = _min_ed_py
    min_dtw = _min_dtw_py
