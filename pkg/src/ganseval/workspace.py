"""Workspace ingestion, validation and the content-addressed artifact cache.

On-disk layout::

    <root>/real.csv               headerless CSV, one real series per row
    <root>/runs/<dir>/run.json    manifest: {"name", "iterations": [{"iteration", "file"}]}
    <root>/runs/<dir>/*.csv       iteration snapshots, same CSV convention
    <root>/.ganseval-cache/       one JSON file per cached artifact

Cache entries are keyed by a SHA-256 hash of the canonical input bytes plus
the parameter string, so edits to any input file invalidate exactly the
artifacts that depend on it.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

import numpy as np

from .core import DistanceMetric, GenerationRun, PcaModel, RealDataset, fit_pca, sort_by_pc1
from .errors import (
    FormatError,
    InvalidInput,
    InvalidManifest,
    MissingFile,
    StorageError,
)
from .metrics import (
    DEFAULT_BINS,
    IterationViewMatrix,
    MatrixKind,
    RealStats,
    TimeHistogram,
    build_iteration_view,
    compute_bin_edges,
    nearest_neighbor_distances,  # noqa: F401  (re-exported for callers)
    real_stats,
    time_histogram,
)

log = logging.getLogger(__name__)

CACHE_DIR_NAME = ".ganseval-cache"
CACHE_DIR_ENV = "GANSEVAL_CACHE_DIR"


# ---------------------------------------------------------------------------
# CSV / manifest parsing

def _parse_csv_matrix(path: Path) -> np.ndarray:
    """Parse a headerless comma-separated numeric matrix.

    Never coerces silently: ragged rows and malformed tokens raise
    FormatError with their 1-based location.
    """
    if not path.is_file():
        raise MissingFile(f"no such file: {path}")
    rows: list[list[float]] = []
    width = None
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if line == "" and width is not None:
                continue  # trailing blank line
            tokens = line.split(",")
            if width is None:
                width = len(tokens)
            elif len(tokens) != width:
                raise FormatError(
                    f"ragged row: expected {width} values, got {len(tokens)}", lineno
                )
            row = []
            for col, tok in enumerate(tokens, start=1):
                try:
                    v = float(tok)
                except ValueError:
                    raise FormatError(f"non-numeric token {tok!r}", lineno, col) from None
                if not np.isfinite(v):
                    raise FormatError(f"non-finite value {tok!r}", lineno, col)
                row.append(v)
            rows.append(row)
    if not rows:
        raise FormatError("empty file", 1)
    return np.array(rows, dtype=np.float64)


def write_csv_matrix(values: np.ndarray, path: Path) -> None:
    """Write a matrix in the workspace CSV convention.

    Floats use 17 significant digits so a load -> export -> load round trip
    is bit-identical.
    """
    path = Path(path)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for row in np.atleast_2d(values):
            fh.write(",".join(format(v, ".17g") for v in row))
            fh.write("\n")


def load_real(path) -> RealDataset:
    """Load the real dataset from a headerless CSV file, ids by row order."""
    mat = _parse_csv_matrix(Path(path))
    if mat.shape[0] < 2:
        raise InvalidInput(f"real dataset needs >= 2 series, got {mat.shape[0]}")
    return RealDataset(values=mat)


def load_run(manifest_path, expected_t: int | None = None) -> GenerationRun:
    """Load a generation run from its JSON manifest.

    Validates strictly increasing iteration numbers across the manifest and a
    uniform series length; if ``expected_t`` is given (the real dataset's T),
    a disagreement raises ShapeMismatch.
    """
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise MissingFile(f"no such manifest: {manifest_path}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidManifest(f"{manifest_path}: invalid JSON: {exc}") from None
    if not isinstance(manifest, dict) or "name" not in manifest or "iterations" not in manifest:
        raise InvalidManifest(f"{manifest_path}: manifest needs 'name' and 'iterations'")
    name = manifest["name"]
    if not isinstance(name, str) or not name:
        raise InvalidManifest(f"{manifest_path}: 'name' must be a non-empty string")
    entries = manifest["iterations"]
    if not isinstance(entries, list) or not entries:
        raise InvalidManifest(f"{manifest_path}: 'iterations' must be a non-empty list")
    iterations = []
    prev = -1
    for k, entry in enumerate(entries):
        if not isinstance(entry, dict) or "iteration" not in entry or "file" not in entry:
            raise InvalidManifest(
                f"{manifest_path}: iteration entry {k} needs 'iteration' and 'file'"
            )
        num = entry["iteration"]
        if not isinstance(num, int) or isinstance(num, bool) or num < 0:
            raise InvalidManifest(
                f"{manifest_path}: iteration entry {k} has invalid number {num!r}"
            )
        if num <= prev:
            raise InvalidManifest(
                f"{manifest_path}: iteration numbers must be strictly increasing; "
                f"entry {k} has {num} after {prev}"
            )
        prev = num
        snap_path = manifest_path.parent / entry["file"]
        snapshot = _parse_csv_matrix(snap_path)
        iterations.append((num, snapshot))
    run = GenerationRun(name=name, iterations=tuple(iterations))
    if expected_t is not None and run.t != expected_t:
        from .errors import ShapeMismatch

        raise ShapeMismatch(
            f"{manifest_path}: run T={run.t} does not match real dataset T={expected_t}"
        )
    return run


def write_run(run: GenerationRun, directory) -> Path:
    """Write a run's manifest and snapshots; returns the manifest path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for num, snapshot in run.iterations:
        fname = f"iter_{num:06d}.csv"
        write_csv_matrix(snapshot, directory / fname)
        entries.append({"iteration": num, "file": fname})
    manifest_path = directory / "run.json"
    manifest_path.write_text(
        canonical_json({"name": run.name, "iterations": entries}) + "\n",
        encoding="utf-8",
    )
    return manifest_path


# ---------------------------------------------------------------------------
# Canonical serialization

def canonical_json(data) -> str:
    """Deterministic JSON text: sorted keys, minimal separators, repr floats."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), allow_nan=False)


def iteration_view_to_jsonable(m: IterationViewMatrix) -> dict:
    return {
        "kind": m.kind.value,
        "metric": m.metric.value,
        "iterations": list(m.iterations),
        "columns": [col.tolist() for col in m.columns],
        "row_order": [order.tolist() for order in m.row_order],
        "vmin": m.vmin,
        "vmax": m.vmax,
    }


def iteration_view_from_jsonable(data: dict) -> IterationViewMatrix:
    return IterationViewMatrix(
        kind=MatrixKind.parse(data["kind"]),
        metric=DistanceMetric.parse(data["metric"]),
        iterations=tuple(data["iterations"]),
        columns=tuple(np.asarray(c, dtype=np.float64) for c in data["columns"]),
        row_order=tuple(np.asarray(o, dtype=np.int64) for o in data["row_order"]),
    )


def histogram_to_jsonable(h: TimeHistogram) -> dict:
    return {"bin_edges": h.bin_edges.tolist(), "counts": h.counts.tolist()}


def histogram_from_jsonable(data: dict) -> TimeHistogram:
    return TimeHistogram(
        bin_edges=np.asarray(data["bin_edges"], dtype=np.float64),
        counts=np.asarray(data["counts"], dtype=np.int64),
    )


def stats_to_jsonable(s: RealStats) -> dict:
    return {
        "median": s.median.tolist(),
        "band68": {"lo": s.band68[0].tolist(), "hi": s.band68[1].tolist()},
        "band95": {"lo": s.band95[0].tolist(), "hi": s.band95[1].tolist()},
        "band997": {"lo": s.band997[0].tolist(), "hi": s.band997[1].tolist()},
    }


def stats_from_jsonable(data: dict) -> RealStats:
    def band(key):
        return (
            np.asarray(data[key]["lo"], dtype=np.float64),
            np.asarray(data[key]["hi"], dtype=np.float64),
        )

    return RealStats(
        median=np.asarray(data["median"], dtype=np.float64),
        band68=band("band68"),
        band95=band("band95"),
        band997=band("band997"),
    )


# ---------------------------------------------------------------------------
# Workspace

class Workspace:
    """A loaded real dataset plus named generation runs and an artifact cache."""

    def __init__(self, root, real: RealDataset, runs: dict[str, GenerationRun]):
        self.root = Path(root)
        self.real = real
        self.runs = runs
        self.pca: PcaModel = fit_pca(real)
        self.real_order = sort_by_pc1(self.pca, real.values)
        self.compute_count = 0
        self.storage_errors: list[StorageError] = []

    @classmethod
    def load(cls, root) -> "Workspace":
        root = Path(root)
        real = load_real(root / "real.csv")
        runs: dict[str, GenerationRun] = {}
        runs_dir = root / "runs"
        if runs_dir.is_dir():
            for manifest in sorted(runs_dir.glob("*/run.json")):
                run = load_run(manifest, expected_t=real.t)
                if run.name in runs:
                    raise InvalidManifest(f"duplicate run name {run.name!r}")
                runs[run.name] = run
        return cls(root, real, runs)

    def run(self, name: str) -> GenerationRun:
        try:
            return self.runs[name]
        except KeyError:
            raise InvalidInput(f"unknown run {name!r}") from None

    # -- cache plumbing ----------------------------------------------------

    @property
    def cache_dir(self) -> Path:
        override = os.environ.get(CACHE_DIR_ENV)
        return Path(override) if override else self.root / CACHE_DIR_NAME

    def _input_hash(self, key: str, arrays: list[np.ndarray]) -> str:
        h = hashlib.sha256()
        h.update(key.encode("ascii"))
        for arr in arrays:
            h.update(np.ascontiguousarray(arr, dtype=np.float64).tobytes())
        return h.hexdigest()

    def _cache_path(self, key: str) -> Path:
        safe = key.replace("/", "_").replace(":", "__")
        return self.cache_dir / f"{safe}.json"

    def _get_or_compute(self, key: str, arrays: list[np.ndarray], compute):
        """Serve ``key`` from the cache when its input hash matches, else
        compute, persist atomically and return the JSON-able payload."""
        content_hash = self._input_hash(key, arrays)
        path = self._cache_path(key)
        if path.is_file():
            try:
                entry = json.loads(path.read_text(encoding="utf-8"))
            except (json.JSONDecodeError, OSError):
                entry = None
            if entry and entry.get("hash") == content_hash and entry.get("key") == key:
                return entry["data"]
        self.compute_count += 1
        data = compute()
        entry_text = canonical_json({"key": key, "hash": content_hash, "data": data})
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(entry_text)
            os.replace(tmp, path)
        except OSError as exc:
            err = StorageError(f"cannot write cache entry {path}: {exc}")
            self.storage_errors.append(err)
            log.warning("%s (returning in-memory result)", err)
        return data

    # -- artifacts ---------------------------------------------------------

    def iteration_view(
        self, run_name: str, metric: DistanceMetric, kind: MatrixKind
    ) -> dict:
        run = self.run(run_name)
        key = f"iteration_view:run={run_name}:metric={metric.value}:kind={kind.value}"
        arrays = [self.real.values] + [snap for _, snap in run.iterations]
        return self._get_or_compute(
            key,
            arrays,
            lambda: iteration_view_to_jsonable(
                build_iteration_view(self.real, run, metric, kind, pca=self.pca)
            ),
        )

    def real_histogram(self, bins: int = DEFAULT_BINS) -> dict:
        key = f"real_histogram:bins={bins}"
        return self._get_or_compute(
            key,
            [self.real.values],
            lambda: histogram_to_jsonable(
                time_histogram(self.real.values, compute_bin_edges(self.real, bins))
            ),
        )

    def run_histogram(self, run_name: str, iteration: int, bins: int = DEFAULT_BINS) -> dict:
        run = self.run(run_name)
        snapshot = run.snapshot(iteration)
        key = f"histogram:run={run_name}:iteration={iteration}:bins={bins}"
        return self._get_or_compute(
            key,
            [self.real.values, snapshot],
            lambda: histogram_to_jsonable(
                time_histogram(snapshot, compute_bin_edges(self.real, bins))
            ),
        )

    def stats(self) -> dict:
        return self._get_or_compute(
            "real_stats",
            [self.real.values],
            lambda: stats_to_jsonable(real_stats(self.real)),
        )
