"""Command-line entry point: validate, compute, synth, export, serve.

Exit codes: 0 success, 1 validation/user error, 2 internal error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .core import DistanceMetric
from .errors import GansevalError, InvalidInput
from .metrics import DEFAULT_BINS, MatrixKind
from .synth import Regime, SynthConfig, write_workspace
from .workspace import Workspace, canonical_json, write_csv_matrix

# COMPUTE warns up front when the pairwise-distance workload is large; DTW
# over every iteration is the dominant cost.
PAIR_COUNT_WARN_THRESHOLD = 1_000_000


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ganseval",
        description="Evaluate GAN-generated time series against a real corpus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check workspace integrity and print a report")
    p.add_argument("workspace", help="workspace root directory")

    p = sub.add_parser("compute", help="materialize all metric artifacts into the cache")
    p.add_argument("workspace", help="workspace root directory")
    p.add_argument("--metric", choices=["ed", "dtw", "both"], default="both")
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)

    p = sub.add_parser("synth", help="write a synthetic workspace")
    p.add_argument("workspace", help="output workspace root directory")
    p.add_argument("--regime", choices=[r.value for r in Regime], default="converging")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--n-real", type=int, default=50)
    p.add_argument("--m-gen", type=int, default=64)
    p.add_argument("--t-len", type=int, default=30)
    p.add_argument("--iters", type=int, default=20)
    p.add_argument("--noise-floor", type=float, default=0.05)
    p.add_argument("--name", default=None, help="run name (defaults to the regime)")

    p = sub.add_parser("export", help="dump artifacts as CSV or JSON")
    p.add_argument("workspace", help="workspace root directory")
    p.add_argument("--artifact", default="all",
                   help="one of: all | real | stats | iteration-view:<run>:<metric>:<kind> "
                        "| histogram:<run>:<iteration> | real-histogram")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--out", required=True, help="output file, or directory for --artifact all")

    p = sub.add_parser("serve", help="start the read-only HTTP API")
    p.add_argument("--workspace", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8040)

    return parser


def _cmd_validate(args) -> int:
    ws = Workspace.load(args.workspace)
    print(f"workspace: {ws.root}")
    print(f"real: {ws.real.n} series x {ws.real.t} time points")
    for name, run in sorted(ws.runs.items()):
        sizes = [snap.shape[0] for _, snap in run.iterations]
        print(
            f"run {name!r}: {len(run.iterations)} iterations "
            f"({run.iteration_numbers[0]}..{run.iteration_numbers[-1]}), "
            f"samples per iteration {min(sizes)}..{max(sizes)}"
        )
    print("ok")
    return 0


def _pair_count(ws: Workspace) -> int:
    total = 0
    for run in ws.runs.values():
        for _, snap in run.iterations:
            total += 2 * snap.shape[0] * ws.real.n  # INND + ONND
    return total


def _cmd_compute(args) -> int:
    ws = Workspace.load(args.workspace)
    metrics = {
        "ed": [DistanceMetric.EUCLIDEAN],
        "dtw": [DistanceMetric.DTW],
        "both": [DistanceMetric.EUCLIDEAN, DistanceMetric.DTW],
    }[args.metric]
    pairs = _pair_count(ws) * len(metrics)
    if pairs > PAIR_COUNT_WARN_THRESHOLD:
        # Project total cost from a small timed probe before committing.
        probe = min(ws.real.n, 8)
        t0 = time.perf_counter()
        from .metrics import nearest_neighbor_distances

        nearest_neighbor_distances(
            ws.real.values[:probe], ws.real.values, metrics[-1]
        )
        per_pair = (time.perf_counter() - t0) / (probe * ws.real.n)
        print(
            f"about to compute {pairs} distance pairs, "
            f"projected total ~{pairs * per_pair:.1f}s"
        )
    ws.stats()
    ws.real_histogram(args.bins)
    for name, run in sorted(ws.runs.items()):
        for metric in metrics:
            for kind in MatrixKind:
                t0 = time.perf_counter()
                ws.iteration_view(name, metric, kind)
                dt = time.perf_counter() - t0
                print(f"{name} {metric.value} {kind.value}: {dt:.3f}s")
        for num, _ in run.iterations:
            ws.run_histogram(name, num, args.bins)
    print(f"computed {ws.compute_count} artifacts into {ws.cache_dir}")
    return 0


def _cmd_synth(args) -> int:
    config = SynthConfig(
        seed=args.seed,
        regime=Regime.parse(args.regime),
        n_real=args.n_real,
        m_gen=args.m_gen,
        t_len=args.t_len,
        n_iters=args.iters,
        noise_floor=args.noise_floor,
    )
    write_workspace(config, args.workspace, name=args.name)
    print(f"wrote {args.regime} workspace to {args.workspace}")
    return 0


def _write_json(data, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(data) + "\n", encoding="utf-8")


def _write_csv(rows, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for row in rows:
            fh.write(",".join(
                format(v, ".17g") if isinstance(v, float) else str(v) for v in row
            ))
            fh.write("\n")


def _iteration_view_rows(data: dict):
    for num, col in zip(data["iterations"], data["columns"]):
        yield [num, *map(float, col)]


def _histogram_rows(data: dict):
    yield [float(e) for e in data["bin_edges"]]
    for row in data["counts"]:
        yield [int(c) for c in row]


def _stats_rows(data: dict):
    yield ["median", "lo68", "hi68", "lo95", "hi95", "lo997", "hi997"]
    t_len = len(data["median"])
    for t in range(t_len):
        yield [
            float(data["median"][t]),
            float(data["band68"]["lo"][t]), float(data["band68"]["hi"][t]),
            float(data["band95"]["lo"][t]), float(data["band95"]["hi"][t]),
            float(data["band997"]["lo"][t]), float(data["band997"]["hi"][t]),
        ]


def _export_one(ws: Workspace, artifact: str, fmt: str, bins: int, out: Path) -> None:
    if artifact == "real":
        if fmt == "csv":
            out.parent.mkdir(parents=True, exist_ok=True)
            write_csv_matrix(ws.real.values, out)
        else:
            _write_json({"values": ws.real.values.tolist()}, out)
        return
    if artifact == "stats":
        data = ws.stats()
        _write_csv(_stats_rows(data), out) if fmt == "csv" else _write_json(data, out)
        return
    if artifact == "real-histogram":
        data = ws.real_histogram(bins)
        _write_csv(_histogram_rows(data), out) if fmt == "csv" else _write_json(data, out)
        return
    parts = artifact.split(":")
    if parts[0] == "iteration-view" and len(parts) == 4:
        data = ws.iteration_view(parts[1], DistanceMetric.parse(parts[2]),
                                 MatrixKind.parse(parts[3]))
        _write_csv(_iteration_view_rows(data), out) if fmt == "csv" else _write_json(data, out)
        return
    if parts[0] == "histogram" and len(parts) == 3:
        data = ws.run_histogram(parts[1], int(parts[2]), bins)
        _write_csv(_histogram_rows(data), out) if fmt == "csv" else _write_json(data, out)
        return
    raise InvalidInput(f"unknown artifact selector {artifact!r}")


def _cmd_export(args) -> int:
    ws = Workspace.load(args.workspace)
    out = Path(args.out)
    ext = args.format
    if args.artifact != "all":
        _export_one(ws, args.artifact, args.format, args.bins, out)
        print(f"wrote {out}")
        return 0
    _export_one(ws, "real", ext, args.bins, out / f"real.{ext}")
    _export_one(ws, "stats", ext, args.bins, out / f"stats.{ext}")
    _export_one(ws, "real-histogram", ext, args.bins, out / f"real-histogram.{ext}")
    for name, run in sorted(ws.runs.items()):
        for metric in DistanceMetric:
            for kind in MatrixKind:
                _export_one(
                    ws, f"iteration-view:{name}:{metric.value}:{kind.value}", ext,
                    args.bins, out / f"{name}-{metric.value}-{kind.value}.{ext}",
                )
        for num, _ in run.iterations:
            _export_one(ws, f"histogram:{name}:{num}", ext, args.bins,
                        out / f"{name}-histogram-{num}.{ext}")
    print(f"wrote artifact tree to {out}")
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    ws = Workspace.load(args.workspace)
    serve(ws, host=args.host, port=args.port)
    return 0


def run_cli(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    handlers = {
        "validate": _cmd_validate,
        "compute": _cmd_compute,
        "synth": _cmd_synth,
        "export": _cmd_export,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except GansevalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
