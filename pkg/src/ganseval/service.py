"""Read-only HTTP/JSON API over a workspace.

Every heavy artifact goes through the workspace cache; responses are built
with a canonical serializer (sorted keys, repr floats) so identical requests
return byte-identical bodies.
"""

from __future__ import annotations

import re

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import Response
from starlette.exceptions import HTTPException as StarletteHTTPException

from .core import DistanceMetric, sort_by_pc1
from .errors import GansevalError, InvalidInput
from .metrics import DEFAULT_BINS, MatrixKind, diff_to_median, percentile_membership
from .workspace import Workspace, canonical_json, stats_from_jsonable

_SELECTOR_RE = re.compile(r"^(r_(\d+)|g_(\d+)_(\d+))$")

MEDIA_TYPE = "application/json; charset=utf-8"


class ApiError(Exception):
    """Error carried to the client as {"status", "code", "message"}."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _json_response(data, status: int = 200) -> Response:
    return Response(content=canonical_json(data), status_code=status, media_type=MEDIA_TYPE)


def _error_response(status: int, code: str, message: str) -> Response:
    return _json_response(
        {"status": status, "code": code, "message": message}, status=status
    )


def create_app(workspace: Workspace) -> FastAPI:
    app = FastAPI(title="ganseval", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return _error_response(exc.status, exc.code, exc.message)

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException):
        code = "not_found" if exc.status_code == 404 else "http_error"
        return _error_response(exc.status_code, code, str(exc.detail))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return _error_response(400, "bad_request", str(exc))

    @app.exception_handler(GansevalError)
    async def _domain_error(request: Request, exc: GansevalError):
        return _error_response(500, "internal_error", str(exc))

    def _get_run(name: str):
        if name not in workspace.runs:
            raise ApiError(404, "unknown_run", f"no run named {name!r}")
        return workspace.runs[name]

    def _parse_bins(bins: int) -> int:
        if bins < 2:
            raise ApiError(400, "bad_bins", f"bins must be >= 2, got {bins}")
        return bins

    @app.get("/api/health")
    def health():
        return _json_response({"status": "ok"})

    @app.get("/api/runs")
    def runs():
        payload = [
            {"name": name, "iterations": run.iteration_numbers, "samples": [
                snap.shape[0] for _, snap in run.iterations
            ]}
            for name, run in sorted(workspace.runs.items())
        ]
        return _json_response({"runs": payload, "n_real": workspace.real.n, "t": workspace.real.t})

    @app.get("/api/real/stats")
    def real_stats_endpoint():
        return _json_response(workspace.stats())

    @app.get("/api/real/detail")
    def real_detail(bins: int = DEFAULT_BINS):
        return _json_response(_detail(workspace.real.values, workspace.real_order,
                                      workspace.real_histogram(_parse_bins(bins))))

    def _detail(matrix: np.ndarray, order: np.ndarray, histogram: dict) -> dict:
        rows = matrix[order]
        return {
            "colorfield": {
                "rows": rows.tolist(),
                "ids": list(range(rows.shape[0])),
                "original_indices": order.tolist(),
                "vmin": float(workspace.real.values.min()),
                "vmax": float(workspace.real.values.max()),
            },
            "time_histogram": histogram,
        }

    @app.get("/api/runs/{run_name}/iteration-view")
    def iteration_view(run_name: str, metric: str = "ed", kind: str = "innd",
                       clip: str = "none"):
        _get_run(run_name)
        try:
            metric_v = DistanceMetric.parse(metric)
            kind_v = MatrixKind.parse(kind)
        except InvalidInput as exc:
            raise ApiError(400, "bad_parameter", str(exc)) from None
        if clip not in ("none", "p99"):
            raise ApiError(400, "bad_parameter", f"clip must be 'none' or 'p99', got {clip!r}")
        data = dict(workspace.iteration_view(run_name, metric_v, kind_v))
        if clip == "p99":
            cells = np.concatenate([np.asarray(c, dtype=np.float64) for c in data["columns"]])
            data["vmax"] = float(np.quantile(cells, 0.99))
        data["run"] = run_name
        data["clip"] = clip
        return _json_response(data)

    @app.get("/api/runs/{run_name}/iterations/{iteration}/detail")
    def run_detail(run_name: str, iteration: int, bins: int = DEFAULT_BINS):
        run = _get_run(run_name)
        if iteration not in run.iteration_numbers:
            raise ApiError(404, "unknown_iteration",
                           f"run {run_name!r} has no iteration {iteration}")
        snapshot = run.snapshot(iteration)
        order = sort_by_pc1(workspace.pca, snapshot)
        histogram = workspace.run_histogram(run_name, iteration, _parse_bins(bins))
        return _json_response(_detail(snapshot, order, histogram))

    @app.get("/api/series/{selector}")
    def series(selector: str, run: str | None = None):
        m = _SELECTOR_RE.match(selector)
        if not m:
            raise ApiError(400, "bad_selector",
                           f"selector {selector!r} must be r_<id> or g_<iter>_<id>")
        stats = stats_from_jsonable(workspace.stats())
        if m.group(2) is not None:
            sorted_id = int(m.group(2))
            if sorted_id >= workspace.real.n:
                raise ApiError(404, "unknown_series",
                               f"real dataset has {workspace.real.n} series")
            original = int(workspace.real_order[sorted_id])
            values = workspace.real.values[original]
            label = f"r_{sorted_id}"
        else:
            if run is None:
                raise ApiError(400, "missing_run",
                               "g_ selectors require the 'run' query parameter")
            run_obj = _get_run(run)
            iteration = int(m.group(3))
            sorted_id = int(m.group(4))
            if iteration not in run_obj.iteration_numbers:
                raise ApiError(404, "unknown_iteration",
                               f"run {run!r} has no iteration {iteration}")
            snapshot = run_obj.snapshot(iteration)
            if sorted_id >= snapshot.shape[0]:
                raise ApiError(404, "unknown_series",
                               f"iteration {iteration} has {snapshot.shape[0]} series")
            order = sort_by_pc1(workspace.pca, snapshot)
            original = int(order[sorted_id])
            values = snapshot[original]
            label = f"g_{iteration}_{sorted_id}"
        membership = percentile_membership(values, stats)
        return _json_response({
            "label": label,
            "original_index": original,
            "values": values.tolist(),
            "diff_to_median": diff_to_median(values, stats).tolist(),
            "percentile_membership": membership,
        })

    return app


def serve(workspace: Workspace, host: str = "127.0.0.1", port: int = 8040) -> None:
    """Run the API with uvicorn; blocks until interrupted."""
    import uvicorn

    uvicorn.run(create_app(workspace), host=host, port=port, log_level="warning")
