import numpy as np
import pytest
from fastapi.testclient import TestClient

from ganseval.core import DistanceMetric, fit_pca, sort_by_pc1
from ganseval.metrics import MatrixKind
from ganseval.service import create_app
from ganseval.synth import Regime, SynthConfig, write_workspace
from ganseval.workspace import Workspace


@pytest.fixture(scope="module")
def ws(tmp_path_factory):
    root = tmp_path_factory.mktemp("service-ws")
    cfg = SynthConfig(seed=11, regime=Regime.CONVERGING, n_real=10, m_gen=8, t_len=12, n_iters=3)
    write_workspace(cfg, root, name="model1")
    write_workspace(
        SynthConfig(seed=12, regime=Regime.COLLAPSE, n_real=10, m_gen=8, t_len=12, n_iters=3),
        root,
        name="model2",
    )
    return Workspace.load(root)


@pytest.fixture(scope="module")
def client(ws):
    return TestClient(create_app(ws))


def _error_envelope(body, status):
    assert set(body) == {"status", "code", "message"}
    assert body["status"] == status


class TestBasics:
    def test_health(self, client):
        r = client.get("/api/health")
        assert r.status_code == 200
        assert r.json() == {"status": "ok"}

    def test_runs_listed(self, client):
        r = client.get("/api/runs")
        names = [run["name"] for run in r.json()["runs"]]
        assert names == ["model1", "model2"]

    def test_unknown_path_envelope(self, client):
        r = client.get("/api/nope")
        assert r.status_code == 404
        _error_envelope(r.json(), 404)

    def test_content_type(self, client):
        r = client.get("/api/health")
        assert r.headers["content-type"] == "application/json; charset=utf-8"

    def test_cors_header(self, client):
        r = client.get("/api/health", headers={"Origin": "http://localhost:5173"})
        assert r.headers.get("access-control-allow-origin") == "*"


class TestIterationView:
    def test_onnd_row_count(self, client, ws):
        r = client.get("/api/runs/model1/iteration-view?metric=ed&kind=onnd")
        data = r.json()
        assert all(len(col) == ws.real.n for col in data["columns"])
        assert data["iterations"] == ws.runs["model1"].iteration_numbers

    def test_minmax_match_cells(self, client):
        data = client.get("/api/runs/model1/iteration-view?metric=ed&kind=innd").json()
        cells = np.concatenate([np.asarray(c) for c in data["columns"]])
        assert data["vmin"] == cells.min()
        assert data["vmax"] == cells.max()

    def test_p99_clip(self, client):
        full = client.get("/api/runs/model1/iteration-view?metric=ed&kind=innd").json()
        clipped = client.get(
            "/api/runs/model1/iteration-view?metric=ed&kind=innd&clip=p99"
        ).json()
        assert clipped["vmax"] <= full["vmax"]
        cells = np.concatenate([np.asarray(c) for c in full["columns"]])
        assert clipped["vmax"] == pytest.approx(np.quantile(cells, 0.99))

    def test_dtw_cells_at_most_ed(self, client):
        ed = client.get("/api/runs/model1/iteration-view?metric=ed&kind=onnd").json()
        dtw = client.get("/api/runs/model1/iteration-view?metric=dtw&kind=onnd").json()
        for ce, cd in zip(ed["columns"], dtw["columns"]):
            assert np.all(np.asarray(cd) <= np.asarray(ce) + 1e-9)

    def test_unknown_run_404(self, client):
        r = client.get("/api/runs/ghost/iteration-view")
        assert r.status_code == 404
        _error_envelope(r.json(), 404)

    def test_bad_metric_400(self, client):
        r = client.get("/api/runs/model1/iteration-view?metric=cosine")
        assert r.status_code == 400
        _error_envelope(r.json(), 400)

    def test_bad_kind_400(self, client):
        r = client.get("/api/runs/model1/iteration-view?kind=weird")
        assert r.status_code == 400

    def test_byte_stable(self, client):
        url = "/api/runs/model1/iteration-view?metric=ed&kind=innd"
        assert client.get(url).content == client.get(url).content


class TestDetail:
    def test_real_detail(self, client, ws):
        data = client.get("/api/real/detail?bins=6").json()
        rows = data["colorfield"]["rows"]
        assert len(rows) == ws.real.n
        assert data["colorfield"]["ids"] == list(range(ws.real.n))
        counts = np.asarray(data["time_histogram"]["counts"])
        np.testing.assert_array_equal(counts.sum(axis=1), ws.real.n)

    def test_iteration_detail_matches_permutation_oracle(self, client, ws):
        run = ws.runs["model1"]
        num, snapshot = run.iterations[1]
        data = client.get(f"/api/runs/model1/iterations/{num}/detail").json()
        model = fit_pca(ws.real)
        perm = sort_by_pc1(model, snapshot)
        np.testing.assert_allclose(data["colorfield"]["rows"], snapshot[perm])
        assert data["colorfield"]["original_indices"] == perm.tolist()
        counts = np.asarray(data["time_histogram"]["counts"])
        np.testing.assert_array_equal(counts.sum(axis=1), snapshot.shape[0])

    def test_unknown_iteration_404(self, client):
        r = client.get("/api/runs/model1/iterations/99999/detail")
        assert r.status_code == 404
        _error_envelope(r.json(), 404)

    def test_bad_bins_400(self, client):
        r = client.get("/api/real/detail?bins=1")
        assert r.status_code == 400


class TestSeries:
    def test_real_selector(self, client, ws):
        data = client.get("/api/series/r_3").json()
        assert data["label"] == "r_3"
        order = ws.real_order
        np.testing.assert_allclose(data["values"], ws.real.values[order[3]])
        assert data["original_index"] == int(order[3])
        assert len(data["diff_to_median"]) == ws.real.t

    def test_generated_selector(self, client, ws):
        num = ws.runs["model2"].iteration_numbers[-1]
        data = client.get(f"/api/series/g_{num}_0?run=model2").json()
        assert data["label"] == f"g_{num}_0"
        assert data["percentile_membership"] in ("68", "95", "99.7", None)

    def test_malformed_selector_400(self, client):
        r = client.get("/api/series/x_1")
        assert r.status_code == 400
        _error_envelope(r.json(), 400)

    def test_generated_requires_run(self, client):
        r = client.get("/api/series/g_0_0")
        assert r.status_code == 400

    def test_out_of_range_404(self, client, ws):
        r = client.get(f"/api/series/r_{ws.real.n}")
        assert r.status_code == 404

    def test_all_numeric_arrays_finite(self, client):
        data = client.get("/api/series/r_0").json()
        assert np.all(np.isfinite(data["values"]))
        assert np.all(np.isfinite(data["diff_to_median"]))
