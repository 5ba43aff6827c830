import json

import pytest
from fastapi.testclient import TestClient

from ganseval.cli import run_cli
from ganseval.service import create_app
from ganseval.workspace import Workspace


@pytest.fixture
def ws_root(tmp_path):
    root = tmp_path / "ws"
    assert run_cli([
        "synth", str(root), "--regime", "converging", "--seed", "42",
        "--n-real", "8", "--m-gen", "6", "--t-len", "10", "--iters", "3",
    ]) == 0
    return root


class TestValidate:
    def test_good_workspace(self, ws_root, capsys):
        assert run_cli(["validate", str(ws_root)]) == 0
        out = capsys.readouterr().out
        assert "8 series x 10 time points" in out
        assert "ok" in out

    def test_ragged_csv_reported_with_location(self, ws_root, capsys):
        real = ws_root / "real.csv"
        lines = real.read_text().splitlines()
        lines[1] = lines[1] + ",999"
        real.write_text("\n".join(lines) + "\n")
        assert run_cli(["validate", str(ws_root)]) == 1
        err = capsys.readouterr().err
        assert "line 2" in err

    def test_missing_workspace(self, tmp_path):
        assert run_cli(["validate", str(tmp_path / "absent")]) == 1


class TestSynthCompute:
    def test_compute_fills_cache(self, ws_root, capsys):
        assert run_cli(["compute", str(ws_root), "--metric", "ed"]) == 0
        cache = ws_root / ".ganseval-cache"
        keys = {json.loads(p.read_text())["key"] for p in cache.glob("*.json")}
        assert "iteration_view:run=converging:metric=ed:kind=innd" in keys
        assert "iteration_view:run=converging:metric=ed:kind=onnd" in keys
        assert "real_stats" in keys

    def test_compute_then_serve_hits_cache_only(self, ws_root):
        assert run_cli(["compute", str(ws_root), "--metric", "both"]) == 0
        ws = Workspace.load(ws_root)
        client = TestClient(create_app(ws))
        client.get("/api/real/stats")
        client.get("/api/real/detail")
        for metric in ("ed", "dtw"):
            for kind in ("innd", "onnd"):
                r = client.get(
                    f"/api/runs/converging/iteration-view?metric={metric}&kind={kind}"
                )
                assert r.status_code == 200
        for num in ws.runs["converging"].iteration_numbers:
            client.get(f"/api/runs/converging/iterations/{num}/detail")
        assert ws.compute_count == 0


class TestExport:
    def test_export_single_artifact_json(self, ws_root, tmp_path):
        out = tmp_path / "innd.json"
        assert run_cli([
            "export", str(ws_root),
            "--artifact", "iteration-view:converging:ed:innd", "--out", str(out),
        ]) == 0
        data = json.loads(out.read_text())
        assert data["kind"] == "innd"
        assert len(data["columns"]) == 3

    def test_export_stats_csv(self, ws_root, tmp_path):
        out = tmp_path / "stats.csv"
        assert run_cli([
            "export", str(ws_root), "--artifact", "stats",
            "--format", "csv", "--out", str(out),
        ]) == 0
        header = out.read_text().splitlines()[0]
        assert header == "median,lo68,hi68,lo95,hi95,lo997,hi997"

    def test_export_unknown_artifact(self, ws_root, tmp_path):
        assert run_cli([
            "export", str(ws_root), "--artifact", "bogus",
            "--out", str(tmp_path / "x.json"),
        ]) == 1

    def test_export_all_tree(self, ws_root, tmp_path):
        out = tmp_path / "dump"
        assert run_cli(["export", str(ws_root), "--out", str(out)]) == 0
        names = {p.name for p in out.iterdir()}
        assert "real.json" in names
        assert "stats.json" in names
        assert "converging-ed-innd.json" in names
        assert "converging-histogram-0.json" in names


class TestUsage:
    def test_unknown_flag_exits_one(self, ws_root, capsys):
        assert run_cli(["validate", str(ws_root), "--frobnicate"]) == 1

    def test_unknown_command_exits_one(self):
        assert run_cli(["transmogrify"]) == 1
