import numpy as np
import pytest

from ganseval.core import DistanceMetric
from ganseval.errors import InvalidInput
from ganseval.metrics import nearest_neighbor_distances
from ganseval.synth import Regime, SynthConfig, generate_real, generate_run, write_workspace


def _mean_innd(snapshot, real):
    return nearest_neighbor_distances(
        snapshot, real.values, DistanceMetric.EUCLIDEAN
    ).mean()


class TestGenerateReal:
    def test_deterministic(self):
        cfg = SynthConfig(seed=123)
        np.testing.assert_array_equal(
            generate_real(cfg).values, generate_real(cfg).values
        )

    def test_shape_and_finiteness(self):
        real = generate_real(SynthConfig(seed=1, n_real=50, t_len=30))
        assert real.values.shape == (50, 30)
        assert np.all(np.isfinite(real.values))

    def test_phase_spread(self):
        # phases recovered by circular cross-correlation against a reference
        cfg = SynthConfig(seed=9, n_real=12, t_len=64)
        real = generate_real(cfg)
        t = np.arange(cfg.t_len) / cfg.t_len
        ref = np.sin(2 * np.pi * t)
        phases = []
        for row in real.values:
            corr = [np.dot(row, np.roll(ref, -s)) for s in range(cfg.t_len)]
            phases.append(2 * np.pi * np.argmax(corr) / cfg.t_len)
        phases = np.sort(phases)
        gaps = np.diff(np.concatenate([phases, [phases[0] + 2 * np.pi]]))
        assert gaps.max() < 2 * np.pi
        assert gaps.max() > 0

    def test_config_validation(self):
        with pytest.raises(InvalidInput):
            SynthConfig(t_len=1)
        with pytest.raises(InvalidInput):
            SynthConfig(n_iters=0)
        with pytest.raises(InvalidInput):
            SynthConfig(noise_floor=-0.1)


class TestGenerateRun:
    def test_deterministic(self):
        cfg = SynthConfig(seed=5, regime=Regime.COLLAPSE, n_iters=3)
        real = generate_real(cfg)
        a = generate_run(cfg, real)
        b = generate_run(cfg, real)
        assert a.iteration_numbers == b.iteration_numbers
        for (_, sa), (_, sb) in zip(a.iterations, b.iterations):
            np.testing.assert_array_equal(sa, sb)

    def test_shapes_and_monotone_numbers(self):
        cfg = SynthConfig(seed=2, n_iters=4, m_gen=7, t_len=12)
        real = generate_real(cfg)
        run = generate_run(cfg, real)
        assert all(s.shape == (7, 12) for _, s in run.iterations)
        nums = run.iteration_numbers
        assert all(b > a for a, b in zip(nums, nums[1:]))

    def test_converging_innd_improves(self):
        cfg = SynthConfig(seed=42, regime=Regime.CONVERGING)
        real = generate_real(cfg)
        run = generate_run(cfg, real)
        first = _mean_innd(run.iterations[0][1], real)
        last = _mean_innd(run.iterations[-1][1], real)
        assert last < first

    def test_collapse_leaves_modes_uncovered(self):
        cfg = SynthConfig(seed=42, regime=Regime.COLLAPSE)
        real = generate_real(cfg)
        run = generate_run(cfg, real)
        final = run.iterations[-1][1]
        median_innd = np.median(
            nearest_neighbor_distances(final, real.values, DistanceMetric.EUCLIDEAN)
        )
        onnd = nearest_neighbor_distances(real.values, final, DistanceMetric.EUCLIDEAN)
        assert np.mean(onnd > 5 * median_innd) >= 0.5

    def test_noise_never_approaches_converged_quality(self):
        conv_cfg = SynthConfig(seed=42, regime=Regime.CONVERGING)
        real = generate_real(conv_cfg)
        conv = generate_run(conv_cfg, real)
        conv_final = _mean_innd(conv.iterations[-1][1], real)
        noise = generate_run(SynthConfig(seed=42, regime=Regime.NOISE), real)
        for _, snap in noise.iterations:
            assert _mean_innd(snap, real) >= 10 * conv_final

    def test_custom_run_name(self):
        cfg = SynthConfig(seed=1, n_iters=1)
        real = generate_real(cfg)
        assert generate_run(cfg, real, name="model1").name == "model1"


class TestWriteWorkspace:
    def test_byte_identical_trees(self, tmp_path):
        cfg = SynthConfig(seed=77, regime=Regime.COLLAPSE, n_real=6, m_gen=4, t_len=8, n_iters=2)
        write_workspace(cfg, tmp_path / "a")
        write_workspace(cfg, tmp_path / "b")
        files_a = sorted(p.relative_to(tmp_path / "a") for p in (tmp_path / "a").rglob("*") if p.is_file())
        files_b = sorted(p.relative_to(tmp_path / "b") for p in (tmp_path / "b").rglob("*") if p.is_file())
        assert files_a == files_b
        for rel in files_a:
            assert (tmp_path / "a" / rel).read_bytes() == (tmp_path / "b" / rel).read_bytes()
