"""Deterministic synthetic fixtures emulating three generator regimes.

The real corpus stand-in is a family of unit sinusoids with random phase
(uniform over one period) and mild amplitude jitter: the phase axis is the
"shift" dimension that PC1 ordering exposes and that a collapsed generator
fails to cover. Three run regimes:

* CONVERGING - samples are real series plus Gaussian noise whose amplitude
  decays geometrically to ``noise_floor``.
* COLLAPSE   - every sample at every iteration hugs one fixed real series.
* NOISE      - pure Gaussian noise throughout.

All output is a pure function of the seed: the PRNG is pinned to PCG64
(a published, versioned 64-bit generator) rather than whatever the platform
default happens to be, so fixtures reproduce across environments.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import GenerationRun, RealDataset
from .errors import InvalidInput


class Regime(enum.Enum):
    CONVERGING = "converging"
    COLLAPSE = "collapse"
    NOISE = "noise"

    @classmethod
    def parse(cls, token: str) -> "Regime":
        for r in cls:
            if r.value == token.lower():
                return r
        raise InvalidInput(
            f"unknown regime {token!r} (expected converging, collapse or noise)"
        )


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 42
    regime: Regime = Regime.CONVERGING
    n_real: int = 50
    m_gen: int = 64
    t_len: int = 30
    n_iters: int = 20
    noise_floor: float = 0.05
    initial_noise: float = 2.0
    amplitude_jitter: float = 0.1
    iteration_step: int = 50

    def __post_init__(self):
        if self.t_len < 2:
            raise InvalidInput("t_len must be >= 2")
        if self.n_iters < 1:
            raise InvalidInput("n_iters must be >= 1")
        for field in ("n_real", "m_gen", "iteration_step"):
            if getattr(self, field) < 1:
                raise InvalidInput(f"{field} must be positive")
        if self.noise_floor < 0:
            raise InvalidInput("noise_floor must be non-negative")


def _rng(seed: int, stream: int) -> np.random.Generator:
    # Independent sub-streams for the real corpus and the run so regenerating
    # one never perturbs the other.
    return np.random.Generator(np.random.PCG64([seed, stream]))


def generate_real(config: SynthConfig) -> RealDataset:
    """Phase-shifted sinusoid corpus, deterministic per seed."""
    rng = _rng(config.seed, 0)
    t = np.arange(config.t_len) / config.t_len
    phases = rng.uniform(0.0, 2.0 * np.pi, size=config.n_real)
    amps = 1.0 + config.amplitude_jitter * rng.standard_normal(config.n_real)
    values = amps[:, None] * np.sin(2.0 * np.pi * t[None, :] + phases[:, None])
    return RealDataset(values=values)


def _iteration_numbers(config: SynthConfig) -> list[int]:
    return [k * config.iteration_step for k in range(config.n_iters)]


def generate_run(config: SynthConfig, real: RealDataset, name: str | None = None) -> GenerationRun:
    """Generation run for the configured regime, deterministic per seed."""
    rng = _rng(config.seed, 1)
    numbers = _iteration_numbers(config)
    snapshots = []
    if config.regime is Regime.COLLAPSE:
        target = real.values[rng.integers(0, real.n)]
    for k in range(config.n_iters):
        if config.regime is Regime.NOISE:
            snap = rng.standard_normal((config.m_gen, config.t_len))
        elif config.regime is Regime.COLLAPSE:
            snap = target[None, :] + config.noise_floor * rng.standard_normal(
                (config.m_gen, config.t_len)
            )
        else:  # CONVERGING
            if config.n_iters == 1:
                sigma = config.noise_floor
            else:
                ratio = config.noise_floor / config.initial_noise
                sigma = config.initial_noise * ratio ** (k / (config.n_iters - 1))
            base = real.values[rng.integers(0, real.n, size=config.m_gen)]
            snap = base + sigma * rng.standard_normal((config.m_gen, config.t_len))
        snapshots.append((numbers[k], snap))
    return GenerationRun(name=name or config.regime.value, iterations=tuple(snapshots))


def write_workspace(config: SynthConfig, root, name: str | None = None) -> None:
    """Materialize a synthetic workspace (real.csv plus one run) on disk."""
    from pathlib import Path

    from .workspace import write_csv_matrix, write_run

    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    real = generate_real(config)
    write_csv_matrix(real.values, root / "real.csv")
    run = generate_run(config, real, name=name)
    write_run(run, root / "runs" / run.name)
