"""Monte-Carlo simulation of the teleportation protocol.

Inputs are drawn from the distribution with a counter-based generator keyed
by ``(seed, sample index)``; Bob uses the engine's optimal rotations.  By
default each input contributes its exact score (sum over Alice's outcomes);
``stochastic=True`` instead draws one outcome per input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from telefid import kernels
from telefid.distributions import IsotropicDistribution
from telefid.engine import Resource, _check_inputs, as_state, optimal_rotations, protocol_arrays
from telefid.measurements import VonNeumannBasis

BATCH = 1 << 16


@dataclass(frozen=True)
class SimConfig:
    sample_count: int
    seed: int
    distribution: IsotropicDistribution

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SimReport:
    mean_fidelity: float
    standard_error: float
    sample_count: int
    frequencies: np.ndarray
    seed: int
    stochastic: bool = False


def sample_input(d: IsotropicDistribution, u1, u2, u3) -> np.ndarray:
    """Bloch vectors with radius law ``d`` and uniform direction, from three uniform arrays."""
    r = np.asarray(d.sample_radius(u1), dtype=float)
    z = 2.0 * np.asarray(u2, dtype=float) - 1.0
    phi = 2.0 * np.pi * np.asarray(u3, dtype=float)
    rho = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    return (r[..., None] * np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=-1)).reshape(
        np.shape(z) + (3,)
    )


def simulate(
    resource: Resource,
    basis: VonNeumannBasis,
    config: SimConfig,
    stochastic: bool = False,
    threads: int | None = None,
    backend: str | None = None,
) -> SimReport:
    state = as_state(resource)
    _check_inputs(state, basis)
    R, _ = optimal_rotations(state, basis)
    arrays = protocol_arrays(state, basis)
    N = config.sample_count
    scores = np.empty(N)
    weights = np.zeros(4)
    for lo in range(0, N, BATCH):
        count = min(BATCH, N - lo)
        u = kernels.uniforms(config.seed, lo, count, 4, backend=backend)
        t = sample_input(config.distribution, u[:, 0], u[:, 1], u[:, 2])
        probs, fid, _ = kernels.outcome_terms(t, arrays, R, threads, backend)
        if not stochastic:
            scores[lo : lo + count] = fid.sum(axis=1)
            weights += probs.sum(axis=0)
            continue
        cum = np.cumsum(probs, axis=1)
        pick = (u[:, 3:4] * cum[:, -1:] >= cum).sum(axis=1)
        pick = np.minimum(pick, 3)
        rows = np.arange(count)
        chosen_p = probs[rows, pick]
        scores[lo : lo + count] = np.where(chosen_p > 0, fid[rows, pick] / np.where(chosen_p > 0, chosen_p, 1.0), 0.0)
        weights += np.bincount(pick, minlength=4)
    mean = float(np.sum(scores) / N)
    stderr = float(np.std(scores, ddof=1) / math.sqrt(N)) if N > 1 else 0.0
    return SimReport(mean, stderr, N, weights / weights.sum(), config.seed, stochastic)
