import math

import numpy as np
import pytest

from telefid.bloch import qubit_fidelity
from telefid.distributions import FixedPurity, Pure, Shell, UniformBall
from telefid.engine import conditional_outcomes, max_avg_fidelity, optimal_rotations, werner_mixed_closed_form
from telefid.kernels import uniforms
from telefid.measurements import agrawal_basis_cn, bell_basis
from telefid.oracle import SimConfig, sample_input, simulate
from telefid.resources import BellDiagonal, werner


@pytest.mark.parametrize("d", [Pure(), UniformBall(), FixedPurity(0.3), Shell(0.9, 1.0)])
def test_perfect_protocol(d):
    rep = simulate(werner(1.0), bell_basis(), SimConfig(20000, 5, d))
    assert rep.mean_fidelity == pytest.approx(1.0, abs=1e-12)
    assert rep.standard_error < 1e-12


@pytest.mark.slow
def test_werner_million_samples():
    rep = simulate(werner(0.5), bell_basis(), SimConfig(10**6, 11, UniformBall()))
    assert abs(rep.mean_fidelity - werner_mixed_closed_form(0.5)) < 3 * rep.standard_error


def test_frequencies():
    rep = simulate(BellDiagonal(0.2, -0.4, 0.1), bell_basis(), SimConfig(50000, 2, UniformBall()))
    assert np.allclose(rep.frequencies, 0.25, atol=1e-12)
    rep = simulate(BellDiagonal(0.2, -0.4, 0.1), bell_basis(), SimConfig(50000, 2, UniformBall()), stochastic=True)
    err = math.sqrt(0.25 * 0.75 / 50000)
    assert np.all(np.abs(rep.frequencies - 0.25) < 3 * err)
    assert rep.frequencies.sum() == pytest.approx(1.0)


def test_stochastic_mode_is_unbiased():
    s, basis, d = BellDiagonal(0.3, -0.2, 0.5), agrawal_basis_cn(0.6), Shell(0.5, 1.0)
    rep = simulate(s, basis, SimConfig(200000, 9, d), stochastic=True)
    assert abs(rep.mean_fidelity - max_avg_fidelity(s, basis, d).f_max) < 4 * rep.standard_error


def test_seed_determinism():
    cfg = SimConfig(30000, 42, UniformBall())
    a = simulate(werner(0.4), bell_basis(), cfg, threads=1)
    b = simulate(werner(0.4), bell_basis(), cfg, threads=1)
    c = simulate(werner(0.4), bell_basis(), cfg, threads=3)
    assert (a.mean_fidelity, a.standard_error) == (b.mean_fidelity, b.standard_error)
    assert np.array_equal(a.frequencies, b.frequencies)
    assert a.mean_fidelity == c.mean_fidelity
    d = simulate(werner(0.4), bell_basis(), SimConfig(30000, 43, UniformBall()))
    assert d.mean_fidelity != a.mean_fidelity


def test_sample_input():
    u = uniforms(1, 0, 10**6, 3)
    t = sample_input(Pure(), u[:, 0], u[:, 1], u[:, 2])
    assert np.allclose(np.linalg.norm(t, axis=1), 1.0, atol=1e-14)
    t = sample_input(FixedPurity(0.3), u[:, 0], u[:, 1], u[:, 2])
    assert np.allclose(np.linalg.norm(t, axis=1), 0.3, atol=1e-14)
    t = sample_input(UniformBall(), u[:, 0], u[:, 1], u[:, 2])
    r2 = np.einsum("ij,ij->i", t, t)
    assert abs(r2.mean() - 0.6) < 3 * r2.std(ddof=1) / math.sqrt(len(r2))
    # isotropy: the mean direction vanishes
    assert np.all(np.abs(t.mean(axis=0)) < 3 * t.std(axis=0) / math.sqrt(len(t)))


def test_score_decomposition_per_sample():
    s, basis = BellDiagonal(0.3, -0.2, 0.5), agrawal_basis_cn(0.4)
    R, _ = optimal_rotations(s, basis)
    u = uniforms(3, 0, 300, 3)
    for t in sample_input(UniformBall(), u[:, 0], u[:, 1], u[:, 2]):
        outs = conditional_outcomes(t, s, basis)
        per_outcome = sum(o.probability * qubit_fidelity(t, Ri @ o.bloch) for Ri, o in zip(R, outs))
        probs = np.array([o.probability for o in outs])
        vecs = np.array([Ri @ o.bloch for Ri, o in zip(R, outs)])
        closed = 0.5 * (1 + t @ (probs @ vecs) + math.sqrt(1 - t @ t) * probs @ np.sqrt(1 - np.sum(vecs**2, 1)))
        assert per_outcome == pytest.approx(closed, abs=1e-12)


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(0, 1, UniformBall())
    with pytest.raises(ValueError):
        SimConfig(10, -1, UniformBall())
    with pytest.raises(ValueError):
        SimConfig(10, 2**64, UniformBall())
