import math

import numpy as np
import pytest

from telefid.bloch import DomainError
from telefid.classical import (
    ClassicalPOVMConfig,
    best_guess_vector,
    classical_fidelity,
    classical_fixed_purity_closed_form,
    classical_mixed_closed_form,
    max_classical_fidelity,
)
from telefid.distributions import FixedPurity, Pure, Shell, UniformBall

MIXED = (80 + math.sqrt(256 + 225 * math.pi**2)) / 160


def test_headline_values():
    assert max_classical_fidelity(Pure()) == pytest.approx(2 / 3, abs=1e-15)
    assert max_classical_fidelity(UniformBall()) == pytest.approx(MIXED, abs=1e-14)
    assert classical_mixed_closed_form() == pytest.approx(0.811037891472, abs=5e-13)
    assert round(MIXED, 3) == 0.811


@pytest.mark.parametrize("x", np.linspace(0, 1, 11))
def test_fixed_purity(x):
    assert max_classical_fidelity(FixedPurity(x)) == pytest.approx(classical_fixed_purity_closed_form(x), abs=1e-12)


def test_fixed_purity_limits_and_monotonicity():
    assert max_classical_fidelity(FixedPurity(1.0)) == pytest.approx(2 / 3, abs=1e-15)
    assert max_classical_fidelity(FixedPurity(0.0)) == 1.0
    vals = [max_classical_fidelity(FixedPurity(x)) for x in np.linspace(0, 1, 201)]
    assert np.all(np.diff(vals) <= 1e-15)


def test_best_guess_vector():
    s = np.array([0.0, 0.6, 0.8])
    assert np.allclose(best_guess_vector(s, Pure()), s)
    r = best_guess_vector(s, UniformBall())
    expected = 0.6 / math.sqrt(36 * (3 * math.pi / 32) ** 2 + 9 / 25)
    assert np.linalg.norm(r) == pytest.approx(expected)
    assert np.allclose(np.cross(r, s), 0)
    assert np.allclose(best_guess_vector(np.zeros(3), UniformBall()), 0)


@pytest.mark.parametrize("d", [Pure(), UniformBall(), FixedPurity(0.4), Shell(0.9, 1.0)])
def test_rank_one_configs_reach_the_maximum(d, rng):
    configs = [ClassicalPOVMConfig.antipodal(), ClassicalPOVMConfig.tetrahedral(),
               ClassicalPOVMConfig.antipodal(rng.normal(size=3))]
    for cfg in configs:
        assert classical_fidelity(cfg, d) == pytest.approx(max_classical_fidelity(d), abs=1e-14)
    shorter = ClassicalPOVMConfig.antipodal(length=0.5)
    assert classical_fidelity(shorter, d) <= max_classical_fidelity(d) + 1e-15


def test_no_measurement():
    none = ClassicalPOVMConfig.antipodal(length=0.0)
    assert classical_fidelity(none, UniformBall()) == pytest.approx(0.5 + 3 * math.pi / 32, abs=1e-14)
    assert classical_fidelity(ClassicalPOVMConfig.antipodal(), FixedPurity(1.0)) == pytest.approx(2 / 3)


def test_config_validation():
    with pytest.raises(DomainError):
        ClassicalPOVMConfig(np.array([[0, 0, 1.0], [0, 0, 1.0]]), np.array([1.0, 1.0]))
    with pytest.raises(DomainError):
        ClassicalPOVMConfig(np.array([[0, 0, 1.0]]), np.array([2.0]))


def test_guess_strategy_is_optimal_by_brute_force():
    # scan Bob's guess length along s for FixedPurity inputs and compare against the closed form
    from telefid.bloch import qubit_fidelity

    x = 0.6
    s = np.array([0.0, 0.0, 1.0])
    rng = np.random.default_rng(3)
    dirs = rng.normal(size=(4000, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    t = x * dirs

    def avg(g):
        # POVM {(1 +- s.sigma)/2}: outcome probability (1 +- t.s)/2, Bob prepares +-g s
        total = 0.0
        for sign in (1, -1):
            p = 0.5 * (1 + sign * t @ s)
            total += np.mean([pi * qubit_fidelity(ti, sign * g * s) for pi, ti in zip(p, t)])
        return total

    grid = np.linspace(0, 1, 41)
    best = grid[np.argmax([avg(g) for g in grid])]
    r = np.linalg.norm(best_guess_vector(s, FixedPurity(x)))
    assert abs(best - r) <= 0.03
