import numpy as np
import pytest

from telefid.bloch import DomainError, TwoQubitBlochState, to_density_matrix
from telefid.resources import (
    TETRAHEDRON_VERTICES,
    BellDiagonal,
    classical_quantum,
    effective_resource,
    eigenvalues,
    fef_numeric,
    fully_entangled_fraction,
    is_separable,
    random_tetrahedron_points,
    werner,
)

from conftest import random_density


def test_werner():
    assert werner(0.0).c.tolist() == [0, 0, 0]
    assert werner(1.0).c.tolist() == [1, -1, 1]
    assert sorted(eigenvalues(werner(1 / 3))) == pytest.approx([1 / 6, 1 / 6, 1 / 6, 1 / 2], abs=1e-15)
    with pytest.raises(DomainError):
        werner(1.1)


def test_classical_quantum():
    assert classical_quantum(3, 1.0).c.tolist() == [0, 0, 1]
    assert classical_quantum(1, 0.0).c.tolist() == [0, 0, 0]
    assert sorted(eigenvalues(classical_quantum(1, 0.5))) == pytest.approx([0.125, 0.125, 0.375, 0.375])
    with pytest.raises(DomainError):
        classical_quantum(2, -1.5)
    with pytest.raises(DomainError):
        classical_quantum(4, 0.5)


def test_eigenvalues_match_matrix_spectrum(rng):
    for c in random_tetrahedron_points(rng, 50):
        s = BellDiagonal(*c)
        lam = eigenvalues(s)
        assert lam.sum() == pytest.approx(1.0, abs=1e-15)
        assert np.allclose(np.sort(lam), np.linalg.eigvalsh(to_density_matrix(s.to_state())), atol=1e-12)
    assert eigenvalues(BellDiagonal(0, 0, 0)) == pytest.approx([0.25] * 4)
    assert eigenvalues(BellDiagonal(1, -1, 1)).max() == pytest.approx(1.0)
    for p in (0.0, 0.3, 1.0):
        assert eigenvalues(werner(p)).max() == pytest.approx((1 + 3 * p) / 4)


def test_fef():
    assert fully_entangled_fraction(werner(1 / 3)) == pytest.approx(0.5)
    assert fully_entangled_fraction(BellDiagonal(0, 0, 0)) == pytest.approx(0.25)
    for c3 in (-0.7, 0.2, 1.0):
        assert fully_entangled_fraction(BellDiagonal(0, 0, c3)) == pytest.approx((1 + abs(c3)) / 4)
    for v in TETRAHEDRON_VERTICES:
        assert fully_entangled_fraction(BellDiagonal(*v)) == pytest.approx(1.0)
        assert BellDiagonal(*v).is_physical()


def test_fef_range(rng):
    fef = [fully_entangled_fraction(BellDiagonal(*c)) for c in random_tetrahedron_points(rng, 500)]
    assert min(fef) > 0.25 and max(fef) < 1.0


def test_fef_numeric_examples():
    assert fef_numeric(BellDiagonal(0.5, -0.5, 0.5).to_state()) == pytest.approx(0.625, abs=1e-6)
    assert fef_numeric(TwoQubitBlochState()) == pytest.approx(0.25, abs=1e-6)
    assert fef_numeric(werner(1.0).to_state()) == pytest.approx(1.0, abs=1e-6)


def test_fef_numeric_matches_closed_form(rng):
    for c in random_tetrahedron_points(rng, 100):
        s = BellDiagonal(*c)
        assert abs(fef_numeric(s.to_state()) - fully_entangled_fraction(s)) < 1e-6


def test_fef_numeric_general_state(rng):
    # independent check: the FEF is max over local unitaries; compare with dense unitary sampling
    from scipy.stats import unitary_group

    rho = random_density(rng, 4)
    state = TwoQubitBlochState.from_density_matrix(rho)
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    sampled = 0.0
    for U in unitary_group.rvs(2, size=4000, random_state=1):
        v = np.kron(U, np.eye(2)) @ phi
        sampled = max(sampled, np.vdot(v, rho @ v).real)
    value = fef_numeric(state)
    assert value >= sampled - 1e-9
    assert value - sampled < 5e-3


def test_separability():
    assert is_separable(werner(1 / 3))
    assert not is_separable(werner(0.34))
    assert is_separable(BellDiagonal(0, 0, 1))
    assert not is_separable(BellDiagonal(1, -1, 1))


def test_effective_resource():
    s = BellDiagonal(0.3, -0.2, 0.4)
    assert effective_resource(s, 1.0) == s
    for p in (0.2, 0.7):
        eff = effective_resource(werner(p), 0.0)
        assert eff.c.tolist() == [0, 0, p]
        assert fully_entangled_fraction(eff) == pytest.approx((1 + p) / 4)
    assert effective_resource(werner(1.0), 0.5).c.tolist() == [0.5, -0.5, 1.0]
    with pytest.raises(DomainError):
        effective_resource(s, 1.2)


def test_effective_resource_monotone(rng):
    grid = np.linspace(0, 1, 21)
    for c in random_tetrahedron_points(rng, 100):
        s = BellDiagonal(*c)
        fef = [fully_entangled_fraction(effective_resource(s, cn)) for cn in grid]
        assert np.all(np.diff(fef) >= -1e-15)
        assert all(effective_resource(s, cn).is_physical() for cn in grid)


def test_tetrahedron_sampler_is_uniform(rng):
    pts = random_tetrahedron_points(rng, 200000)
    assert all(BellDiagonal(*c).is_physical() for c in pts[:2000])
    # centroid at the origin, and the separable octahedron holds half the volume
    assert np.abs(pts.mean(axis=0)).max() < 0.01
    assert np.mean(np.abs(pts).sum(axis=1) <= 1) == pytest.approx(0.5, abs=0.01)
