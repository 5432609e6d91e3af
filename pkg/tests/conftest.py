"""Shared oracles: matrix-form fidelities and an explicit density-matrix protocol."""

import numpy as np
import pytest

from telefid.bloch import SIGMA, TwoQubitBlochState, qubit_density


def _sqrtm_psd(a):
    w, v = np.linalg.eigh(a)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def uhlmann_fidelity(t, s):
    """Tr[sqrt(sqrt(rho) sigma sqrt(rho))]^2 through 2x2 eigen-decompositions."""
    r = _sqrtm_psd(qubit_density(t))
    inner = _sqrtm_psd(r @ qubit_density(s) @ r)
    return float(np.trace(inner).real ** 2)


def random_density(rng, dim=4, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_state(rng, rank=None):
    return TwoQubitBlochState.from_density_matrix(random_density(rng, 4, rank))


def random_ball(rng, size):
    v = rng.normal(size=(size, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return v * rng.uniform(size=(size, 1)) ** (1 / 3)


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def matrix_protocol(t, rho_bc, effects):
    """Probabilities and Bob's Bloch vectors from Tr_AB[(M_i (x) 1) (rho_A (x) rho_BC)]."""
    full = np.kron(qubit_density(t), rho_bc)
    probs, blochs = [], []
    for M in effects:
        out = (np.kron(M, np.eye(2)) @ full).reshape(4, 2, 4, 2)
        rho_c = np.einsum("iaib->ab", out)
        p = np.trace(rho_c).real
        probs.append(p)
        blochs.append(np.einsum("kab,ba->k", SIGMA, rho_c).real / p)
    return np.array(probs), np.array(blochs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# (criterion, title, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE, key=lambda r: (isinstance(r[0], str), r[0])):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number:>2}  {title}: {detail}")
