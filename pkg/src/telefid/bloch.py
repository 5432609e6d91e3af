"""Bloch-vector and correlation-matrix representation of one- and two-qubit states.

Conventions: Pauli index 0..2 maps to (x, y, z) with the standard
``sigma_y = [[0, -i], [i, 0]]``.  For a two-qubit operator the first tensor
factor is the "left" qubit, so ``C[k, l] = <sigma_k (x) sigma_l>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from telefid.constants import TOL

SIGMA = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
IDENTITY2 = np.eye(2, dtype=complex)

# PAULI2[a, b] = sigma_a (x) sigma_b with sigma_0 = identity
_PAULI1 = np.concatenate([IDENTITY2[None], SIGMA])
PAULI2 = np.einsum("aij,bkl->abikjl", _PAULI1, _PAULI1).reshape(4, 4, 4, 4)


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


def as_bloch(t, name: str = "t") -> np.ndarray:
    """Coerce ``t`` to a float 3-vector, rejecting unphysical norms."""
    v = np.asarray(t, dtype=float).reshape(3)
    if not np.all(np.isfinite(v)):
        raise DomainError(f"{name} has non-finite entries")
    if np.linalg.norm(v) > 1 + TOL.exact:
        raise DomainError(f"|{name}| = {np.linalg.norm(v):.3g} exceeds 1")
    return v


def qubit_density(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return 0.5 * (IDENTITY2 + np.einsum("k,kij->ij", t, SIGMA))


def qubit_fidelity(t, s) -> float:
    """Uhlmann fidelity between the qubit states with Bloch vectors ``t`` and ``s``.

    Uses the closed form ``(1 + t.s + sqrt(1-|t|^2) sqrt(1-|s|^2)) / 2``.
    """
    t = as_bloch(t, "t")
    s = as_bloch(s, "s")
    rt = max(1.0 - t @ t, 0.0)
    rs = max(1.0 - s @ s, 0.0)
    value = 0.5 * (1.0 + t @ s + np.sqrt(rt * rs))
    return float(min(max(value, 0.0), 1.0))


@dataclass(frozen=True)
class TwoQubitBlochState:
    """Two-qubit state ``(t_B, t_C, C)``: marginal Bloch vectors and correlations.

    ``C[k, l] = <sigma_k (x) sigma_l>``; the covariance ``T`` is derived on
    demand by :func:`covariance`.
    """

    t_B: np.ndarray = field(default_factory=lambda: np.zeros(3))
    t_C: np.ndarray = field(default_factory=lambda: np.zeros(3))
    C: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))

    def __post_init__(self):
        t_B = np.array(self.t_B, dtype=float).reshape(3)
        t_C = np.array(self.t_C, dtype=float).reshape(3)
        C = np.array(self.C, dtype=float).reshape(3, 3)
        for arr in (t_B, t_C, C):
            arr.setflags(write=False)
        object.__setattr__(self, "t_B", t_B)
        object.__setattr__(self, "t_C", t_C)
        object.__setattr__(self, "C", C)

    @classmethod
    def from_density_matrix(cls, rho) -> "TwoQubitBlochState":
        coeffs = pauli_expectations(rho)
        return cls(t_B=coeffs[1:, 0], t_C=coeffs[0, 1:], C=coeffs[1:, 1:])


def pauli_expectations(rho) -> np.ndarray:
    """Return the 4x4 table ``Tr[rho sigma_a (x) sigma_b]`` with ``sigma_0 = 1``."""
    rho = np.asarray(rho, dtype=complex)
    return np.einsum("abij,ji->ab", PAULI2, rho).real


def to_density_matrix(state: TwoQubitBlochState) -> np.ndarray:
    coeffs = np.zeros((4, 4))
    coeffs[0, 0] = 1.0
    coeffs[1:, 0] = state.t_B
    coeffs[0, 1:] = state.t_C
    coeffs[1:, 1:] = state.C
    return np.einsum("ab,abij->ij", coeffs, PAULI2) / 4.0


def covariance(state: TwoQubitBlochState) -> np.ndarray:
    """``T = C - t_B t_C^T``; zero for product states."""
    return state.C - np.outer(state.t_B, state.t_C)


def is_valid_density_matrix(rho) -> bool:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4) or not np.all(np.isfinite(rho)):
        return False
    if np.max(np.abs(rho - rho.conj().T)) > TOL.exact:
        return False
    if abs(np.trace(rho) - 1.0) > TOL.exact:
        return False
    return bool(np.linalg.eigvalsh(rho).min() >= -TOL.eigen)


def validate_physical(state: TwoQubitBlochState) -> bool:
    if np.any(np.abs(state.C) > 1 + TOL.exact):
        return False
    return is_valid_density_matrix(to_density_matrix(state))
