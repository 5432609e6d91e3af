"""Four-outcome von Neumann bases on the input qubit and Alice's half of the resource.

Each rank-one effect is stored through its Pauli decomposition
``M = (1 + n.sigma (x) 1 + 1 (x) m.sigma + sum C_kl sigma_k (x) sigma_l) / 4``.
Bases are always built from explicit state amplitudes via
:func:`decompose_projector`, so labels cannot drift from the states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from telefid.bloch import PAULI2, DomainError, pauli_expectations
from telefid.constants import TOL

SQRT_HALF = math.sqrt(0.5)


@dataclass(frozen=True)
class ProjectorBloch:
    n: np.ndarray
    m: np.ndarray
    C: np.ndarray

    def operator(self) -> np.ndarray:
        coeffs = np.zeros((4, 4))
        coeffs[0, 0] = 1.0
        coeffs[1:, 0] = self.n
        coeffs[0, 1:] = self.m
        coeffs[1:, 1:] = self.C
        return np.einsum("ab,abij->ij", coeffs, PAULI2) / 4.0


@dataclass(frozen=True)
class VonNeumannBasis:
    outcomes: tuple[ProjectorBloch, ProjectorBloch, ProjectorBloch, ProjectorBloch]
    label: str = ""

    def __post_init__(self):
        if len(self.outcomes) != 4:
            raise ValueError("a von Neumann basis on two qubits has exactly 4 outcomes")

    def __iter__(self):
        return iter(self.outcomes)

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Stacked ``(n, m, C)`` with shapes (4, 3), (4, 3), (4, 3, 3)."""
        n = np.array([o.n for o in self.outcomes], dtype=float)
        m = np.array([o.m for o in self.outcomes], dtype=float)
        C = np.array([o.C for o in self.outcomes], dtype=float)
        return n, m, C

    def is_complete(self, tol: float = TOL.exact) -> bool:
        n, m, C = self.arrays()
        return bool(
            np.abs(n.sum(0)).max() <= tol
            and np.abs(m.sum(0)).max() <= tol
            and np.abs(C.sum(0)).max() <= tol
        )


@dataclass(frozen=True)
class AgrawalParams:
    r_l: float
    phi_l: float
    r_p: float
    phi_p: float

    def __post_init__(self):
        vals = (self.r_l, self.phi_l, self.r_p, self.phi_p)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("Agrawal parameters must be finite")
        if self.r_l < 0 or self.r_p < 0:
            raise DomainError("Agrawal radii must be non-negative")


def decompose_projector(amplitudes) -> ProjectorBloch:
    """Pauli decomposition ``(n, m, C)`` of ``|psi><psi|`` for a normalized 2-qubit ket."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(4)
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > TOL.exact:
        raise DomainError(f"amplitudes not normalized (norm^2 = {norm!r})")
    coeffs = pauli_expectations(np.outer(psi, psi.conj()))
    return ProjectorBloch(n=coeffs[1:, 0], m=coeffs[0, 1:], C=coeffs[1:, 1:])


def agrawal_states(params: AgrawalParams) -> np.ndarray:
    """Rows are the kets ``(phi_l^+, phi_l^-, psi_p^+, psi_p^-)`` in the basis |00>,|01>,|10>,|11>."""
    l = params.r_l * np.exp(1j * params.phi_l)
    p = params.r_p * np.exp(1j * params.phi_p)
    nl = 1.0 / math.sqrt(1.0 + params.r_l**2)
    np_ = 1.0 / math.sqrt(1.0 + params.r_p**2)
    return np.array(
        [
            [nl, 0, 0, nl * l],
            [nl * np.conj(l), 0, 0, -nl],
            [0, np_, np_ * p, 0],
            [0, np_ * np.conj(p), -np_, 0],
        ],
        dtype=complex,
    )


def agrawal_basis(params: AgrawalParams) -> VonNeumannBasis:
    outcomes = tuple(decompose_projector(row) for row in agrawal_states(params))
    return VonNeumannBasis(outcomes, label=f"agrawal({params.r_l:g},{params.phi_l:g},{params.r_p:g},{params.phi_p:g})")


def bell_basis() -> VonNeumannBasis:
    basis = agrawal_basis(AgrawalParams(1.0, 0.0, 1.0, 0.0))
    return VonNeumannBasis(basis.outcomes, label="bell")


def computational_basis() -> VonNeumannBasis:
    basis = agrawal_basis(AgrawalParams(0.0, 0.0, 0.0, 0.0))
    return VonNeumannBasis(basis.outcomes, label="computational")


def correlation_factor(r_n: float) -> float:
    """Measurement correlation ``c_n = 2 r / (1 + r^2)`` for ``r`` in [0, 1]."""
    if not 0.0 <= r_n <= 1.0:
        raise DomainError(f"r_n = {r_n} outside [0, 1]")
    return 2.0 * r_n / (1.0 + r_n * r_n)


def radius_for_correlation(c_n: float) -> float:
    """Inverse of :func:`correlation_factor` on [0, 1]."""
    if not 0.0 <= c_n <= 1.0:
        raise DomainError(f"c_n = {c_n} outside [0, 1]")
    if c_n == 0.0:
        return 0.0
    # stable form of (1 - sqrt(1 - c^2)) / c
    return c_n / (1.0 + math.sqrt(1.0 - c_n * c_n))


def agrawal_basis_cn(c_n: float) -> VonNeumannBasis:
    """Real, equal-parameter member ``l = p = r_n`` of the family, indexed by ``c_n``."""
    r = radius_for_correlation(c_n)
    basis = agrawal_basis(AgrawalParams(r, 0.0, r, 0.0))
    return VonNeumannBasis(basis.outcomes, label=f"agrawal:{c_n:g}")


def basis_factorization_check(basis: VonNeumannBasis, c_n: float, tol: float = TOL.exact) -> bool:
    """True iff every ``C_i`` equals ``diag(c_n, c_n, 1) C'_i`` for the matching Bell ``C'_i``."""
    D = np.diag([c_n, c_n, 1.0])
    _, _, C = basis.arrays()
    _, _, C_bell = bell_basis().arrays()
    return bool(np.abs(C - D @ C_bell).max() <= tol)


def measurement_entanglement(r: float) -> float:
    """Entanglement entropy (bits) of ``(|00> + r|11>)/sqrt(1+r^2)``."""
    if r < 0:
        raise DomainError("r must be non-negative")
    if r == 0.0:
        return 0.0
    r2 = r * r
    # Schmidt probabilities 1/(1+r^2), r^2/(1+r^2)
    value = math.log2(1.0 + r2) - r2 * math.log2(r2) / (1.0 + r2)
    return min(max(value, 0.0), 1.0)
