"""Resource states: Werner, Bell-diagonal and classical-quantum families."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from telefid.bloch import DomainError, TwoQubitBlochState, to_density_matrix
from telefid.constants import TOL

# sign patterns (s1, s2, s3) of the four Bell-diagonal eigenvalues
_EIG_SIGNS = np.array([(-1, -1, -1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)], dtype=float)
# vertex k is the pure Bell state whose eigenvalue uses sign pattern k
TETRAHEDRON_VERTICES = _EIG_SIGNS.copy()


@dataclass(frozen=True)
class BellDiagonal:
    c1: float
    c2: float
    c3: float

    @property
    def c(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3], dtype=float)

    def to_state(self) -> TwoQubitBlochState:
        return TwoQubitBlochState(C=np.diag(self.c))

    def is_physical(self) -> bool:
        return bool(min(eigenvalues(self)) >= -TOL.eigen)


def werner(p: float) -> BellDiagonal:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"Werner parameter p = {p} outside [0, 1]")
    return BellDiagonal(p, -p, p)


def classical_quantum(axis: int, c: float) -> BellDiagonal:
    """Bell-diagonal state with a single non-zero correlation ``c`` on ``axis`` (1, 2 or 3)."""
    if axis not in (1, 2, 3):
        raise DomainError(f"axis must be 1, 2 or 3, got {axis}")
    if abs(c) > 1.0:
        raise DomainError(f"|c| = {abs(c)} exceeds 1")
    coords = [0.0, 0.0, 0.0]
    coords[axis - 1] = float(c)
    return BellDiagonal(*coords)


def eigenvalues(s: BellDiagonal) -> np.ndarray:
    """The four eigenvalues ``(1 + s . c) / 4`` over the sign patterns with product -1."""
    return 0.25 * (1.0 + _EIG_SIGNS @ s.c)


def fully_entangled_fraction(s: BellDiagonal) -> float:
    return float(eigenvalues(s).max())


def is_separable(s: BellDiagonal) -> bool:
    return bool(np.abs(s.c).sum() <= 1.0 + TOL.exact)


def effective_resource(s: BellDiagonal, c_n: float) -> BellDiagonal:
    """Bell-diagonal state ``(c_n c1, c_n c2, c3)`` seen through a parametrized measurement."""
    if not 0.0 <= c_n <= 1.0:
        raise DomainError(f"c_n = {c_n} outside [0, 1]")
    out = BellDiagonal(c_n * s.c1, c_n * s.c2, s.c3)
    if s.is_physical():
        assert out.is_physical(), "effective resource left the tetrahedron"
    return out


def random_tetrahedron_points(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform points in the Bell-diagonal tetrahedron (Dirichlet weights on the vertices)."""
    w = rng.dirichlet(np.ones(4), size=size)
    return w @ TETRAHEDRON_VERTICES


_PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2.0)


def _su2(v: np.ndarray) -> np.ndarray:
    """``exp(-i v.sigma / 2)``; the rotation vector ``v`` covers SU(2)/phase for |v| <= 2 pi."""
    theta = float(np.linalg.norm(v))
    if theta < 1e-300:
        return np.eye(2, dtype=complex)
    x, y, z = v / theta
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c - 1j * s * z, -s * (y + 1j * x)], [s * (y - 1j * x), c + 1j * s * z]])


class ConvergenceError(RuntimeError):
    pass


def _overlap(rho: np.ndarray, v: np.ndarray) -> float:
    W = np.kron(_su2(v), np.eye(2))
    phi = W.conj().T @ _PHI_PLUS
    return float(np.vdot(phi, rho @ phi).real)


def fef_numeric(state: TwoQubitBlochState, grid: int = 12, tol: float = 1e-10) -> float:
    """Fully entangled fraction by direct maximization over local unitaries on the first qubit.

    Coarse ``grid**3`` search over rotation vectors in the ball of radius pi
    (enough for SU(2) modulo a sign), then Nelder-Mead from the best cells.
    """
    rho = to_density_matrix(state)
    axis = np.linspace(-math.pi, math.pi, grid)
    cands = []
    for v in itertools.product(axis, axis, axis):
        v = np.array(v)
        if np.linalg.norm(v) <= math.pi + 1e-12:
            cands.append((_overlap(rho, v), tuple(v)))
    cands.sort(reverse=True)
    best = cands[0][0]
    for _, v0 in cands[:4]:
        res = minimize(
            lambda v: -_overlap(rho, v),
            np.array(v0),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": tol, "maxiter": 4000},
        )
        if not res.success:
            raise ConvergenceError(f"Nelder-Mead stalled: {res.message}")
        best = max(best, -res.fun)
    return best
