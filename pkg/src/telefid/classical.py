"""Optimal measure-and-prepare (classical) teleportation fidelities.

The optimal measurement (rank-one POVM) and guessing strategy are taken in
closed form; nothing here optimizes numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from telefid.bloch import DomainError, as_bloch
from telefid.constants import TOL
from telefid.distributions import IsotropicDistribution, i_moment


@dataclass(frozen=True)
class ClassicalPOVMConfig:
    """POVM ``M_i = c_i^2 (1 + s_i.sigma)/2``; ``weights`` holds the ``c_i^2``."""

    directions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.directions, dtype=float).reshape(-1, 3)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        if len(s) != len(w):
            raise ValueError("one weight per direction")
        if np.any(w <= 0):
            raise DomainError("POVM weights must be positive")
        if np.any(np.linalg.norm(s, axis=1) > 1 + TOL.exact):
            raise DomainError("POVM direction outside the Bloch ball")
        if abs(w.sum() - 2.0) > TOL.exact or np.abs(w @ s).max() > TOL.exact:
            raise DomainError("POVM elements do not sum to the identity")
        object.__setattr__(self, "directions", s)
        object.__setattr__(self, "weights", w)

    @classmethod
    def antipodal(cls, axis=(0.0, 0.0, 1.0), length: float = 1.0) -> "ClassicalPOVMConfig":
        v = np.asarray(axis, dtype=float)
        v = length * v / np.linalg.norm(v)
        return cls(np.array([v, -v]), np.array([1.0, 1.0]))

    @classmethod
    def tetrahedral(cls) -> "ClassicalPOVMConfig":
        s = np.array([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], dtype=float) / math.sqrt(3)
        return cls(s, np.full(4, 0.5))


def _guess_coefficients(d: IsotropicDistribution) -> tuple[float, float]:
    return 6.0 * i_moment(d, 0.5), 1.0 - 4.0 * i_moment(d, 1)


def best_guess_vector(s, d: IsotropicDistribution) -> np.ndarray:
    """Bloch vector Bob prepares after the POVM outcome with direction ``s``."""
    s = as_bloch(s, "s")
    g, h = _guess_coefficients(d)
    denom = math.sqrt(g * g + h * h * (s @ s))
    if denom == 0.0:
        return np.zeros(3)
    return h * s / denom


def classical_fidelity(config: ClassicalPOVMConfig, d: IsotropicDistribution) -> float:
    g, h = _guess_coefficients(d)
    s2 = np.einsum("ij,ij->i", config.directions, config.directions)
    return float(0.25 * np.sum(config.weights * (1.0 + np.sqrt(g * g + h * h * s2) / 3.0)))


def max_classical_fidelity(d: IsotropicDistribution) -> float:
    g, h = _guess_coefficients(d)
    return 0.5 * (1.0 + math.sqrt(g * g + h * h) / 3.0)


def classical_mixed_closed_form() -> float:
    """Maximal classical fidelity for inputs uniform in the Bloch ball."""
    return (80.0 + math.sqrt(256.0 + 225.0 * math.pi**2)) / 160.0


def classical_fixed_purity_closed_form(x: float) -> float:
    return 0.5 * (1.0 + math.sqrt(1.0 - x * x + x**4 / 9.0))
