"""Maximal average fidelity of qubit teleportation for isotropic (mixed) input ensembles."""

from telefid.bloch import DomainError, TwoQubitBlochState, qubit_fidelity
from telefid.classical import max_classical_fidelity
from telefid.distributions import FixedPurity, Pure, Shell, UniformBall, parse_distribution
from telefid.engine import EngineResult, QuadratureConfig, max_avg_fidelity
from telefid.measurements import agrawal_basis, agrawal_basis_cn, bell_basis, computational_basis
from telefid.oracle import SimConfig, SimReport, simulate
from telefid.resources import BellDiagonal, classical_quantum, werner

__all__ = [
    "BellDiagonal",
    "DomainError",
    "EngineResult",
    "FixedPurity",
    "Pure",
    "QuadratureConfig",
    "Shell",
    "SimConfig",
    "SimReport",
    "TwoQubitBlochState",
    "UniformBall",
    "agrawal_basis",
    "agrawal_basis_cn",
    "bell_basis",
    "classical_quantum",
    "computational_basis",
    "max_avg_fidelity",
    "max_classical_fidelity",
    "parse_distribution",
    "qubit_fidelity",
    "simulate",
    "werner",
]

__version__ = "0.1.0"
