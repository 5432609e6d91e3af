"""Numerical tolerances shared across the package."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    exact: float = 1e-12
    """Slack for identities that hold exactly in real arithmetic."""
    eigen: float = 1e-10
    """Allowed negative excursion of eigenvalues of a physical state."""
    degenerate: float = 1e-14
    """Outcome probability below which a conditional state is undefined."""


TOL = Tolerances()
