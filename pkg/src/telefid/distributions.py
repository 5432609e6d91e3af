"""Isotropic input-state distributions over the Bloch ball.

A distribution is a radial density ``f(t)`` normalized so that
``4 pi int_0^1 t^2 f(t) dt = 1``.  Point-mass kinds (``Pure``,
``FixedPurity``) are kept symbolic; every integral against them is a single
evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from telefid.bloch import DomainError

FOUR_PI = 4.0 * math.pi
DEFAULT_RADIAL_NODES = 64


@lru_cache(maxsize=32)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _shell_half_moment(t: float) -> float:
    """Antiderivative of ``t^2 sqrt(1 - t^2)``."""
    return (math.asin(t) - t * math.sqrt(max(1.0 - t * t, 0.0)) * (1.0 - 2.0 * t * t)) / 8.0


class IsotropicDistribution:
    """Base class; subclasses define the radial law."""

    name = "abstract"
    is_point_mass = False

    def alpha(self) -> float:
        raise NotImplementedError

    def i_moment(self, exponent: float) -> float:
        raise NotImplementedError

    def radial_nodes(self, n: int = DEFAULT_RADIAL_NODES) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def sample_radius(self, u):
        raise NotImplementedError

    def spec(self) -> str:
        """Selector string understood by :func:`parse_distribution`."""
        raise NotImplementedError


@dataclass(frozen=True)
class Pure(IsotropicDistribution):
    name = "pure"
    is_point_mass = True

    def alpha(self) -> float:
        return 1.0 / FOUR_PI

    def i_moment(self, exponent: float) -> float:
        _check_exponent(exponent)
        return 0.0

    def radial_nodes(self, n: int = DEFAULT_RADIAL_NODES):
        return np.array([1.0]), np.array([1.0 / FOUR_PI])

    def sample_radius(self, u):
        return np.ones_like(np.asarray(u, dtype=float))[()]

    def spec(self) -> str:
        return "pure"


@dataclass(frozen=True)
class FixedPurity(IsotropicDistribution):
    x: float
    name = "fixed"
    is_point_mass = True

    def __post_init__(self):
        if not 0.0 <= self.x <= 1.0:
            raise DomainError(f"fixed purity x = {self.x} outside [0, 1]")

    def alpha(self) -> float:
        return self.x**2 / FOUR_PI

    def i_moment(self, exponent: float) -> float:
        _check_exponent(exponent)
        return ((1.0 - self.x**2) / 4.0) ** exponent

    def radial_nodes(self, n: int = DEFAULT_RADIAL_NODES):
        return np.array([float(self.x)]), np.array([1.0 / FOUR_PI])

    def sample_radius(self, u):
        return np.full_like(np.asarray(u, dtype=float), self.x)[()]

    def spec(self) -> str:
        return f"fixed:{self.x!r}"


@dataclass(frozen=True)
class Shell(IsotropicDistribution):
    """Uniform density on the shell ``a <= |t| <= b``."""

    a: float
    b: float
    name = "shell"

    def __post_init__(self):
        if not 0.0 <= self.a < self.b <= 1.0:
            raise DomainError(f"shell needs 0 <= a < b <= 1, got a={self.a}, b={self.b}")

    @property
    def density(self) -> float:
        return 3.0 / (FOUR_PI * (self.b**3 - self.a**3))

    def alpha(self) -> float:
        a, b = self.a, self.b
        return 3.0 * (b**5 - a**5) / (20.0 * math.pi * (b**3 - a**3))

    def i_moment(self, exponent: float) -> float:
        _check_exponent(exponent)
        a, b = self.a, self.b
        scale = 3.0 / (b**3 - a**3)
        if exponent == 1:
            return scale * ((b**3 - a**3) / 3.0 - (b**5 - a**5) / 5.0) / 4.0
        return scale * (_shell_half_moment(b) - _shell_half_moment(a)) / 2.0

    def radial_nodes(self, n: int = DEFAULT_RADIAL_NODES):
        # t = sin(theta) removes the sqrt(1 - t^2) endpoint singularity of the integrands
        if n < 1:
            raise ValueError("need at least one radial node")
        x, w = _gauss_legendre(n)
        lo, hi = math.asin(self.a), math.asin(self.b)
        half = 0.5 * (hi - lo)
        theta = lo + half * (x + 1.0)
        t = np.sin(theta)
        weights = self.density * t * t * np.cos(theta) * w * half
        return t, weights

    def sample_radius(self, u):
        u = np.asarray(u, dtype=float)
        return np.cbrt(self.a**3 + u * (self.b**3 - self.a**3))[()]

    def spec(self) -> str:
        return f"shell:{self.a!r}:{self.b!r}"


@dataclass(frozen=True)
class UniformBall(Shell):
    """Uniform (Hilbert-Schmidt flat) density on the whole Bloch ball."""

    a: float = 0.0
    b: float = 1.0
    name = "ball"

    def alpha(self) -> float:
        return 3.0 / (20.0 * math.pi)

    def i_moment(self, exponent: float) -> float:
        _check_exponent(exponent)
        return 0.1 if exponent == 1 else 3.0 * math.pi / 32.0

    def sample_radius(self, u):
        return np.cbrt(np.asarray(u, dtype=float))[()]

    def spec(self) -> str:
        return "ball"


def _check_exponent(exponent: float) -> None:
    if exponent not in (0.5, 1):
        raise DomainError(f"I-moment exponent must be 1/2 or 1, got {exponent}")


def alpha_moment(d: IsotropicDistribution) -> float:
    """``int_0^1 f(t) t^4 dt``."""
    return d.alpha()


def i_moment(d: IsotropicDistribution, exponent: float) -> float:
    """``4 pi int t^2 f(t) ((1 - t^2)/4)^exponent dt`` for exponent 1/2 or 1."""
    return d.i_moment(exponent)


def radial_nodes(d: IsotropicDistribution, n: int = DEFAULT_RADIAL_NODES):
    """Nodes ``t_j`` and weights ``w_j`` with ``sum_j w_j g(t_j) ~ int f(t) t^2 g(t) dt``."""
    return d.radial_nodes(n)


def sample_radius(d: IsotropicDistribution, u):
    """Inverse-CDF radius for uniform variate(s) ``u`` in [0, 1)."""
    return d.sample_radius(u)


def parse_distribution(text: str) -> IsotropicDistribution:
    """Parse ``pure``, ``fixed:<x>``, ``ball`` or ``shell:<a>:<b>``."""
    head, *args = text.strip().split(":")
    try:
        values = [float(a) for a in args]
    except ValueError as exc:
        raise DomainError(f"bad distribution selector {text!r}") from exc
    if head == "pure" and not values:
        return Pure()
    if head == "ball" and not values:
        return UniformBall()
    if head == "fixed" and len(values) == 1:
        return FixedPurity(values[0])
    if head == "shell" and len(values) == 2:
        return Shell(values[0], values[1])
    raise DomainError(f"bad distribution selector {text!r}")
