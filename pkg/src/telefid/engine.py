"""Maximal average fidelity of qubit teleportation.

General route: Bob's best rotation for each outcome comes from a
determinant-constrained Procrustes problem; the remaining purity term is
integrated with a radial x spherical product rule.  Closed forms for the
special resource/basis/distribution combinations live alongside it and serve
as cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np

from telefid import kernels
from telefid.bloch import DomainError, TwoQubitBlochState, as_bloch, covariance, validate_physical
from telefid.constants import TOL
from telefid.distributions import (
    DEFAULT_RADIAL_NODES,
    FixedPurity,
    IsotropicDistribution,
    UniformBall,
    alpha_moment,
)
from telefid.elliptic import werner_radial_integral
from telefid.measurements import VonNeumannBasis, agrawal_basis_cn, bell_basis
from telefid.resources import (
    BellDiagonal,
    effective_resource,
    fef_numeric,
    fully_entangled_fraction,
)

Resource = Union[BellDiagonal, TwoQubitBlochState]


@dataclass(frozen=True)
class QuadratureConfig:
    radial: int = DEFAULT_RADIAL_NODES
    polar: int = 48
    azimuth: int = 96


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class ConditionalOutcome:
    probability: float
    bloch: np.ndarray
    degenerate: bool = False


@dataclass(frozen=True)
class EngineResult:
    f_max: float
    fef_term: float
    purity_term: float
    max_trace: float
    rotations: np.ndarray
    diagnostics: dict = field(default_factory=dict)


def as_state(resource: Resource) -> TwoQubitBlochState:
    if isinstance(resource, BellDiagonal):
        return resource.to_state()
    return resource


def _bell_diagonal_view(resource: Resource) -> BellDiagonal | None:
    if isinstance(resource, BellDiagonal):
        return resource
    if np.any(resource.t_B) or np.any(resource.t_C):
        return None
    C = resource.C
    if np.any(C - np.diag(np.diag(C))):
        return None
    return BellDiagonal(*np.diag(C))


def _check_inputs(state: TwoQubitBlochState, basis: VonNeumannBasis) -> None:
    if not validate_physical(state):
        raise DomainError("resource state is not physical")
    if not basis.is_complete(TOL.eigen):
        raise DomainError("measurement basis is incomplete")


# --- per-input protocol -----------------------------------------------------


def conditional_outcomes(t, resource: Resource, basis: VonNeumannBasis) -> list[ConditionalOutcome]:
    """Outcome probabilities and Bob's conditional Bloch vectors for input ``t``."""
    t = as_bloch(t)
    state = as_state(resource)
    T = covariance(state)
    out = []
    for proj in basis:
        p = 0.25 * (1.0 + t @ proj.n + state.t_B @ proj.m + t @ proj.C @ state.t_B)
        if p < TOL.degenerate:
            out.append(ConditionalOutcome(max(p, 0.0), state.t_C.copy(), degenerate=True))
            continue
        bloch = state.t_C + T.T @ (proj.m + proj.C.T @ t) / (4.0 * p)
        out.append(ConditionalOutcome(p, bloch))
    return out


def score(t, outcomes) -> float:
    """Average fidelity between input ``t`` and outputs ``(p_i, t_i)``."""
    t = np.asarray(t, dtype=float)
    probs = np.array([p for p, _ in outcomes], dtype=float)
    vecs = np.array([v for _, v in outcomes], dtype=float).reshape(-1, 3)
    roots = np.sqrt(np.maximum(1.0 - np.einsum("ij,ij->i", vecs, vecs), 0.0))
    value = 0.5 * (1.0 + t @ (probs @ vecs) + math.sqrt(max(1.0 - t @ t, 0.0)) * (probs @ roots))
    return float(value)


def maximize_trace_over_rotation(M) -> tuple[float, np.ndarray]:
    """``max_R Tr[M R^T]`` over proper rotations and the maximizer.

    The maximum is ``s1 + s2 + sign(det M) s3`` in terms of the singular values.
    Diagonal ``M`` is handled exactly with a signed identity.
    """
    M = np.asarray(M, dtype=float).reshape(3, 3)
    diag = np.diag(M)
    if not np.any(M - np.diag(diag)):
        signs = np.where(diag < 0, -1.0, 1.0)
        if np.prod(signs) < 0:
            k = int(np.argmin(np.abs(diag)))
            signs[k] = -signs[k]
        return float(signs @ diag), np.diag(signs)
    U, s, Vt = np.linalg.svd(M)
    d = 1.0 if np.linalg.det(U) * np.linalg.det(Vt) > 0 else -1.0
    R = U @ np.diag([1.0, 1.0, d]) @ Vt
    return float(s[0] + s[1] + d * s[2]), R


def trace_matrices(state: TwoQubitBlochState, basis: VonNeumannBasis) -> np.ndarray:
    """``M_i = n_i t_C^T + C_i C`` so that the rotation-dependent overlap is ``sum Tr[M_i R_i^T]``."""
    n, _, Ci = basis.arrays()
    return np.einsum("ik,l->ikl", n, state.t_C) + Ci @ state.C


def optimal_rotations(resource: Resource, basis: VonNeumannBasis) -> tuple[np.ndarray, float]:
    state = as_state(resource)
    R = np.empty((4, 3, 3))
    total = 0.0
    for i, M in enumerate(trace_matrices(state, basis)):
        value, R[i] = maximize_trace_over_rotation(M)
        total += value
    return R, total


def protocol_arrays(resource: Resource, basis: VonNeumannBasis):
    """Precomputed coefficients ``(n, t_C, a, B, q, u)`` for the outcome kernel.

    With these, ``p_i = (1 + q_i + t.(n_i + u_i))/4`` and
    ``p_i t_{C|i} = (t_C (1 + t.n_i) + a_i + B_i t)/4``.
    """
    state = as_state(resource)
    n, m, Ci = basis.arrays()
    a = m @ state.C  # rows C^T m_i
    B = np.einsum("lk,ijl->ikj", state.C, Ci)  # C^T C_i^T
    q = m @ state.t_B
    u = Ci @ state.t_B
    return n, state.t_C.copy(), a, B, q, u


# --- quadrature -------------------------------------------------------------


@lru_cache(maxsize=16)
def sphere_nodes(polar: int, azimuth: int) -> tuple[np.ndarray, np.ndarray]:
    """Unit directions and weights summing to ``4 pi``: Gauss-Legendre in cos(theta) x trapezoid in phi."""
    z, wz = np.polynomial.legendre.leggauss(polar)
    phi = 2.0 * np.pi * np.arange(azimuth) / azimuth
    rho = np.sqrt(1.0 - z * z)
    dirs = np.stack(
        [
            np.outer(rho, np.cos(phi)).ravel(),
            np.outer(rho, np.sin(phi)).ravel(),
            np.repeat(z, azimuth),
        ],
        axis=1,
    )
    weights = np.repeat(wz, azimuth) * (2.0 * np.pi / azimuth)
    dirs.setflags(write=False)
    weights.setflags(write=False)
    return dirs, weights


def ball_nodes(d: IsotropicDistribution, config: QuadratureConfig = DEFAULT_QUADRATURE):
    """Points ``t`` in the ball and weights with ``sum w g(t) ~ int d^3t f(t) g(t)``."""
    points, weights, radii, _ = _cached_nodes(d, config)
    return points, weights, radii


@lru_cache(maxsize=32)
def _cached_nodes(d: IsotropicDistribution, config: QuadratureConfig):
    radii, rw = d.radial_nodes(config.radial)
    dirs, dw = sphere_nodes(config.polar, config.azimuth)
    points = (radii[:, None, None] * dirs[None]).reshape(-1, 3)
    weights = (rw[:, None] * dw[None]).ravel()
    # sqrt(1 - t^2) from the exact radial nodes; points are stored radius-major
    root = np.sqrt(np.maximum(1.0 - radii * radii, 0.0))
    rooted = ((rw * root)[:, None] * dw[None]).ravel()
    for a in (points, weights, radii, rooted):
        a.setflags(write=False)
    return points, weights, radii, rooted


def _purity_integral(d, config, per_point) -> float:
    return float(_cached_nodes(d, config)[3] @ per_point)


_ONES4 = np.ones(4)


def max_avg_fidelity(
    resource: Resource,
    basis: VonNeumannBasis,
    d: IsotropicDistribution,
    config: QuadratureConfig = DEFAULT_QUADRATURE,
    threads: int | None = None,
    backend: str | None = None,
) -> EngineResult:
    """Maximal average fidelity over Bob's unitary corrections, any resource and basis."""
    state = as_state(resource)
    _check_inputs(state, basis)
    R, max_trace = optimal_rotations(state, basis)
    alpha = alpha_moment(d)
    fef_term = math.pi * alpha * max_trace / 6.0

    points = ball_nodes(d, config)[0]
    identity = np.broadcast_to(np.eye(3), (4, 3, 3))
    probs, _, purity = kernels.outcome_terms(points, protocol_arrays(state, basis), identity, threads, backend)
    purity_term = 0.5 * _purity_integral(d, config, purity @ _ONES4)

    f_max = 0.5 + fef_term + purity_term
    diagnostics = {
        "radial_nodes": len(ball_nodes(d, config)[2]),
        "angular_nodes": config.polar * config.azimuth,
        "backend": backend or kernels.DEFAULT_BACKEND,
        "probability_residual": float(np.abs(probs @ _ONES4 - 1.0).max()),
    }
    return EngineResult(f_max, fef_term, purity_term, max_trace, R, diagnostics)


# --- closed forms and alternative routes ------------------------------------


def fef_form_fidelity(
    resource: Resource, d: IsotropicDistribution, config: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """Bell-measurement fidelity written through the fully entangled fraction.

    Conditional states use ``t_{C|i} = (t_C + (C_i C)^T t) / (1 + t.C_i t_B)``.
    The entangled fraction is exact for Bell-diagonal resources and numeric otherwise.
    """
    state = as_state(resource)
    bd = _bell_diagonal_view(resource)
    fef = fully_entangled_fraction(bd) if bd is not None else fef_numeric(state)
    alpha = alpha_moment(d)
    points = ball_nodes(d, config)[0]
    _, _, Ci = bell_basis().arrays()
    total = np.zeros(len(points))
    for Cb in Ci:
        scale = 1.0 + points @ (Cb @ state.t_B)  # = 4 p_i
        vec = state.t_C + points @ (Cb @ state.C)  # = 4 p_i t_{C|i}
        total += 0.25 * np.sqrt(np.maximum(scale**2 - np.einsum("sk,sk->s", vec, vec), 0.0))
    purity = _purity_integral(d, config, total)
    return 0.5 * (1.0 + 8.0 * math.pi * alpha / 3.0 * (2.0 * fef - 0.5) + purity)


def effective_resource_fidelity(
    s: BellDiagonal, c_n: float, d: IsotropicDistribution, config: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """Fidelity with the real parametrized measurement ``c_n`` and a Bell-diagonal resource.

    The rotation part reduces to the standard protocol with resource
    ``(c_n c1, c_n c2, c3)``; the purity part uses
    ``p_i = (1 + t_3 n_i)/4`` and ``p_i t_{C|i} = C (m_i + C_i t) / 4``.
    """
    fef = fully_entangled_fraction(effective_resource(s, c_n))
    alpha = alpha_moment(d)
    basis = agrawal_basis_cn(c_n)
    n, m, Ci = basis.arrays()
    C = np.diag(s.c)
    points = ball_nodes(d, config)[0]
    total = np.zeros(len(points))
    for i in range(4):
        p = 0.25 * (1.0 + points[:, 2] * n[i, 2])
        vec = 0.25 * (m[i] + points @ Ci[i].T) @ C.T
        total += np.sqrt(np.maximum(p * p - np.einsum("sk,sk->s", vec, vec), 0.0))
    purity = _purity_integral(d, config, total)
    return 0.5 * (1.0 + 8.0 * math.pi * alpha / 3.0 * (2.0 * fef - 0.5) + purity)


def werner_fidelity(p: float, d: IsotropicDistribution, n: int = DEFAULT_RADIAL_NODES) -> float:
    """Bell measurement with a Werner resource: a single radial integral."""
    t, w = d.radial_nodes(n)
    radial = float(np.sum(w * np.sqrt(np.maximum((1.0 - t * t) * (1.0 - p * p * t * t), 0.0))))
    return 0.5 * (1.0 + 4.0 * math.pi * alpha_moment(d) * p + 4.0 * math.pi * radial)


def werner_mixed_closed_form(p: float) -> float:
    """Werner resource, Bell measurement, inputs uniform in the ball (elliptic-integral form)."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p = {p} outside [0, 1]")
    return 0.5 + 0.3 * p + 1.5 * werner_radial_integral(p)


def fixed_purity_closed_form(p: float, x: float) -> float:
    """Werner resource, Bell measurement, inputs of fixed Bloch length ``x``."""
    if not (0.0 <= p <= 1.0 and 0.0 <= x <= 1.0):
        raise DomainError("p and x must lie in [0, 1]")
    return 0.5 * (1.0 + p * x * x + math.sqrt((1.0 - x * x) * (1.0 - p * p * x * x)))


def cq_mixed_fidelity(c: float, d: IsotropicDistribution, n: int = DEFAULT_RADIAL_NODES) -> float:
    """Bell measurement with the classical-quantum resource ``(0, 0, c)``.

    The angular average of ``sqrt(1 - c^2 t_3^2)`` is done analytically, leaving
    one radial integral.
    """
    if abs(c) > 1.0:
        raise DomainError(f"|c| = {abs(c)} exceeds 1")
    t, w = d.radial_nodes(n)
    k = abs(c) * t
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(k > 1e-8, np.arcsin(np.minimum(k, 1.0)) / k, 1.0 + k * k / 6.0)
    sphere_mean = 0.5 * (np.sqrt(np.maximum(1.0 - k * k, 0.0)) + ratio)
    radial = float(np.sum(w * np.sqrt(np.maximum(1.0 - t * t, 0.0)) * sphere_mean))
    alpha = alpha_moment(d)
    return 0.5 * (1.0 + 4.0 * math.pi * alpha * abs(c) / 3.0 + 4.0 * math.pi * radial)


def pure_input_fidelity(s: BellDiagonal, c_n: float) -> float:
    return (2.0 * fully_entangled_fraction(effective_resource(s, c_n)) + 1.0) / 3.0


def fixed_purity_gap(p: float, x: float) -> float:
    """Werner/Bell fidelity minus the classical optimum at fixed purity ``x``."""
    from telefid.classical import max_classical_fidelity

    return fixed_purity_closed_form(p, x) - max_classical_fidelity(FixedPurity(x))


def max_fixed_purity_gap(p: float = 1.0 / 3.0) -> tuple[float, float]:
    """``(max_x gap, argmax)`` of :func:`fixed_purity_gap` on [0, 1]."""
    from scipy.optimize import minimize_scalar

    res = minimize_scalar(lambda x: -fixed_purity_gap(p, x), bounds=(0.0, 1.0), method="bounded",
                          options={"xatol": 1e-10})
    return float(-res.fun), float(res.x)


def werner_classical_crossing(tol: float = 1e-12) -> float:
    """Werner parameter where the mixed-input Bell-measurement fidelity meets the classical optimum."""
    from scipy.optimize import brentq

    from telefid.classical import max_classical_fidelity

    target = max_classical_fidelity(UniformBall())
    return float(brentq(lambda p: werner_mixed_closed_form(p) - target, 0.0, 1.0 / 3.0, xtol=tol))


# --- useless resources for pure inputs --------------------------------------


def _useless_mask(c: np.ndarray, c_n: float) -> tuple[np.ndarray, np.ndarray]:
    """(inside tetrahedron, useless) masks for Bell-diagonal points ``c`` of shape (N, 3)."""
    signs = np.array([(-1, -1, -1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)], dtype=float)
    lam = 0.25 * (1.0 + c @ signs.T)
    inside = lam.min(axis=1) >= -TOL.eigen
    eff = c * np.array([c_n, c_n, 1.0])
    fef = (0.25 * (1.0 + eff @ signs.T)).max(axis=1)
    # (2F + 1)/3 <= 2/3  <=>  F <= 1/2
    return inside, fef <= 0.5 + TOL.exact


def useless_volume_fraction(
    c_n: float, resolution: int = 200, mode: str = "grid", seed: int = 0, samples: int = 10**6
) -> float:
    """Fraction of the Bell-diagonal tetrahedron whose pure-input fidelity is at most 2/3.

    ``grid`` counts cell midpoints of a ``resolution**3`` lattice on [-1, 1]^3;
    ``mc`` draws uniform points in the tetrahedron from the counter-based generator.
    """
    if not 0.0 <= c_n <= 1.0:
        raise DomainError(f"c_n = {c_n} outside [0, 1]")
    if mode == "grid":
        axis = -1.0 + (np.arange(resolution) + 0.5) * (2.0 / resolution)
        g1, g2 = np.meshgrid(axis, axis, indexing="ij")
        inside_total = useless_total = 0
        for c3 in axis:
            pts = np.stack([g1.ravel(), g2.ravel(), np.full(g1.size, c3)], axis=1)
            inside, useless = _useless_mask(pts, c_n)
            inside_total += int(inside.sum())
            useless_total += int((inside & useless).sum())
        return useless_total / inside_total
    if mode == "mc":
        from telefid.resources import TETRAHEDRON_VERTICES

        u = np.sort(kernels.uniforms(seed, 0, samples, 3), axis=1)
        w = np.diff(np.concatenate([np.zeros((samples, 1)), u, np.ones((samples, 1))], axis=1), axis=1)
        pts = w @ TETRAHEDRON_VERTICES
        _, useless = _useless_mask(pts, c_n)
        return float(useless.mean())
    raise ValueError(f"unknown mode {mode!r}")
