"""Complete elliptic integrals by the arithmetic-geometric mean.

Parameter convention: ``K(m) = int_0^{pi/2} (1 - m sin^2)^{-1/2}``, i.e. ``m = k^2``.
"""

from __future__ import annotations

import math

_MAX_ITER = 64


def _agm_sequence(m: float):
    a, b = 1.0, math.sqrt(1.0 - m)
    c2 = m  # c_0^2
    acc = 0.5 * c2  # sum of 2^(j-1) c_j^2
    power = 0.5
    for _ in range(_MAX_ITER):
        if abs(a - b) <= 4e-16 * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        power *= 2.0
        acc += power * c * c
    else:
        raise ArithmeticError("AGM did not converge")
    return a, acc


def ellipk(m: float) -> float:
    """Complete elliptic integral of the first kind."""
    if m >= 1.0:
        if m == 1.0:
            return math.inf
        raise ValueError("ellipk requires m <= 1")
    a, _ = _agm_sequence(m)
    return math.pi / (2.0 * a)


def ellipe(m: float) -> float:
    """Complete elliptic integral of the second kind."""
    if m > 1.0:
        raise ValueError("ellipe requires m <= 1")
    if m == 1.0:
        return 1.0
    a, acc = _agm_sequence(m)
    return math.pi / (2.0 * a) * (1.0 - acc)


def _werner_series(p: float, terms: int = 40) -> float:
    # sqrt(1 - p^2 t^2) = sum_k binom(1/2, k) (-p^2 t^2)^k ;
    # int_0^1 t^(2k+2) sqrt(1-t^2) dt = B(k + 3/2, 3/2) / 2
    total = 0.0
    coeff = 1.0
    p2 = p * p
    for k in range(terms):
        beta = math.exp(math.lgamma(k + 1.5) + math.lgamma(1.5) - math.lgamma(k + 3.0))
        total += coeff * beta / 2.0
        coeff *= (0.5 - k) / (k + 1) * -p2
        if abs(coeff) < 1e-20:
            break
    return total


def werner_radial_integral(p: float) -> float:
    """``int_0^1 t^2 sqrt((1 - t^2)(1 - p^2 t^2)) dt`` for ``p`` in [0, 1].

    Closed form in ``E(p^2), K(p^2)``; a power series in ``p^2`` near 0 where the
    closed form cancels catastrophically.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if p == 1.0:
        return 2.0 / 15.0
    if p < 0.25:
        return _werner_series(p)
    m = p * p
    p4 = m * m
    return (2.0 * (p4 - m + 1.0) * ellipe(m) - (p4 - 3.0 * m + 2.0) * ellipk(m)) / (15.0 * p4)
