# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled per-input outcome kernel and counter-based uniform generator."""

import numpy as np
from libc.math cimport sqrt
from libc.stdint cimport uint64_t

BACKEND = "cython"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
# 1 - |t|^2 below this is rounding noise on a unit vector
cdef double UNIT_SLACK = 1e-15


cdef inline uint64_t _mix(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


def uniforms(uint64_t seed, Py_ssize_t start, Py_ssize_t count, Py_ssize_t dims):
    """Uniform variates in [0, 1) keyed by (seed, start * dims + flat index)."""
    out = np.empty((count, dims), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef uint64_t key = _mix(seed + GOLDEN)
    cdef uint64_t base = <uint64_t>(start * dims)
    cdef Py_ssize_t i, j
    cdef uint64_t c
    with nogil:
        for i in range(count):
            for j in range(dims):
                c = base + <uint64_t>(i * dims + j) + 1
                o[i, j] = (_mix(key + c * GOLDEN) >> 11) * (1.0 / 9007199254740992.0)
    return out


def outcome_terms(
    const double[:, ::1] t,
    const double[:, ::1] n,
    const double[::1] t_C,
    const double[:, ::1] a,
    const double[:, :, ::1] B,
    const double[::1] q,
    const double[:, ::1] u,
    const double[:, :, ::1] R,
    double[:, ::1] probs,
    double[:, ::1] fid,
    double[:, ::1] purity,
):
    """Fill per-input, per-outcome probability, fidelity term and purity term.

    For outcome ``i`` and input ``t``::

        p_i = (1 + q_i + t.(n_i + u_i)) / 4
        v_i = p_i t_{C|i} = (t_C (1 + t.n_i) + a_i + B_i t) / 4
        purity_i = sqrt(p_i^2 - |v_i|^2)
        fid_i = (p_i + t.(R_i v_i) + sqrt(1 - |t|^2) purity_i) / 2
    """
    cdef Py_ssize_t N = t.shape[0]
    cdef Py_ssize_t s, i, k, l
    cdef double t0, t1, t2, tn, p, w, pur, r2, root, dot
    cdef double v[3]
    cdef double rv
    with nogil:
        for s in range(N):
            t0 = t[s, 0]
            t1 = t[s, 1]
            t2 = t[s, 2]
            r2 = 1.0 - (t0 * t0 + t1 * t1 + t2 * t2)
            root = sqrt(r2) if r2 > UNIT_SLACK else 0.0
            for i in range(4):
                tn = t0 * n[i, 0] + t1 * n[i, 1] + t2 * n[i, 2]
                p = 0.25 * (1.0 + q[i] + tn + t0 * u[i, 0] + t1 * u[i, 1] + t2 * u[i, 2])
                if p < 0.0:
                    p = 0.0
                w = 0.0
                for k in range(3):
                    v[k] = 0.25 * (t_C[k] * (1.0 + tn) + a[i, k]
                                   + B[i, k, 0] * t0 + B[i, k, 1] * t1 + B[i, k, 2] * t2)
                    w += v[k] * v[k]
                w = p * p - w
                pur = sqrt(w) if w > 0.0 else 0.0
                dot = 0.0
                for k in range(3):
                    rv = R[i, k, 0] * v[0] + R[i, k, 1] * v[1] + R[i, k, 2] * v[2]
                    dot += t[s, k] * rv
                probs[s, i] = p
                purity[s, i] = pur
                fid[s, i] = 0.5 * (p + dot + root * pur)
