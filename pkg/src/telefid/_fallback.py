"""Pure numpy implementation of the hot kernels (same contract as ``_kernels``)."""

import numpy as np

BACKEND = "numpy"

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


# 1 - |t|^2 below this is rounding noise on a unit vector
UNIT_SLACK = 1e-15


def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def uniforms(seed, start, count, dims):
    with np.errstate(over="ignore"):
        key = _mix(np.array([seed], dtype=np.uint64) + _GOLDEN)
        c = np.arange(count * dims, dtype=np.uint64) + np.uint64(start * dims + 1)
        bits = _mix(key + c * _GOLDEN) >> np.uint64(11)
    return (bits.astype(np.float64) * (1.0 / 9007199254740992.0)).reshape(count, dims)


def outcome_terms(t, n, t_C, a, B, q, u, R, probs, fid, purity):
    t = np.asarray(t)
    tn = t @ n.T
    p = 0.25 * (1.0 + q + tn + t @ u.T)
    np.maximum(p, 0.0, out=p)
    v = 0.25 * (t_C * (1.0 + tn)[..., None] + a + np.einsum("ikl,sl->sik", B, t))
    w = p * p - np.einsum("sik,sik->si", v, v)
    pur = np.sqrt(np.maximum(w, 0.0))
    dot = np.einsum("sk,ikl,sil->si", t, R, v)
    r2 = 1.0 - np.einsum("sk,sk->s", t, t)
    root = np.where(r2 > UNIT_SLACK, np.sqrt(np.maximum(r2, 0.0)), 0.0)
    probs[...] = p
    purity[...] = pur
    fid[...] = 0.5 * (p + dot + root[:, None] * pur)
