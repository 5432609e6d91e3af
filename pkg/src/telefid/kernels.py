"""Hot-loop dispatch: compiled ``_kernels`` when built, numpy ``_fallback`` otherwise.

Set ``TELEFID_PURE_PYTHON=1`` to force the fallback.  ``TELEFID_THREADS``
gives the default worker count; chunk results land in preallocated arrays,
so output is identical for any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from telefid import _fallback

if os.environ.get("TELEFID_PURE_PYTHON", "") not in ("", "0"):
    _compiled = None
else:
    try:
        from telefid import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKENDS = {"numpy": _fallback}
if _compiled is not None:
    BACKENDS["cython"] = _compiled
DEFAULT_BACKEND = "cython" if _compiled is not None else "numpy"

_CHUNK = 1 << 15


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("TELEFID_THREADS", "1")))
    except ValueError:
        return 1


def _impl(backend: str | None):
    return BACKENDS[backend or DEFAULT_BACKEND]


def uniforms(seed: int, start: int, count: int, dims: int, backend: str | None = None) -> np.ndarray:
    return _impl(backend).uniforms(int(seed) & 0xFFFFFFFFFFFFFFFF, int(start), int(count), int(dims))


def outcome_terms(t, arrays, R, threads: int | None = None, backend: str | None = None):
    """Evaluate the outcome kernel for inputs ``t`` (shape (N, 3)).

    ``arrays`` is the tuple ``(n, t_C, a, B, q, u)`` from
    :func:`telefid.engine.protocol_arrays`; ``R`` holds Bob's four rotations.
    Returns ``(probs, fid, purity)``, each (N, 4).
    """
    impl = _impl(backend)
    t = np.ascontiguousarray(t, dtype=np.float64)
    n, t_C, a, B, q, u = (np.ascontiguousarray(x, dtype=np.float64) for x in arrays)
    R = np.ascontiguousarray(R, dtype=np.float64)
    N = len(t)
    probs = np.empty((N, 4))
    fid = np.empty((N, 4))
    purity = np.empty((N, 4))

    def run(lo: int, hi: int) -> None:
        impl.outcome_terms(t[lo:hi], n, t_C, a, B, q, u, R, probs[lo:hi], fid[lo:hi], purity[lo:hi])

    bounds = [(lo, min(lo + _CHUNK, N)) for lo in range(0, N, _CHUNK)]
    threads = threads or default_threads()
    if threads <= 1 or len(bounds) <= 1:
        for lo, hi in bounds:
            run(lo, hi)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda b: run(*b), bounds))
    return probs, fid, purity
