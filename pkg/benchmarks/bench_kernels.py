"""Compiled vs numpy backend timings for the hot kernels.

    python benchmarks/bench_kernels.py [--samples N] [--repeat R] [--threads T]
"""

import argparse
import time

import numpy as np

from telefid import kernels
from telefid.distributions import UniformBall
from telefid.engine import max_avg_fidelity, optimal_rotations, protocol_arrays
from telefid.measurements import AgrawalParams, agrawal_basis
from telefid.oracle import SimConfig, simulate
from telefid.resources import BellDiagonal


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=10**6)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    state = BellDiagonal(0.3, -0.5, 0.6).to_state()
    basis = agrawal_basis(AgrawalParams(0.4, 0.7, 0.6, 1.3))
    arrays = protocol_arrays(state, basis)
    R, _ = optimal_rotations(state, basis)
    t = np.cbrt(np.random.default_rng(0).uniform(size=(args.samples, 1))) * np.array([[0.0, 0.6, 0.8]])
    cases = {
        f"uniforms ({args.samples} x 4)": lambda b: kernels.uniforms(1, 0, args.samples, 4, backend=b),
        f"outcome_terms ({args.samples} inputs)": lambda b: kernels.outcome_terms(t, arrays, R, args.threads, b),
        f"simulate ({args.samples} samples)": lambda b: simulate(
            state, basis, SimConfig(args.samples, 1, UniformBall()), threads=args.threads, backend=b
        ),
        "max_avg_fidelity (64 x 48 x 96 nodes)": lambda b: max_avg_fidelity(
            state, basis, UniformBall(), threads=args.threads, backend=b
        ),
    }
    names = sorted(kernels.BACKENDS)
    print(f"{'case':<40}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases.items():
        times = {n: best_of(lambda: fn(n), args.repeat) for n in names}
        row = f"{label:<40}" + "".join(f"{times[n] * 1e3:>10.1f}ms" for n in names)
        if "cython" in times:
            row += f"{times['numpy'] / times['cython']:>11.1f}x"
        print(row)
    if len(names) == 1:
        print("compiled extension not built; only the numpy fallback was timed")


if __name__ == "__main__":
    main()
