"""Command-line front end: figure curves, useless-volume sweep, MC verification, headline values.

Exit codes: 0 success, 1 computation or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from telefid import kernels
from telefid.bloch import DomainError
from telefid.classical import classical_mixed_closed_form, max_classical_fidelity
from telefid.distributions import FixedPurity, Pure, Shell, parse_distribution
from telefid.engine import (
    QuadratureConfig,
    max_avg_fidelity,
    max_fixed_purity_gap,
    useless_volume_fraction,
    werner_classical_crossing,
)
from telefid.measurements import (
    AgrawalParams,
    agrawal_basis,
    agrawal_basis_cn,
    bell_basis,
    computational_basis,
)
from telefid.oracle import SimConfig, simulate
from telefid.resources import BellDiagonal, classical_quantum, werner

SWEEP_VARIABLES = ("p", "c", "c1", "c2", "c3", "cn", "x", "delta")
VERIFY_FLOOR = 1e-12


class UsageError(Exception):
    pass


def fmt(value: float) -> str:
    return f"{value:.12g}"


@dataclass(frozen=True)
class Sweep:
    name: str
    values: np.ndarray


def parse_sweep(text: str) -> Sweep:
    parts = text.split(":")
    if len(parts) != 4 or parts[0] not in SWEEP_VARIABLES:
        raise UsageError(f"sweep must be name:start:stop:count with name in {SWEEP_VARIABLES}, got {text!r}")
    try:
        start, stop, count = float(parts[1]), float(parts[2]), int(parts[3])
    except ValueError as exc:
        raise UsageError(f"bad sweep {text!r}") from exc
    if count < 1:
        raise UsageError("sweep count must be positive")
    values = np.linspace(start, stop, count) if count > 1 else np.array([start])
    return Sweep(parts[0], values)


def _floats(parts: list[str], text: str) -> list[float]:
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise UsageError(f"bad selector {text!r}") from exc


def build_resource(text: str, sweep: Sweep | None = None, value: float | None = None):
    """Resource from ``werner[:p]``, ``cq:<axis>[:<c>]`` or ``bell:<c1>:<c2>:<c3>``."""
    head, *rest = text.split(":")
    name = sweep.name if sweep else None
    if head == "werner":
        (p,) = _floats(rest, text) or [None]
        if name in ("p", "c"):
            p = value
        if p is None:
            raise UsageError("werner needs a parameter or a p sweep")
        return werner(p)
    if head == "cq":
        vals = _floats(rest, text)
        if not vals:
            raise UsageError("cq needs an axis")
        axis, c = int(vals[0]), (vals[1] if len(vals) > 1 else None)
        if name in ("p", "c"):
            c = value
        if c is None:
            raise UsageError("cq needs a strength or a c sweep")
        return classical_quantum(axis, c)
    if head == "bell":
        vals = _floats(rest, text)
        if len(vals) != 3:
            raise UsageError("bell resource needs c1:c2:c3")
        if name in ("c1", "c2", "c3"):
            vals[int(name[1]) - 1] = value
        s = BellDiagonal(*vals)
        if not s.is_physical():
            raise UsageError(f"{text!r} lies outside the Bell-diagonal tetrahedron")
        return s
    raise UsageError(f"unknown resource selector {text!r}")


def build_basis(text: str, sweep: Sweep | None = None, value: float | None = None):
    """Basis from ``bell``, ``computational``, ``agrawal[:<c_n>]`` or ``agrawal:<r_l>:<phi_l>:<r_p>:<phi_p>``."""
    head, *rest = text.split(":")
    if head == "bell" and not rest:
        return bell_basis()
    if head == "computational" and not rest:
        return computational_basis()
    if head == "agrawal":
        vals = _floats(rest, text)
        if len(vals) == 4:
            return agrawal_basis(AgrawalParams(*vals))
        c_n = vals[0] if vals else None
        if sweep is not None and sweep.name == "cn":
            c_n = value
        if c_n is None or len(vals) > 1:
            raise UsageError("agrawal needs c_n, a cn sweep, or r_l:phi_l:r_p:phi_p")
        return agrawal_basis_cn(c_n)
    raise UsageError(f"unknown basis selector {text!r}")


def build_distribution(text: str, sweep: Sweep | None = None, value: float | None = None):
    name = sweep.name if sweep else None
    if name == "x" and text.split(":")[0] == "fixed":
        return FixedPurity(value)
    if name == "delta" and text.split(":")[0] == "shell":
        # zero width is the pure-state limit
        return Pure() if value == 0.0 else Shell(1.0 - value, 1.0)
    if text in ("fixed", "shell"):
        raise UsageError(f"{text} needs parameters or a matching sweep")
    return parse_distribution(text)


def build_cell(args, sweep: Sweep | None = None, value: float | None = None):
    """``(resource, basis, distribution)`` from the selector arguments; bad input is a usage error."""
    try:
        return (
            build_resource(args.resource, sweep, value),
            build_basis(args.basis, sweep, value),
            build_distribution(args.dist, sweep, value),
        )
    except (DomainError, ValueError, TypeError) as exc:
        where = f" at {sweep.name}={value:g}" if sweep else ""
        raise UsageError(f"invalid selector{where}: {exc}") from exc


def _check_sweep_target(args, sweep: Sweep) -> None:
    targets = {
        "p": args.resource.split(":")[0] in ("werner", "cq"),
        "c": args.resource.split(":")[0] in ("werner", "cq"),
        "c1": args.resource.startswith("bell:"),
        "c2": args.resource.startswith("bell:"),
        "c3": args.resource.startswith("bell:"),
        "cn": args.basis.split(":")[0] == "agrawal" and args.basis.count(":") <= 1,
        "x": args.dist.split(":")[0] == "fixed",
        "delta": args.dist.split(":")[0] == "shell",
    }
    if not targets[sweep.name]:
        raise UsageError(f"sweep variable {sweep.name!r} does not parametrize the chosen selectors")


def _quadrature(args) -> QuadratureConfig:
    return QuadratureConfig(radial=args.radial, polar=args.polar, azimuth=args.azimuth)


def _open_out(path: str | None):
    return open(path, "w", newline="\n", encoding="ascii") if path and path != "-" else sys.stdout


def cmd_curve(args) -> int:
    sweep = parse_sweep(args.sweep)
    _check_sweep_target(args, sweep)
    config = _quadrature(args)
    rows = []
    for v in sweep.values:
        v = float(v)
        resource, basis, dist = build_cell(args, sweep, v)
        result = max_avg_fidelity(resource, basis, dist, config, threads=args.threads)
        rows.append((v, result.f_max, max_classical_fidelity(dist)))
    out = _open_out(args.out)
    try:
        out.write("param,f_max,f_classical\n")
        for v, f, c in rows:
            out.write(f"{fmt(v)},{fmt(f)},{fmt(c)}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_volume(args) -> int:
    sweep = parse_sweep("cn:" + args.cn)
    if sweep.values.min() < 0 or sweep.values.max() > 1:
        raise UsageError("c_n grid must lie in [0, 1]")
    out = _open_out(args.out)
    try:
        out.write("c_n,useless_fraction\n")
        for c_n in sweep.values:
            frac = useless_volume_fraction(
                float(c_n), resolution=args.resolution, mode=args.mode, seed=args.seed, samples=args.samples
            )
            out.write(f"{fmt(c_n)},{fmt(frac)}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def verify_cell(resource, basis, dist, samples: int, seed: int, sigma: float = 3.0,
                stochastic: bool = False, threads: int | None = None) -> dict:
    analytic = max_avg_fidelity(resource, basis, dist, threads=threads).f_max
    report = simulate(resource, basis, SimConfig(samples, seed, dist), stochastic=stochastic, threads=threads)
    delta = report.mean_fidelity - analytic
    return {
        "analytic": analytic,
        "mc_mean": report.mean_fidelity,
        "mc_stderr": report.standard_error,
        "delta": delta,
        "sigma": sigma,
        "pass": bool(abs(delta) <= sigma * report.standard_error + VERIFY_FLOOR),
        "seed": seed,
        "samples": samples,
        "stochastic": stochastic,
        "frequencies": [float(f) for f in report.frequencies],
        "backend": kernels.DEFAULT_BACKEND,
    }


def cmd_verify(args) -> int:
    resource, basis, dist = build_cell(args)
    report = verify_cell(resource, basis, dist, args.samples, args.seed, args.sigma, args.stochastic, args.threads)
    report.update(resource=args.resource, basis=args.basis, dist=args.dist)
    out = _open_out(args.out)
    try:
        json.dump(report, out, indent=2)
        out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0 if report["pass"] else 1


NAMED_VALUES = ("classical-pure", "classical-mixed", "classical-fixed:<x>", "classical-nomeasure",
                "delta-max-werner", "werner-crossing")


def named_value(name: str) -> str:
    if name == "classical-pure":
        return fmt(max_classical_fidelity(Pure()))
    if name == "classical-mixed":
        return fmt(classical_mixed_closed_form())
    if name.startswith("classical-fixed:"):
        try:
            x = float(name.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad purity in {name!r}") from exc
        return fmt(max_classical_fidelity(FixedPurity(x)))
    if name == "classical-nomeasure":
        return fmt(0.5 + 3.0 * math.pi / 32.0)
    if name == "delta-max-werner":
        gap, x = max_fixed_purity_gap(1.0 / 3.0)
        return f"{fmt(gap)} {fmt(x)}"
    if name == "werner-crossing":
        return fmt(werner_classical_crossing())
    raise UsageError(f"unknown quantity {name!r}; choose from {', '.join(NAMED_VALUES)}")


def cmd_value(args) -> int:
    print(named_value(args.name))
    return 0


def cmd_classical(args) -> int:
    try:
        dist = build_distribution(args.dist)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    print(fmt(max_classical_fidelity(dist)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="telefid", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $TELEFID_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    def quad_opts(p):
        p.add_argument("--radial", type=int, default=QuadratureConfig.radial)
        p.add_argument("--polar", type=int, default=QuadratureConfig.polar)
        p.add_argument("--azimuth", type=int, default=QuadratureConfig.azimuth)

    p = sub.add_parser("curve", help="maximal average fidelity along a parameter sweep (CSV)")
    p.add_argument("--resource", required=True, help="werner[:p] | cq:<axis>[:<c>] | bell:<c1>:<c2>:<c3>")
    p.add_argument("--basis", required=True, help="bell | computational | agrawal[:<c_n>]")
    p.add_argument("--dist", required=True, help="pure | fixed[:<x>] | ball | shell[:<a>:<b>]")
    p.add_argument("--sweep", required=True, help="name:start:stop:count, name in " + ",".join(SWEEP_VARIABLES))
    p.add_argument("--out", default=None)
    quad_opts(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("volume", help="useless fraction of Bell-diagonal states for pure inputs (CSV)")
    p.add_argument("--cn", default="0:1:11", help="start:stop:count")
    p.add_argument("--mode", choices=("grid", "mc"), default="grid")
    p.add_argument("--resolution", type=int, default=200)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("verify", help="Monte-Carlo check of one (resource, basis, dist) cell (JSON)")
    p.add_argument("--resource", required=True)
    p.add_argument("--basis", required=True)
    p.add_argument("--dist", required=True)
    p.add_argument("--samples", type=int, default=10**5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma", type=float, default=3.0, help="pass if |delta| <= sigma * stderr")
    p.add_argument("--stochastic", action="store_true", help="draw Alice's outcome instead of averaging it")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("value", help="print a headline number")
    p.add_argument("name", help=" | ".join(NAMED_VALUES))
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("classical", help="optimal classical fidelity for a distribution")
    p.add_argument("--dist", required=True)
    p.set_defaults(func=cmd_classical)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"telefid: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"telefid: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
