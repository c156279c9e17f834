"""Command-line front end: ``spintomo {kernel,figure,verify,tomogram,reconstruct}``.

Exit codes: 0 success, 1 a verification check failed, 2 bad configuration
or input.  Files go to ``--out``, else to ``$SPINTOMO_OUTPUT_DIR`` (or the
working directory) under a default name; ``--out -`` writes to stdout.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import io as sio
from .equivalence import delta_j1, kernel_cg
from .figures import FIGURES, figure_grid, normalized_axis
from .kernels import kernel_explicit, kernel_trace, recurrence_kernel
from .sampling import random_phase_points
from .su2 import check_parity, dim, projections
from .tomography import PhasePoint, SphereQuadrature, reconstruct, tomogram
from .verification import SUITES, checks_for, run_checks

OUTPUT_DIR_ENV = "SPINTOMO_OUTPUT_DIR"
KERNEL_METHODS = {
    "trace": kernel_trace,
    "explicit": kernel_explicit,
    "cg": kernel_cg,
    "recurrence": lambda tj, *x: recurrence_kernel(tj)(tj, *x),
}


class ConfigError(ValueError):
    """Invalid command-line configuration (exit code 2)."""


@dataclass
class RunConfig:
    command: str
    twice_j: int | None = None
    quad_L: int | None = None
    quad_M: int | None = None
    seed: int = 0
    samples: int | None = None
    tolerances: dict = field(default_factory=dict)
    out: str | None = None
    fmt: str = "json"
    slow: bool = False
    degrees: bool = False

    def __post_init__(self):
        if self.twice_j is not None and self.twice_j < 0:
            raise ConfigError("--twice-j must be non-negative")
        for name in ("quad_L", "quad_M"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ConfigError(f"--{name.replace('_', '-')} must be at least 1")
        if self.samples is not None and self.samples < 1:
            raise ConfigError("--samples must be at least 1")
        # zero is allowed: it makes every inexact check fail on purpose
        for key, tol in self.tolerances.items():
            if not tol >= 0:
                raise ConfigError(f"tolerance {key}={tol} must be non-negative")

    def quadrature(self, twice_j: int) -> SphereQuadrature:
        return SphereQuadrature.for_spin(twice_j, self.quad_L, self.quad_M)


# ---- parsing helpers ----------------------------------------------------


def parse_tolerances(items) -> dict:
    """``--tol 1e-9`` sets every tolerance; ``--tol name=1e-9`` one check (optionally ``suite.name``)."""
    out = {}
    for item in items or ():
        key, _, value = item.rpartition("=")
        try:
            out[key or "*"] = float(value)
        except ValueError:
            raise ConfigError(f"bad tolerance {item!r}") from None
    return out


def parse_axis(text: str, degrees: bool = False) -> np.ndarray:
    """``theta,phi`` (radians unless ``degrees``) or Cartesian ``x,y,z``."""
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise ConfigError(f"axis {text!r} is not a list of numbers") from None
    if len(values) == 2:
        theta, phi = (math.radians(v) for v in values) if degrees else values
        if not 0 <= theta <= math.pi:
            raise ConfigError(f"polar angle {values[0]} outside [0, pi]")
        return np.array([math.cos(phi) * math.sin(theta), math.sin(phi) * math.sin(theta), math.cos(theta)])
    if len(values) == 3:
        try:
            return normalized_axis(values)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    raise ConfigError(f"axis {text!r} needs 2 angles or 3 Cartesian components")


def _destination(cfg: RunConfig, default_name: str):
    if cfg.out == "-":
        return None
    if cfg.out:
        return Path(cfg.out)
    return Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / default_name


def _emit(cfg: RunConfig, text: str, default_name: str, announce: bool = True):
    path = _destination(cfg, default_name)
    if path is None:
        sys.stdout.write(text)
    else:
        sio.write_text(path, text)
        if announce:
            print(f"wrote {path}")


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+.12e}{z.imag:+.12e}j"


# ---- commands -----------------------------------------------------------


def cmd_kernel(cfg: RunConfig, args) -> int:
    tj = 1 if cfg.twice_j is None else cfg.twice_j
    methods = args.methods.split(",")
    unknown = set(methods) - set(KERNEL_METHODS)
    if unknown:
        raise ConfigError(f"unknown kernel method(s) {sorted(unknown)}; choose from {sorted(KERNEL_METHODS)}")
    rng = np.random.default_rng(cfg.seed)
    random_pts = [random_phase_points(tj, rng) for _ in range(3)]
    twice_m = args.twice_m if args.twice_m is not None else [int(p.twice_m) for p in random_pts]
    try:
        check_parity(tj, twice_m)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    axes = [
        parse_axis(text, cfg.degrees) if text is not None else p.n
        for text, p in zip((args.n3, args.n2, args.n1), random_pts)
    ]
    points = [PhasePoint(m, n) for m, n in zip(twice_m, axes)]
    values = {name: complex(KERNEL_METHODS[name](tj, *points)) for name in methods}
    gaps = {f"{a}-{b}": values[a] - values[b] for i, a in enumerate(methods) for b in methods[i + 1 :]}
    report = {
        "twice_j": tj,
        "twice_m": {"x3": twice_m[0], "x2": twice_m[1], "x1": twice_m[2]},
        "axes": {"n3": axes[0], "n2": axes[1], "n1": axes[2]},
        "values": {k: {"re": v.real, "im": v.imag} for k, v in values.items()},
        "gaps": {k: {"re": v.real, "im": v.imag, "abs": abs(v)} for k, v in gaps.items()},
    }
    if tj == 2:
        report["delta_j1"] = {"re": complex(delta_j1(*points)).real, "im": complex(delta_j1(*points)).imag}
    if cfg.out:
        text = sio.dumps_json(report) if cfg.fmt == "json" else sio.rows_to_csv(
            ("method", "re", "im"), [(k, v.real, v.imag) for k, v in values.items()]
        )
        _emit(cfg, text, f"kernel.{cfg.fmt}")
        return 0
    print(f"2j={tj}  2m(x3,x2,x1)={tuple(twice_m)}")
    for name, v in values.items():
        print(f"  {name:<11s} {_fmt_complex(v)}")
    for name, v in gaps.items():
        print(f"  gap {name:<20s} {_fmt_complex(v)}  |{abs(v):.3e}|")
    if "delta_j1" in report:
        print(f"  delta_j1    {_fmt_complex(complex(delta_j1(*points)))}")
    return 0


def cmd_figure(cfg: RunConfig, args) -> int:
    if args.figure not in FIGURES:
        raise ConfigError(f"unknown figure id {args.figure!r}; choose from {sorted(FIGURES)}")
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        tt, pp, values, meta = figure_grid(args.figure, args.n_theta, args.n_phi)
    if not np.all(np.isfinite(values)):
        raise RuntimeError("non-finite kernel values on the figure grid")
    rows = [(float(t), float(p), complex(v).real, complex(v).imag) for t, p, v in zip(tt.ravel(), pp.ravel(), values.ravel())]
    columns = ("theta1", "phi1", "re", "im")
    if cfg.fmt == "json":
        text = sio.dumps_json({**meta, "columns": list(columns), "rows": [list(r) for r in rows]})
    else:
        header = "".join(f"# {k}: {v}\n" for k, v in sorted(meta.items()))
        text = header + sio.rows_to_csv(columns, rows)
    _emit(cfg, text, f"{args.figure}.{cfg.fmt}")
    return 0


def cmd_verify(cfg: RunConfig, args) -> int:
    tj = 3 if cfg.twice_j is None else cfg.twice_j
    suites = SUITES if args.suite == "all" else (args.suite,)
    checks = [c for s in suites for c in checks_for(s, tj, cfg.samples, cfg.slow)]
    results = run_checks(checks, cfg.seed, cfg.tolerances)
    failed = [f"{r.suite}.{r.name}[2j={r.twice_j}]" for r in results if not r.passed]
    report = {
        "config": {
            "suite": args.suite,
            "max_twice_j": tj,
            "seed": cfg.seed,
            "samples": cfg.samples,
            "slow": cfg.slow,
            "tolerance_overrides": cfg.tolerances,
        },
        "checks": [r.to_dict() for r in results],
        "passed": not failed,
        "failed": failed,
    }
    text = sio.dumps_json(report)
    if cfg.out and cfg.out != "-":
        _emit(cfg, text, "verify.json", announce=False)
    else:
        sys.stdout.write(text)
    for name in failed:
        print(f"FAILED {name}", file=sys.stderr)
    return 1 if failed else 0


def _state_matrix(spec: str, twice_j: int | None) -> np.ndarray:
    if spec == "mixed":
        if twice_j is None:
            raise ConfigError("--twice-j is required for the maximally mixed state")
        return np.eye(dim(twice_j)) / dim(twice_j)
    if spec.startswith("pure:"):
        if twice_j is None:
            raise ConfigError("--twice-j is required for a named pure state")
        try:
            tm = int(spec[5:])
        except ValueError:
            raise ConfigError(f"bad projection in {spec!r}; use pure:<2m>") from None
        if tm not in projections(twice_j):
            raise ConfigError(f"2m={tm} is not a projection of 2j={twice_j}")
        rho = np.zeros((dim(twice_j), dim(twice_j)))
        i = (twice_j - tm) // 2
        rho[i, i] = 1.0
        return rho
    try:
        rho = sio.density_matrix_from_dict(sio.load(spec))
    except (OSError, KeyError, ValueError) as exc:
        raise ConfigError(f"cannot read density matrix from {spec!r}: {exc}") from None
    if twice_j is not None and rho.shape[0] != dim(twice_j):
        raise ConfigError(f"density matrix has dim {rho.shape[0]}, expected {dim(twice_j)}")
    return rho


def cmd_tomogram(cfg: RunConfig, args) -> int:
    rho = _state_matrix(args.state, cfg.twice_j)
    tj = rho.shape[0] - 1
    w = tomogram(rho, cfg.quadrature(tj))
    text = sio.dumps_json(sio.symbol_table_to_dict(w)) if cfg.fmt == "json" else sio.symbol_table_to_csv(w)
    _emit(cfg, text, f"tomogram.{cfg.fmt}")
    return 0


def cmd_reconstruct(cfg: RunConfig, args) -> int:
    try:
        w = sio.symbol_table_from_dict(sio.load(args.tomogram))
    except (OSError, KeyError, ValueError) as exc:
        raise ConfigError(f"cannot read tomogram from {args.tomogram!r}: {exc}") from None
    try:
        rho = reconstruct(w)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    _emit(cfg, sio.dumps_json(sio.density_matrix_to_dict(rho)), "density_matrix.json")
    return 0


COMMANDS = {
    "kernel": cmd_kernel,
    "figure": cmd_figure,
    "verify": cmd_verify,
    "tomogram": cmd_tomogram,
    "reconstruct": cmd_reconstruct,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--twice-j", type=int, help="twice the spin, 2j")
    common.add_argument("--quad-L", type=int, help="Gauss-Legendre nodes in cos(theta) (default 2j+2)")
    common.add_argument("--quad-M", type=int, help="uniform nodes in phi (default 4j+2)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, help="override per-check sample counts")
    common.add_argument("--tol", action="append", metavar="[NAME=]VALUE", help="tolerance override (repeatable)")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="output path; '-' for stdout")
    common.add_argument("--slow", action="store_true", help="include the brute-force Fourier check")
    common.add_argument("--degrees", action="store_true", help="angles are given in degrees")

    parser = argparse.ArgumentParser(prog="spintomo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", parents=[common], help="evaluate the star-product kernel by several methods")
    p.add_argument("--twice-m", type=int, nargs=3, metavar=("M3", "M2", "M1"), help="doubled projections")
    for name in ("n3", "n2", "n1"):
        p.add_argument(f"--{name}", help="axis as theta,phi or x,y,z (random if omitted)")
    p.add_argument("--methods", default="trace,explicit,cg,recurrence")

    p = sub.add_parser("figure", parents=[common], help="export a kernel grid")
    p.add_argument("figure", help=f"one of {', '.join(sorted(FIGURES))}")
    p.add_argument("--n-theta", type=int, default=90)
    p.add_argument("--n-phi", type=int, default=180)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")

    p = sub.add_parser("tomogram", parents=[common], help="tomogram of a state")
    p.add_argument("state", help="pure:<2m>, mixed, or a density-matrix JSON file")

    p = sub.add_parser("reconstruct", parents=[common], help="density matrix from a tomogram file")
    p.add_argument("tomogram", help="tomogram JSON file")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            twice_j=args.twice_j,
            quad_L=args.quad_L,
            quad_M=args.quad_M,
            seed=args.seed,
            samples=args.samples,
            tolerances=parse_tolerances(args.tol),
            out=args.out,
            fmt=args.fmt,
            slow=args.slow,
            degrees=args.degrees,
        )
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"spintomo: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
