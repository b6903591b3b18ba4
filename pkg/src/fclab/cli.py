"""``fc-lab`` command line: moments, density, verify, simulate, stransform.

Output tables
-------------
moments      k,m_k                 (exact fractions as ``p/q``)
density      x,value,error,method
simulate     rmt_report.json and histogram.csv with columns
             bin_center,empirical_frequency,empirical_density,model_density
stransform   k,coefficient         (exact fractions)

Every file written to an output directory references ``manifest.json`` in
the same directory. ``FC_LAB_THREADS`` caps the worker threads.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from importlib import metadata
from pathlib import Path

import numpy as np

from .combinatorics import FcParams, moment_sequence
from .density import (DEFAULT_FLOOR_FRACTION, QUADRATURE_MAX_S, Method, density_grid,
                      moment_grid, support_constant)
from .free import r_transform, s_transform
from .rmt import MemoryCapError, RmtExperimentConfig, histogram_vs_density, product_moments
from .verify import SUITES, run_suite

SCHEMA = "fc-lab/1"
MANIFEST_NAME = "manifest.json"


def _version():
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:  # pragma: no cover - source checkout
        return "0+unknown"


@dataclass
class RunManifest:
    subcommand: str
    params: dict
    seed: int | None
    outputs: list[str] = field(default_factory=list)
    tool_version: str = field(default_factory=_version)
    started: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    wall_clock_s: float | None = None

    def to_dict(self):
        return {"schema": SCHEMA, **asdict(self)}


class _Run:
    """Collects output files, then writes the manifest that references them."""

    def __init__(self, args, subcommand, params, seed):
        self.t0 = getattr(args, "_t0", time.perf_counter())
        self.manifest = RunManifest(subcommand, params, seed)
        if args.out is None:
            stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%fZ")
            self.out = Path("out") / stamp
        else:
            self.out = Path(args.out)
        self.out.mkdir(parents=True, exist_ok=True)

    def write(self, name, text):
        (self.out / name).write_text(text)
        self.manifest.outputs.append(name)

    def finish(self):
        self.manifest.wall_clock_s = round(time.perf_counter() - self.t0, 3)
        (self.out / MANIFEST_NAME).write_text(json.dumps(self.manifest.to_dict(), indent=2))
        return self.out


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def cmd_moments(args, out):
    m = moment_sequence(FcParams(args.s, args.t), args.kmax)
    if args.format == "json":
        doc = {"schema": SCHEMA, "kind": "moments", "s": args.s, "t": str(m.params.t),
               "moments": [str(v) for v in m]}
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write("k,m_k\n")
        for k, v in enumerate(m):
            out.write(f"{k},{v}\n")
    return 0


def _density_method(args):
    if args.method is not None:
        return Method({"quad": "quadrature"}.get(args.method, args.method))
    if args.s == 1:
        return Method.CLOSED_FORM
    return Method.QUADRATURE if args.s <= QUADRATURE_MAX_S else Method.MONTE_CARLO


def cmd_density(args, out):
    s = args.s
    method = _density_method(args)
    if method is Method.QUADRATURE and s > QUADRATURE_MAX_S:
        raise SystemExit(f"fc-lab density: error: quadrature supports s <= {QUADRATURE_MAX_S}")
    if method is Method.CLOSED_FORM and s > 2:
        raise SystemExit("fc-lab density: error: closed forms exist only for s = 1, 2")
    K = float(support_constant(s).K)
    if args.spacing == "moment":
        grid = moment_grid(s, args.npoints)
        floor = 0.0
    else:
        lo = DEFAULT_FLOOR_FRACTION * K if args.xmin is None else args.xmin
        hi = K if args.xmax is None else args.xmax
        grid = np.linspace(lo, hi, args.npoints)
        floor = args.floor
    params = {"s": s, "method": method.value, "spacing": args.spacing,
              "npoints": args.npoints, "xmin": float(grid[0]), "xmax": float(grid[-1]),
              "resolution": args.resolution, "floor": floor}
    seed = args.seed if method is Method.MONTE_CARLO else None
    try:
        est = density_grid(s, grid, method, args.resolution, args.seed or 0, floor)
    except ValueError as exc:
        raise SystemExit(f"fc-lab density: error: {exc}") from None
    run = _Run(args, "density", params, seed)
    run.write("density.csv", est.to_csv(f"{SCHEMA} manifest={MANIFEST_NAME}"))
    run.write("density.json", est.to_json(manifest=MANIFEST_NAME) + "\n")
    path = run.finish()
    out.write(f"wrote {path / 'density.csv'} ({len(grid)} points, method={method.value})\n")
    return 0


def cmd_verify(args, out):
    try:
        checks = run_suite(args.suite, args.s)
    except ValueError as exc:
        raise SystemExit(f"fc-lab verify: error: {exc}") from None
    passed = all(c.passed for c in checks)
    report = {"schema": SCHEMA, "kind": "verify", "suite": args.suite, "s": args.s,
              "passed": passed, "checks": [c.to_dict() for c in checks]}
    # one line per check for people; the JSON report goes to stdout or --report
    lines = "".join(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  observed={c.observed} "
                    f"tolerance={c.tolerance}  {c.detail}\n" for c in checks)
    text = json.dumps(report, indent=2, default=str)
    if args.report:
        Path(args.report).write_text(text + "\n")
        out.write(lines)
    else:
        sys.stderr.write(lines)
        out.write(text + "\n")
    return 0 if passed else 1


def cmd_simulate(args, out):
    try:
        config = RmtExperimentConfig(args.s, args.n, args.trials, args.seed, args.variant,
                                     args.kmax, int(args.mem_cap_mb * 2**20))
        config.check_memory()
    except (ValueError, MemoryCapError) as exc:
        raise SystemExit(f"fc-lab simulate: error: {exc}") from None
    report = product_moments(config)
    params = {"s": args.s, "N": args.n, "trials": args.trials, "variant": config.variant.value,
              "kmax": args.kmax, "bins": args.bins, "hist_trials": args.hist_trials}
    run = _Run(args, "simulate", params, args.seed)
    run.write("rmt_report.json", report.to_json(manifest=MANIFEST_NAME) + "\n")
    if args.bins > 0 and args.n <= 512:
        hconf = RmtExperimentConfig(args.s, args.n, args.hist_trials, args.seed, args.variant,
                                    args.kmax, config.memory_cap)
        table = histogram_vs_density(hconf, args.bins)
        run.write("histogram.csv", table.to_csv(f"{SCHEMA} manifest={MANIFEST_NAME}"))
    path = run.finish()
    out.write("k,mean,std_error,fuss_catalan,relative_deviation\n")
    for (k, m, e), ref, d in zip(report.empirical_moments(), report.reference,
                                 report.relative_deviations):
        out.write(f"{k},{m!r},{e!r},{ref},{float(d)!r}\n")
    out.write(f"# wrote {path}\n")
    return 0


def cmd_stransform(args, out):
    params = FcParams(args.s, args.t)
    if args.kind == "s":
        m = moment_sequence(params, args.order + 1)
        series = s_transform(m, args.order)
    else:
        m = moment_sequence(params, args.order)
        series = r_transform(m, args.order)
    coeffs = [str(c) for c in series]
    if args.format == "json":
        doc = {"schema": SCHEMA, "kind": f"{args.kind}-transform", "s": args.s,
               "t": str(params.t), "coefficients": coeffs}
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write("k,coefficient\n")
        for k, c in enumerate(coeffs):
            out.write(f"{k},{c}\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fc-lab", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="exact Fuss-Catalan moments m_k(t)")
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--t", type=_fraction, default=Fraction(1))
    p.add_argument("--kmax", type=_nonneg_int, default=16)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("density", help="tabulate pi_s; columns x,value,error,method")
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--method", choices=["quadrature", "quad", "mc", "closed"])
    p.add_argument("--xmin", type=float, help="default 1e-3 K")
    p.add_argument("--xmax", type=float, help="default K")
    p.add_argument("--npoints", type=_positive_int, default=200)
    p.add_argument("--spacing", choices=["linear", "moment"], default="linear",
                   help="'moment' places points for moment recovery (ignores xmin/xmax)")
    p.add_argument("--resolution", type=_positive_int,
                   help="nodes per dimension (quadrature) or samples per point (mc)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--floor", type=float, default=None,
                   help="smallest admissible x (default 1e-3 K)")
    p.add_argument("--out", help="output directory (default ./out/<timestamp>)")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("verify", help="run a verification suite; exit 0 iff all pass")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--s", type=_positive_int, default=2)
    p.add_argument("--report", help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Ginibre-product trace moments and histogram")
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--n", type=int, default=200, help="matrix dimension N")
    p.add_argument("--trials", type=_positive_int, default=50)
    p.add_argument("--kmax", type=_positive_int, default=3)
    p.add_argument("--variant", choices=["distinct", "power"], default="distinct")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=_nonneg_int, default=40, help="0 disables the histogram")
    p.add_argument("--hist-trials", type=_positive_int, default=4)
    p.add_argument("--mem-cap-mb", type=float, default=512.0)
    p.add_argument("--out", help="output directory (default ./out/<timestamp>)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("stransform", help="exact S- or R-transform coefficients")
    p.add_argument("--s", type=_positive_int, required=True)
    p.add_argument("--t", type=_fraction, default=Fraction(1))
    p.add_argument("--order", type=_positive_int, default=8)
    p.add_argument("--kind", choices=["s", "r"], default="s")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_stransform)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    args._t0 = time.perf_counter()
    try:
        return args.func(args, out)
    except (ValueError, TypeError) as exc:
        print(f"fc-lab {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
