"""Command-line interface: estimate / simulate / design / validate."""
import argparse
import json
import sys

import numpy as np

from . import __version__
from .density import fit
from .errors import DyadDataError, DyadKdeError
from .kernels import by_name
from .oracle import (
    NgpDesign,
    backsolved_bias_magnitude,
    design_summary,
    true_density,
)
from .sample import dyad_mean, read_edge_list_csv
from .simulate import (
    SimConfig,
    default_workers,
    run_replications,
    summarize,
)

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2

UNDERSMOOTH_EPSILON = 0.01


def _fmt(value, full_precision):
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.17g}" if full_precision else f"{value:.6g}"
    return str(value)


def _emit(rows, columns, args, header_lines=()):
    """Write rows as CSV or JSON to --output (default stdout)."""
    fmt = args.format
    if fmt is None:
        if args.output and args.output.endswith(".json"):
            fmt = "json"
        else:
            fmt = "csv"
    if fmt == "json":
        payload = {k: v for line in header_lines for k, v in [line]}
        payload["rows"] = [dict(zip(columns, row)) for row in rows]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [f"# {k}={_fmt(v, True)}" for k, v in header_lines]
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v, args.full_precision) for v in row))
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_output_flags(sub):
    sub.add_argument("--output", help="output path (default: stdout)")
    sub.add_argument(
        "--format", choices=["csv", "json"],
        help="output format (default: csv, or json if --output ends in .json)",
    )
    sub.add_argument(
        "--full-precision", action="store_true",
        help="emit 17 significant digits in CSV (JSON always does)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dyadkde",
        description="Kernel density estimation for undirected dyadic data",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    est = subs.add_parser("estimate", help="density estimates from an edge list")
    est.add_argument("--input", required=True, help="edge-list CSV (i,j,w)")
    grp = est.add_mutually_exclusive_group(required=True)
    grp.add_argument("--points", help="comma-separated evaluation points")
    grp.add_argument("--grid", help="lo:hi:count evaluation grid")
    bw = est.add_mutually_exclusive_group(required=True)
    bw.add_argument("--bandwidth", type=float)
    bw.add_argument(
        "--rule", choices=["mse-oracle", "undersmooth", "knife-edge"],
        help="bandwidth rule (constants echoed in the output header)",
    )
    est.add_argument("--omega2", type=float, help="for --rule mse-oracle")
    est.add_argument("--b", type=float, help="for --rule mse-oracle")
    est.add_argument(
        "--kernel", choices=["epanechnikov", "gaussian"], default="epanechnikov"
    )
    est.add_argument("--alpha", type=float, default=0.05)
    _add_output_flags(est)

    sim = subs.add_parser("simulate", help="Monte Carlo study of the design")
    sim.add_argument("--pi", type=float, required=True)
    sim.add_argument("--w", type=float, required=True)
    sim.add_argument("--N", type=int, required=True, dest="n_nodes")
    sim.add_argument("--h", type=float, required=True)
    sim.add_argument(
        "--kernel", choices=["epanechnikov", "gaussian"], default="gaussian"
    )
    sim.add_argument("--reps", type=int, default=1000)
    sim.add_argument("--seed", type=int, default=20190701)
    sim.add_argument("--alpha", type=float, default=0.05)
    sim.add_argument("--per-rep", help="optional per-replication CSV path")
    _add_output_flags(sim)

    des = subs.add_parser("design", help="analytic design quantities")
    des.add_argument("--pi", type=float, required=True)
    des.add_argument("--w", type=float, required=True)
    des.add_argument(
        "--kernel", choices=["epanechnikov", "gaussian"], default="gaussian"
    )
    des.add_argument("--N", type=int, required=True, dest="n_nodes")
    des.add_argument("--h", type=float, required=True)
    _add_output_flags(des)

    val = subs.add_parser("validate", help="check an edge-list file")
    val.add_argument("--input", required=True)
    return parser


def _bandwidth_from_rule(args, sample, parser):
    values = sample.weights
    n = sample.n_dyads
    sd = float(np.std(values, ddof=1))
    iqr = float(np.percentile(values, 75) - np.percentile(values, 25))
    scale = min(sd, iqr / 1.349) if iqr > 0 else sd
    c = 1.06 * scale
    if args.rule == "mse-oracle":
        if args.omega2 is None or args.b is None:
            parser.error("--rule mse-oracle requires --omega2 and --b")
        from .oracle import mse_optimal_bandwidth

        return mse_optimal_bandwidth(args.omega2, args.b, n), c
    if args.rule == "undersmooth":
        return c * n ** (-0.2 - UNDERSMOOTH_EPSILON), c
    return c / sample.n_nodes, c  # knife-edge


def _cmd_estimate(args, parser):
    sample = read_edge_list_csv(args.input)
    if not 0.0 < args.alpha < 1.0:
        parser.error("--alpha must be in (0,1)")
    if sample.n_nodes < 3:
        parser.error("estimation needs at least 3 nodes")
    if args.points:
        points = [float(p) for p in args.points.split(",")]
    else:
        try:
            lo, hi, count = args.grid.split(":")
            points = list(np.linspace(float(lo), float(hi), int(count)))
        except ValueError:
            parser.error("--grid must be lo:hi:count")
    header = []
    if args.bandwidth is not None:
        if args.bandwidth <= 0:
            parser.error("--bandwidth must be positive")
        h = args.bandwidth
    else:
        h, c = _bandwidth_from_rule(args, sample, parser)
        header += [("rule", args.rule), ("rule_constant", c)]
    header.append(("h", h))
    kernel = by_name(args.kernel)
    columns = [
        "w", "f_hat", "se", "se_iid", "ci_low", "ci_high",
        "omega1_hat", "omega2_hat", "h", "N", "n",
    ]
    rows = []
    for w in points:
        r = fit(sample, w, h, kernel, alpha=args.alpha)
        rows.append([
            r.w, r.f_hat, r.se, r.se_iid, r.ci_low, r.ci_high,
            r.omega1_hat, r.omega2_hat, r.h, r.n_nodes, r.n_dyads,
        ])
    _emit(rows, columns, args, header_lines=header)
    return EXIT_OK


def _cmd_simulate(args, parser):
    if args.n_nodes < 3:
        parser.error("--N must be at least 3")
    if args.reps < 1:
        parser.error("--reps must be at least 1")
    if not 0.0 < args.alpha < 1.0:
        parser.error("--alpha must be in (0,1)")
    if args.h <= 0:
        parser.error("--h must be positive")
    if not 0.0 < args.pi < 1.0:
        parser.error("--pi must be in (0,1)")
    design = NgpDesign(pi=args.pi, w=args.w)
    config = SimConfig(
        design=design,
        n_nodes=args.n_nodes,
        h=args.h,
        kernel=by_name(args.kernel),
        replications=args.reps,
        seed=args.seed,
        alpha=args.alpha,
    )
    f_hat, se, se_iid = run_replications(config, workers=default_workers())
    summary = summarize(config, f_hat, se, se_iid)
    f_true = true_density(design)
    if args.per_rep:
        from .density import normal_quantile

        z = normal_quantile(1.0 - args.alpha / 2.0)
        with open(args.per_rep, "w", encoding="utf-8") as fh:
            fh.write(f"# seed={args.seed}\n")
            fh.write("rep,f_hat,se,se_iid,ci_hit_fg,ci_hit_iid\n")
            for r in range(config.replications):
                hit_fg = int(abs(f_hat[r] - f_true) <= z * se[r])
                hit_iid = int(abs(f_hat[r] - f_true) <= z * se_iid[r])
                fh.write(
                    f"{r},{f_hat[r]:.17g},{se[r]:.17g},{se_iid[r]:.17g},"
                    f"{hit_fg},{hit_iid}\n"
                )
    columns = [
        "N", "h", "reps", "median_bias", "robust_sd", "median_se",
        "coverage_iid", "coverage_fg", "f_true",
    ]
    rows = [[
        args.n_nodes, args.h, summary.replications, summary.median_bias,
        summary.robust_sd, summary.median_se, summary.coverage_iid,
        summary.coverage_fg, f_true,
    ]]
    _emit(rows, columns, args, header_lines=[("seed", args.seed)])
    return EXIT_OK


def _cmd_design(args, parser):
    if args.n_nodes < 3:
        parser.error("--N must be at least 3")
    if args.h <= 0:
        parser.error("--h must be positive")
    if not 0.0 < args.pi < 1.0:
        parser.error("--pi must be in (0,1)")
    design = NgpDesign(pi=args.pi, w=args.w)
    kernel = by_name(args.kernel)
    q = design_summary(design, kernel, args.n_nodes, args.h)
    n = args.n_nodes * (args.n_nodes - 1) // 2
    columns = [
        "N", "h", "f_w", "f_w_cond_plus", "f_w_cond_minus", "omega1",
        "omega2", "bias_coef_b", "bias_backsolved", "h2_bias", "h_star",
        "ase_total", "ase_t3", "ase_t1",
    ]
    rows = [[
        args.n_nodes, args.h, q.f_w, q.f_w_cond_plus, q.f_w_cond_minus,
        q.omega1, q.omega2, q.bias_coef_b,
        backsolved_bias_magnitude(q.omega2, args.h, n),
        args.h ** 2 * q.bias_coef_b, q.h_star, q.ase_total, q.ase_t3, q.ase_t1,
    ]]
    _emit(rows, columns, args, header_lines=[("pi", args.pi), ("w", args.w)])
    return EXIT_OK


def _cmd_validate(args):
    sample = read_edge_list_csv(args.input)
    w = sample.weights
    print(f"file: {args.input}")
    print(f"N: {sample.n_nodes}")
    print(f"n: {sample.n_dyads}")
    print(f"w_min: {float(np.min(w)):.6g}")
    print(f"w_max: {float(np.max(w)):.6g}")
    print(f"w_mean: {dyad_mean(sample):.6g}")
    print("duplicates: consistent (both orientations agree where present)")
    print("symmetry: ok (single stored value per unordered pair)")
    return EXIT_OK


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        if args.command == "estimate":
            return _cmd_estimate(args, parser)
        if args.command == "simulate":
            return _cmd_simulate(args, parser)
        if args.command == "design":
            return _cmd_design(args, parser)
        return _cmd_validate(args)
    except SystemExit as exc:  # parser.error inside a command
        return exc.code if exc.code is not None else EXIT_USAGE
    except DyadDataError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA
    except (DyadKdeError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA


def main():
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
