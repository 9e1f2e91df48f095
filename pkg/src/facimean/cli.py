"""``facimean`` command line.

Exit codes: 0 success, 2 usage or parse error, 3 domain or degenerate
data, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import faci_builder, student_core, wiener_limits
from .errors import ConfigError, DegenerateSample, FaciError, TooFewObservations
from .simulation import config as simconfig
from .simulation import experiments
from .simulation.designs import generate_sample

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4

# Non-normative: the max-ratio condition is asymptotic and has no finite-n cutoff.
DIAGNOSE_WARN_THRESHOLD = 0.05


class ParseError(Exception):
    pass


def read_data(path) -> np.ndarray:
    """One number per line; blank lines and lines starting with ``#`` skipped."""
    values = []
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                v = float(text)
            except ValueError:
                raise ParseError(f"{path}:{lineno}: not a number: {text!r}") from None
            if not np.isfinite(v):
                raise ParseError(f"{path}:{lineno}: non-finite value {text!r}")
            values.append(v)
    return np.array(values, dtype=np.float64)


def _emit(record: dict, as_json: bool):
    if as_json:
        print(json.dumps(record, sort_keys=False))
    else:
        parts = []
        for k, v in record.items():
            if isinstance(v, bool):
                v = str(v).lower()
            elif isinstance(v, float):
                v = repr(v)
            parts.append(f"{k}={v}")
        print(" ".join(parts))


def cmd_ci(args):
    z = read_data(args.data)
    if args.method == "t0":
        if args.t0 is None:
            raise ParseError("--t0 is required with --method t0")
        ci = faci_builder.faci_t0(z, args.t0, args.alpha)
    else:
        if args.t0 is not None:
            raise ParseError("--t0 applies only to --method t0")
        if args.method == "sup":
            ci = faci_builder.faci_sup(z, args.alpha)
        else:
            ci = faci_builder.faci_integral(z, args.alpha)
    record = {"method": args.method, "alpha": args.alpha}
    if args.t0 is not None:
        record["t0"] = args.t0
    record.update(lower=ci.lower, upper=ci.upper, empty=ci.empty, n=int(z.shape[0]),
                  max_ratio=student_core.max_ratio_diagnostic(z))
    _emit(record, args.json)


def cmd_quantile(args):
    if args.kind == "sup":
        kind = wiener_limits.SupAbs()
    elif args.kind == "endpoint":
        kind = wiener_limits.Endpoint(1.0 if args.t0 is None else args.t0)
    else:
        kind = wiener_limits.Integral()
    q = wiener_limits.functional_limit_quantile(kind, args.alpha)
    if args.json:
        print(json.dumps({"kind": args.kind, "alpha": args.alpha, "quantile": q}))
    else:
        print(f"{q:.6f}")


def cmd_diagnose(args):
    z = read_data(args.data)
    if z.shape[0] < 2:
        raise TooFewObservations(f"need at least 2 observations, got {z.shape[0]}")
    if np.all(z == z[0]):
        raise DegenerateSample("all observations are equal")
    ratio = student_core.max_ratio_diagnostic(z)
    ss = student_core.centered_ss(z)
    _emit({"n": int(z.shape[0]), "max_ratio": ratio, "centered_ss": ss}, args.json)
    if ratio > DIAGNOSE_WARN_THRESHOLD:
        print(f"WARNING: max-ratio {ratio:.4g} exceeds {DIAGNOSE_WARN_THRESHOLD} "
              "(heuristic): a few observations dominate the spread")


def cmd_simulate(args):
    cfg = simconfig.load_config(args.config, args.experiment)
    if args.experiment == "coverage":
        report = experiments.coverage_experiment(cfg, threads=args.threads)
        summary = " ".join(f"{m.method}={m.empirical_coverage!r}" for m in report.methods)
    elif args.experiment == "fit":
        report = experiments.fclt_fit_experiment(cfg, threads=args.threads)
        summary = " ".join(f"{k.kind}={k.ks_distance!r}" for k in report.kinds)
    else:
        report = experiments.discrepancy_report(cfg, threads=args.threads)
        summary = " ".join(f"n{r.n}={r.median_sup_distance!r}" for r in report.rows)
    simconfig.persist_report(report, args.out, include_timing=args.timing)
    if args.dump_sample:
        n = cfg.n if cfg.n is not None else cfg.n_grid[0]
        z = generate_sample(cfg.design, n, experiments.replication_rng(cfg.seed, 0))
        with open(args.dump_sample, "w") as f:
            f.writelines(f"{v!r}\n" for v in z.tolist())
    print(f"experiment={args.experiment} out={args.out} "
          f"wall_time_ms={report.wall_time_ms:.1f} {summary}")


def cmd_path(args):
    z = read_data(args.data)
    if args.kind == "centered":
        kind = student_core.CenteredSquares()
    elif args.kind == "raw":
        kind = student_core.RawSquares(0.0 if args.mu is None else args.mu)
    else:
        if args.variances is None:
            raise ParseError("--kind oracle needs --variances FILE")
        kind = student_core.OracleVariance(student_core.VarianceProfile(read_data(args.variances)))
    p = student_core.student_process(z, kind)
    with open(args.out, "w") as f:
        f.write("# breakpoint value\n")
        for c, v in zip(p.breakpoints.tolist(), p.values.tolist()):
            f.write(f"{c!r} {v!r}\n")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="facimean",
        description="Functional asymptotic confidence intervals for a common mean.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ci", help="confidence interval from a data file")
    p.add_argument("--data", required=True)
    p.add_argument("--method", required=True, choices=["sup", "t0", "integral"])
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t0", type=float)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("quantile", help="critical value of a Wiener functional")
    p.add_argument("--kind", required=True, choices=["sup", "endpoint", "integral"])
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--t0", type=float)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_quantile)

    p = sub.add_parser("diagnose", help="max-ratio diagnostic of a data file")
    p.add_argument("--data", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("simulate", help="run a Monte Carlo experiment from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--experiment", required=True, choices=["coverage", "fit", "discrepancy"])
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: all cores); never changes results")
    p.add_argument("--timing", action="store_true",
                   help="record wall_time_ms in the report (breaks byte-identity)")
    p.add_argument("--dump-sample", metavar="FILE",
                   help="also write replication 0's sample, one value per line")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("path", help="dump a Student process path as two columns")
    p.add_argument("--data", required=True)
    p.add_argument("--kind", required=True, choices=["oracle", "centered", "raw"])
    p.add_argument("--mu", type=float)
    p.add_argument("--variances", help="file of sigma_i^2 values, required for oracle")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_path)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ParseError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FaciError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
