"""Command line: ``python3 -m aatgs {run,sweep,verify}``.

Exit status is 0 on success, 1 when a verification check fails and 2 for
configuration errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .config import ConfigError, ExperimentConfig, SolverEntry
from .runner import SUITES, run_experiment, run_sweep, run_verification

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


def _value(text):
    """Parse a CLI scalar: JSON if possible (numbers, true/false), else a string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _key_values(text):
    key, sep, values = text.partition("=")
    if not sep or not key:
        raise ConfigError(f"expected key=v1,v2,... got {text!r}")
    return key, [_value(v) for v in values.split(",")]


def _add_common(p):
    p.add_argument("--config", help="JSON experiment file")
    p.add_argument("--problem", help="problem kind, e.g. bratu, hequation, logreg")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="problem parameter (repeatable)")
    p.add_argument("--solver", choices=("aatgs", "aa", "fixed_point"))
    p.add_argument("--m", help="window size, or '-' for unlimited")
    p.add_argument("--restart-d", dest="d", help="fixed restart period, or '-'")
    p.add_argument("--eta", help="monitor threshold (inf disables)")
    p.add_argument("--beta", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output directory")
    p.add_argument("--timing", action="store_true",
                   help="fill the elapsed_ms column (output is then not reproducible)")
    p.add_argument("--workers", type=int, help="concurrent solver runs")


def build_parser():
    parser = argparse.ArgumentParser(prog="aatgs", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("run", help="compare solvers on one problem"))
    sw = sub.add_parser("sweep", help="iteration table over a two-parameter grid")
    _add_common(sw)
    sw.add_argument("--rows", required=True, metavar="KEY=V1,V2,...")
    sw.add_argument("--cols", required=True, metavar="KEY=V1,V2,...")
    ver = sub.add_parser("verify", help="run an invariant suite")
    ver.add_argument("--suite", default="all", choices=SUITES + ("all",))
    ver.add_argument("--seed", type=int, default=0)
    return parser


def config_from_args(args):
    if args.config:
        cfg = ExperimentConfig.load(args.config)
    else:
        cfg = ExperimentConfig(problem={"kind": args.problem or "bratu"},
                               solvers=[SolverEntry()])
    params = {}
    for item in args.param:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--param expects KEY=VALUE, got {item!r}")
        params[key] = _value(value)
    cfg = cfg.with_overrides(problem=args.problem, problem_params=params,
                             method=args.solver, m=args.m, d=args.d, eta=args.eta,
                             beta=args.beta, tol=args.tol, max_iters=args.max_iters,
                             seed=args.seed, output=args.out)
    if args.timing or args.workers:
        cfg = replace(cfg, timing=cfg.timing or args.timing,
                      workers=args.workers or cfg.workers)
    return cfg


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            reports = run_verification(args.suite, args.seed)
            for rep in reports:
                stdout.write(rep.to_text())
            return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED
        cfg = config_from_args(args)
        if args.command == "run":
            stdout.write(run_experiment(cfg).summary_table())
            return EXIT_OK
        row_key, row_vals = _key_values(args.rows)
        col_key, col_vals = _key_values(args.cols)
        _, text = run_sweep(cfg, row_key, row_vals, col_key, col_vals)
        stdout.write(text)
        if cfg.output:
            Path(cfg.output).mkdir(parents=True, exist_ok=True)
            (Path(cfg.output) / "sweep.txt").write_text(text)
        return EXIT_OK
    except ConfigError as exc:
        print(f"aatgs: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
