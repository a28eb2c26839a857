"""Run solver comparisons, parameter sweeps and verification suites."""
from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import List, Optional

import numpy as np

from .. import anderson, linear, solver
from ..core import SolverConfig, fixed_point_solve
from ..fdcheck import gradient_error
from ..problems import (LennardJonesSpec, fcc_initial, lj_energy_and_gradient,
                        logreg_loss_and_gradient, synthetic_madelon)
from .config import ConfigError, ExperimentConfig, sub_seed
from .problems import build_problem
from .tracefile import emit_trace

SUITES = ("linear_equivalence", "symmetric_band", "spd_bound", "gradient_checks")


@dataclass
class SolverRun:
    index: int
    label: str
    trace: object
    iterations: object  # int, or "F" when the tolerance was never reached
    extra: dict
    path: Optional[Path] = None  # CSV written for this run, if any


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    runs: List[SolverRun]

    def summary_table(self):
        rows = [("solver", "iterations", "status", "final_rel_residual", "restarts")]
        for run in self.runs:
            r = run.trace.residual_norms
            rel = r[-1] / r[0] if r[0] > 0 else 0.0
            rows.append((run.label, str(run.iterations), run.trace.status,
                         f"{rel:.3e}", str(len(run.trace.restarts))))
            for key, value in run.extra.items():
                rows[-1] += (f"{key}={value:.4g}",)
        widths = [max(len(r[i]) for r in rows if i < len(r))
                  for i in range(max(map(len, rows)))]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
                         for r in rows) + "\n"


def solver_config(entry, problem, tol, max_iters):
    beta = problem.default_beta if entry.beta is None else entry.beta
    return SolverConfig(window_m=entry.m, beta=beta, eta=entry.eta,
                        error_c=entry.C, fixed_restart_d=entry.d, tol=tol,
                        max_iters=max_iters)


def run_solver(entry, instance, tol, max_iters):
    cfg = solver_config(entry, instance.problem, tol, max_iters)
    if entry.method == "aatgs":
        return solver.solve(instance.problem, cfg, instance.x0)
    if entry.method == "aa":
        return anderson.solve(instance.problem, cfg, instance.x0)
    return fixed_point_solve(instance.problem, cfg, instance.x0)


def _file_stem(index, label):
    return f"{index:02d}_" + re.sub(r"[^A-Za-z0-9]+", "_", label).strip("_")


def _check_output(path):
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise ConfigError(f"output path not writable: {exc}") from None
    return out


def run_experiment(config: ExperimentConfig, workers=None):
    """One trace per solver entry, in entry order.

    Runs execute in a thread pool when ``workers`` (or ``config.workers``)
    exceeds one; results are still ordered by solver index.  When
    ``config.output`` is set, each trace is written as
    ``NN_<label>.csv``/``.json`` plus a ``summary.txt`` table.
    """
    out = _check_output(config.output) if config.output else None
    instance = build_problem(config.problem, config.seed)

    def one(i):
        entry = config.solvers[i]
        trace = run_solver(entry, instance, config.tol, config.max_iters)
        its = trace.iterations_to(config.tol)
        extra = {}
        if instance.distance is not None and trace.final_x is not None:
            extra["final_distance"] = instance.distance(trace.final_x)
        return SolverRun(i, entry.label, trace, "F" if its is None else its, extra)

    workers = config.workers if workers is None else workers
    idx = range(len(config.solvers))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            runs = list(pool.map(one, idx))
    else:
        runs = [one(i) for i in idx]
    result = ExperimentResult(config, runs)
    if out is not None:
        echo = config.to_json()
        for run in runs:
            run_echo = dict(echo, solver=config.solvers[run.index].to_json())
            run.path = out / (_file_stem(run.index, run.label) + ".csv")
            emit_trace(run.trace, run.path, config.tol, run_echo, config.timing,
                       run.extra)
        (out / "summary.txt").write_text(result.summary_table())
    return result


def _set_param(config, key, value):
    """Route a sweep parameter to the solver entries or the problem."""
    if key in ("eta", "m", "d", "beta", "C"):
        return config.with_overrides(**{key: value})
    if key in ("tol", "max_iters"):
        return replace(config, **{key: value})
    return replace(config, problem=dict(config.problem, **{key: value}))


def _fmt_axis(v):
    if isinstance(v, float):
        return "inf" if v == math.inf else f"{v:g}"
    return str(v)


def run_sweep(config, row_key, row_values, col_key, col_values):
    """Iterations-to-tol of the first solver over a ``row x col`` grid.

    Returns ``(grid, text)`` where ``grid[i][k]`` is an int or ``"F"``.
    """
    base = replace(config, solvers=config.solvers[:1], output=None)
    grid = []
    for rv in row_values:
        row = []
        for cv in col_values:
            cfg = _set_param(_set_param(base, row_key, rv), col_key, cv)
            row.append(run_experiment(cfg, workers=1).runs[0].iterations)
        grid.append(row)
    header = [f"{row_key}\\{col_key}"] + [_fmt_axis(c) for c in col_values]
    lines = [header] + [[_fmt_axis(rv)] + [str(c) for c in row]
                        for rv, row in zip(row_values, grid)]
    widths = [max(len(l[i]) for l in lines) for i in range(len(header))]
    text = "\n".join("  ".join(c.rjust(w) for c, w in zip(l, widths))
                     for l in lines) + "\n"
    return grid, text


def run_verification(suite, seed=0):
    """Run one invariant suite (or ``"all"``); returns a list of Reports."""
    if suite == "all":
        return [r for s in SUITES for r in run_verification(s, seed)]
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; expected one of {SUITES} or 'all'")
    rng = np.random.default_rng(sub_seed(seed, "rhs"))
    op_seed = sub_seed(seed, "problem")
    if suite == "linear_equivalence":
        n = 50
        A = linear.make_test_operator("nonsymmetric_random", n, op_seed)
        return [linear.check_gmres_equivalence(A, rng.standard_normal(n),
                                               np.zeros(n), 20, beta=0.1)]
    if suite in ("symmetric_band", "spd_bound"):
        n = 100
        A = linear.make_test_operator("spd_spectrum", n, op_seed)
        b = rng.standard_normal(n)
        if suite == "symmetric_band":
            return [linear.check_symmetric_band(A, b, np.zeros(n), 30, 2 / 101)]
        return [linear.check_spd_bound(A, b, np.zeros(n), 15, 2 / 101)]
    return [gradient_report(seed)]


def gradient_report(seed=0, points=10, tol=1e-6):
    """Finite-difference checks of the LJ and logistic gradients."""
    report = linear.Report("gradient_checks")
    lj = LennardJonesSpec(seed=sub_seed(seed, "problem"))
    x_lat = fcc_initial(lj)
    lg = synthetic_madelon(200, 50, seed=sub_seed(seed, "problem"))
    rng = np.random.default_rng(sub_seed(seed, "points"))
    worst = {"lennard_jones": 0.0, "logistic": 0.0}
    for k in range(points):
        x = x_lat + 0.02 * rng.standard_normal(x_lat.shape)
        e_lj = gradient_error(lambda v: lj_energy_and_gradient(lj, v), x)
        th = rng.standard_normal(lg.dim)
        e_lg = gradient_error(lambda v: logreg_loss_and_gradient(lg, v), th)
        worst["lennard_jones"] = max(worst["lennard_jones"], e_lj)
        worst["logistic"] = max(worst["logistic"], e_lg)
        report.rows.append({"point": k, "lennard_jones": e_lj, "logistic": e_lg})
    for key, value in worst.items():
        report.checks[key] = bool(value <= tol)
    return report
