"""AATGS(m): Anderson acceleration on a truncated Gram-Schmidt basis.

The basis update lives in :mod:`aatgs.tgs`.  This module drives the
iteration and watches a cheap scalar recurrence ``w_j`` that bounds the
growth of rounding errors in the non-orthogonal ``U`` basis; once ``w_j``
exceeds ``eta`` the basis is discarded and rebuilt from the last two
iterates.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import (BreakdownError, SolverConfig, TraceRecorder, evaluate,
                   norm2, norm_inf)
from .tgs import PairedBasis


class MonitorState:
    """Monitor values ``w_i``, index-aligned with the stored basis columns."""

    def __init__(self, constant_c=1.0):
        self.constant_c = float(constant_c)
        self.w_values = deque()

    def __len__(self):
        return len(self.w_values)

    def clear(self):
        self.w_values.clear()

    def update(self, s_column, s_jj, delta_x_inf_norm):
        return monitor_update(self, s_column, s_jj, delta_x_inf_norm)


def monitor_update(state, s_column, s_jj, delta_x_inf_norm):
    """Compute ``w_j = C ||dx||_inf / s_jj + sum_i |s_ij| / s_jj * w_i``.

    ``s_column`` holds the off-diagonal coefficients against the retained
    columns, oldest first.  Entries of ``state.w_values`` older than the
    retained window are dropped first so both stay aligned.  The new value is
    appended to the state and returned.
    """
    s_column = np.abs(np.asarray(s_column, dtype=float))
    if not s_jj > 0:
        raise ValueError("s_jj must be positive")
    while len(state.w_values) > len(s_column):
        state.w_values.popleft()
    if len(state.w_values) != len(s_column):
        raise ValueError(
            f"{len(s_column)} coefficients for {len(state.w_values)} monitor values")
    with np.errstate(over="ignore"):
        w = state.constant_c * delta_x_inf_norm / s_jj
        if len(s_column):
            w += s_column @ np.fromiter(state.w_values, float) / s_jj
    w = float(w)
    state.w_values.append(w)
    return w


@dataclass
class StepInfo:
    """Snapshot handed to a ``solve`` callback at the end of step ``j``.

    ``basis`` is the live object; copy what you need, it is cleared right
    after the callback whenever ``restarted`` is set.
    """

    j: int
    x: np.ndarray
    f: np.ndarray
    theta: np.ndarray
    x_bar: np.ndarray
    f_bar: np.ndarray
    x_next: np.ndarray
    f_next: np.ndarray
    s_column: np.ndarray
    w: float
    restarted: bool
    forced_restart: bool
    basis: PairedBasis


def solve(problem, config: SolverConfig, x0, x1=None,
          callback: Optional[Callable[[StepInfo], None]] = None,
          keep_iterates=False):
    """Run AATGS(m) with auto-restart on ``problem``.

    Parameters
    ----------
    problem : FixedPointProblem
    config : SolverConfig
        ``window_m``, ``beta``, ``eta``, ``error_c``, ``fixed_restart_d``,
        ``tol``, ``max_iters`` and ``breakdown_eps`` are all honoured.
    x0 : array_like
        Starting point.
    x1 : array_like, optional
        Second iterate.  Defaults to the fixed-point step
        ``x0 + beta f(x0)``; passing it resumes a run from two retained
        iterates exactly as a restart does.
    callback : callable, optional
        Called with a :class:`StepInfo` after every accelerated step.
    keep_iterates : bool
        Store every iterate on the returned trace.

    Returns
    -------
    ConvergenceTrace
        ``status`` is one of ``converged``, ``max_iters``, ``breakdown``,
        ``diverged`` or ``domain_error``.
    """
    beta = config.beta
    rec = TraceRecorder(config.tol, config.max_iters, keep_iterates)
    x_prev = np.array(x0, dtype=float)
    f_prev = evaluate(problem, x_prev, rec)
    if f_prev is None or rec.add(x_prev, f_prev):
        return rec.trace
    x = x_prev + beta * f_prev if x1 is None else np.array(x1, dtype=float)
    f = evaluate(problem, x, rec)
    if f is None or rec.add(x, f):
        return rec.trace

    basis = PairedBasis(problem.dim, config.window_m)
    monitor = MonitorState(config.error_c)
    since_restart = 0
    while True:
        j = rec.iteration
        dx = x - x_prev
        df = f - f_prev
        forced = False
        f_norm = norm2(f)
        try:
            s = basis.append_pair(df, dx, config.breakdown_eps, f_norm)
        except BreakdownError as exc:
            if basis.count == 0:
                rec.finish("breakdown", f"step {j}: {exc}")
                break
            basis.clear()
            monitor.clear()
            since_restart = 0
            forced = True
            try:
                s = basis.append_pair(df, dx, config.breakdown_eps, f_norm)
            except BreakdownError as exc2:
                rec.finish("breakdown", f"step {j} after forced restart: {exc2}")
                break

        theta = basis.project(f)
        x_next, x_bar, f_bar = basis.combine(x, f, theta, beta)
        f_next = evaluate(problem, x_next, rec)
        if f_next is None:
            break
        w = monitor.update(s[:-1], s[-1], norm_inf(dx))
        since_restart += 1
        restart = w > config.eta or (
            config.fixed_restart_d is not None
            and since_restart >= config.fixed_restart_d)
        if callback is not None:
            callback(StepInfo(j, x, f, theta, x_bar, f_bar, x_next, f_next,
                              s, w, restart, forced, basis))
        if restart:
            basis.clear()
            monitor.clear()
            since_restart = 0
        x_prev, f_prev, x, f = x, f, x_next, f_next
        if rec.add(x, f, monitor_w=w, restarted=restart or forced):
            break
    return rec.trace
