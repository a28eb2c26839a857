"""Classical Anderson acceleration AA(m), the comparison baseline."""
from __future__ import annotations

from collections import deque

import numpy as np
import scipy.linalg

from .core import SolverConfig, TraceRecorder, evaluate

RANK_TOL = 1e-12


class DifferenceWindow:
    """Most recent ``capacity`` columns of ``dX`` and ``dF``."""

    def __init__(self, capacity=None):
        self.capacity = capacity
        self.x_diffs = deque()
        self.f_diffs = deque()

    def __len__(self):
        return len(self.x_diffs)

    def push(self, delta_x, delta_f):
        self.x_diffs.append(np.array(delta_x, dtype=float))
        self.f_diffs.append(np.array(delta_f, dtype=float))
        if self.capacity is not None and len(self.x_diffs) > self.capacity:
            self.x_diffs.popleft()
            self.f_diffs.popleft()

    def clear(self):
        self.x_diffs.clear()
        self.f_diffs.clear()

    def matrices(self):
        return np.column_stack(self.x_diffs), np.column_stack(self.f_diffs)


def least_squares(F, f, rank_tol=RANK_TOL):
    """Minimize ``||f - F theta||_2`` by column-pivoted QR.

    Directions whose ``|R_kk|`` falls below ``rank_tol * |R_00|`` are
    dropped (their coefficients are zero).
    """
    F = np.asarray(F, dtype=float)
    k = F.shape[1]
    if k == 0:
        return np.zeros(0)
    Qf, R, piv = scipy.linalg.qr(F, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag[0] == 0:
        return np.zeros(k)
    r = int(np.sum(diag > rank_tol * diag[0]))
    y = scipy.linalg.solve_triangular(R[:r, :r], Qf[:, :r].T @ f)
    theta = np.zeros(k)
    theta[piv[:r]] = y
    return theta


def aa_step(window, x, f, beta):
    """Next AA iterate ``x + beta f - (dX + beta dF) theta``."""
    x = np.asarray(x, dtype=float)
    f = np.asarray(f, dtype=float)
    if len(window) == 0:
        return x + beta * f
    X, F = window.matrices()
    theta = least_squares(F, f)
    return x + beta * f - (X + beta * F) @ theta


def solve(problem, config: SolverConfig, x0, keep_iterates=False):
    """AA(m) with optional fixed restart every ``config.fixed_restart_d`` steps.

    A restart empties the window after ``x_{j+1}`` is formed; the next step
    refills it from the two latest iterates.  ``eta`` and ``error_c`` are
    ignored.
    """
    beta = config.beta
    rec = TraceRecorder(config.tol, config.max_iters, keep_iterates)
    x_prev = np.array(x0, dtype=float)
    f_prev = evaluate(problem, x_prev, rec)
    if f_prev is None or rec.add(x_prev, f_prev):
        return rec.trace
    x = x_prev + beta * f_prev
    f = evaluate(problem, x, rec)
    if f is None or rec.add(x, f):
        return rec.trace

    window = DifferenceWindow(config.window_m)
    since_restart = 0
    while True:
        window.push(x - x_prev, f - f_prev)
        x_next = aa_step(window, x, f, beta)
        f_next = evaluate(problem, x_next, rec)
        if f_next is None:
            break
        since_restart += 1
        restart = (config.fixed_restart_d is not None
                   and since_restart >= config.fixed_restart_d)
        if restart:
            window.clear()
            since_restart = 0
        x_prev, f_prev, x, f = x, f, x_next, f_next
        if rec.add(x, f, restarted=restart):
            break
    return rec.trace
