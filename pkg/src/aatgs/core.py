"""Shared types for the fixed-point solvers.

Every solver in the package consumes a :class:`FixedPointProblem`, i.e. a
residual map ``f`` whose root we are after, and iterates on
``g(x) = x + beta * f(x)``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np
import scipy.linalg


class BreakdownError(RuntimeError):
    """Raised when a new basis direction cannot be normalized."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class DomainError(ValueError):
    """A residual was requested at a point outside its domain."""


@dataclass(frozen=True)
class FixedPointProblem:
    """Residual map ``f: R^n -> R^n`` plus the defaults used to iterate it.

    The solver forms ``g(x) = x + beta f(x)`` itself, so only ``f`` is stored.
    """

    dim: int
    residual: Callable[[np.ndarray], np.ndarray]
    default_beta: float = 1.0
    name: str = "problem"

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(
                f"{self.name}: expected a point of shape ({self.dim},), got {x.shape}")
        fx = np.asarray(self.residual(x), dtype=float)
        if fx.shape != (self.dim,):
            raise ValueError(
                f"{self.name}: residual returned shape {fx.shape}, expected ({self.dim},)")
        return fx


@dataclass(frozen=True)
class SolverConfig:
    """Parameters shared by AATGS and classical AA.

    ``window_m=None`` means unbounded depth, ``eta=math.inf`` disables the
    rounding-error monitor and ``fixed_restart_d=None`` disables periodic
    restarts.
    """

    window_m: Optional[int] = None
    beta: float = 1.0
    eta: float = math.inf
    error_c: float = 1.0
    fixed_restart_d: Optional[int] = None
    tol: float = 1e-8
    max_iters: int = 1000
    breakdown_eps: float = 1e-14

    def __post_init__(self):
        if self.window_m is not None and self.window_m < 1:
            raise ValueError("window_m must be >= 1 or None")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if not self.eta > 0:
            raise ValueError("eta must be positive")
        if not self.error_c > 0:
            raise ValueError("error_c must be positive")
        if self.fixed_restart_d is not None and self.fixed_restart_d < 1:
            raise ValueError("fixed_restart_d must be >= 1 or None")
        if not 0 < self.tol < 1:
            raise ValueError("tol must lie in (0, 1)")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not 0 < self.breakdown_eps < 1e-3:
            raise ValueError("breakdown_eps must be small and positive")

    @property
    def capacity(self):
        return math.inf if self.window_m is None else self.window_m


@dataclass
class IterationRecord:
    """One row of a convergence trace.

    Record ``j`` describes the iterate ``x_j``.  ``monitor_w`` holds the
    monitor value computed in the step that produced ``x_j`` and
    ``restarted`` says whether that step ended with a restart.
    """

    iter: int
    residual_norm: float
    monitor_w: Optional[float] = None
    restarted: bool = False
    elapsed: float = 0.0


@dataclass
class ConvergenceTrace:
    records: List[IterationRecord] = field(default_factory=list)
    converged: bool = False
    final_x: Optional[np.ndarray] = None
    status: str = "running"
    message: str = ""
    iterates: Optional[List[np.ndarray]] = None

    @property
    def residual_norms(self):
        return np.array([r.residual_norm for r in self.records])

    @property
    def restarts(self):
        return [r.iter for r in self.records if r.restarted]

    def iterations_to(self, tol):
        """First record index whose relative residual is <= tol, else None."""
        if not self.records:
            return None
        r0 = self.records[0].residual_norm
        if r0 == 0:
            return 0
        for rec in self.records:
            if rec.residual_norm / r0 <= tol:
                return rec.iter
        return None


def norm2(v):
    # BLAS nrm2 rescales internally, so tiny or huge entries do not under/overflow
    return float(scipy.linalg.norm(np.asarray(v, dtype=float), check_finite=False))


def norm_inf(v):
    v = np.asarray(v)
    return float(np.max(np.abs(v))) if v.size else 0.0


def relative_residual(problem, x, r0_norm):
    """Return ``||f(x)||_2 / r0_norm``."""
    if not r0_norm > 0:
        raise ValueError("r0_norm must be positive")
    return norm2(problem(x)) / r0_norm


class TraceRecorder:
    """Builds a :class:`ConvergenceTrace` and applies the stopping rule.

    The rule is ``||f(x_j)|| / ||f(x_0)|| <= tol`` or ``j == max_iters``.
    """

    def __init__(self, tol, max_iters, keep_iterates=False):
        self.tol = tol
        self.max_iters = max_iters
        self.trace = ConvergenceTrace(iterates=[] if keep_iterates else None)
        self._t0 = time.perf_counter()
        self._r0 = None

    def add(self, x, f, monitor_w=None, restarted=False):
        """Append a record for ``x``; return True when iteration should stop."""
        j = len(self.trace.records)
        rnorm = norm2(f)
        self.trace.records.append(IterationRecord(
            j, rnorm, monitor_w, restarted, time.perf_counter() - self._t0))
        self.trace.final_x = x
        if self.trace.iterates is not None:
            self.trace.iterates.append(np.array(x, copy=True))
        if self._r0 is None:
            self._r0 = rnorm
        if not math.isfinite(rnorm):
            return self.finish("diverged", f"non-finite residual at iteration {j}")
        if rnorm <= self.tol * self._r0:
            self.trace.converged = True
            return self.finish("converged")
        if j >= self.max_iters:
            return self.finish("max_iters")
        return False

    @property
    def iteration(self):
        return len(self.trace.records) - 1

    def finish(self, status, message=""):
        self.trace.status = status
        self.trace.message = message
        return True


def evaluate(problem, x, recorder):
    """Evaluate ``f(x)``, turning domain errors into a terminated trace.

    Returns None when the point left the residual's domain.
    """
    try:
        return problem(x)
    except DomainError as exc:
        recorder.finish("domain_error", str(exc))
        return None


def fixed_point_solve(problem, config, x0, keep_iterates=False):
    """Plain iteration ``x_{j+1} = x_j + beta f(x_j)``."""
    rec = TraceRecorder(config.tol, config.max_iters, keep_iterates)
    x = np.array(x0, dtype=float)
    f = evaluate(problem, x, rec)
    if f is None:
        return rec.trace
    while not rec.add(x, f):
        with np.errstate(over="ignore", invalid="ignore"):
            x = x + config.beta * f
        f = evaluate(problem, x, rec)
        if f is None:
            break
    return rec.trace
