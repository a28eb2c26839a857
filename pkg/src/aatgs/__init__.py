"""Anderson acceleration with a truncated Gram-Schmidt basis (AATGS).

Quick start::

    from aatgs import SolverConfig, solve
    from aatgs.problems import BratuSpec, bratu_problem

    prob = bratu_problem(BratuSpec(grid_interior=50))
    trace = solve(prob, SolverConfig(window_m=3, eta=1e3), np.zeros(prob.dim))
"""
from .anderson import DifferenceWindow, aa_step, least_squares
from .anderson import solve as anderson_solve
from .core import (BreakdownError, ConvergenceTrace, DomainError,
                   FixedPointProblem, IterationRecord, SolverConfig,
                   TraceRecorder, fixed_point_solve, norm2, norm_inf,
                   relative_residual)
from .solver import MonitorState, StepInfo, monitor_update, solve
from .tgs import Combination, PairedBasis

__all__ = [
    "BreakdownError", "Combination", "ConvergenceTrace", "DifferenceWindow",
    "DomainError", "FixedPointProblem", "IterationRecord", "MonitorState",
    "PairedBasis", "SolverConfig", "StepInfo", "TraceRecorder", "aa_step",
    "anderson_solve", "fixed_point_solve", "least_squares", "monitor_update",
    "norm2", "norm_inf", "relative_residual", "solve",
]
