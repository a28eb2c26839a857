"""Experiment harness: configs, runs, sweeps, verification and trace files."""
from .config import ConfigError, ExperimentConfig, SolverEntry, sub_seed
from .problems import ProblemInstance, build_problem
from .runner import (SUITES, ExperimentResult, SolverRun, gradient_report,
                     run_experiment, run_sweep, run_verification)
from .tracefile import CSV_HEADER, emit_trace, read_trace_csv, trace_summary
