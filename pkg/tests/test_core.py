import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from aatgs import (ConvergenceTrace, FixedPointProblem, IterationRecord,
                   SolverConfig, fixed_point_solve, norm2, norm_inf,
                   relative_residual)
from aatgs.harness import build_problem


def affine(b, a=1.0):
    b = np.asarray(b, dtype=float)
    return FixedPointProblem(b.size, lambda x: b - a * x)


def test_relative_residual_examples():
    assert relative_residual(affine([1.0]), np.array([1.0]), 1.0) == 0.0
    prob = affine([3.0, 4.0])
    assert relative_residual(prob, np.zeros(2), 5.0) == 1.0
    assert relative_residual(prob, np.array([3.0, 0.0]), 5.0) == pytest.approx(0.8, abs=1e-15)


def test_relative_residual_errors():
    prob = affine([3.0, 4.0])
    with pytest.raises(ValueError):
        relative_residual(prob, np.zeros(3), 1.0)
    with pytest.raises(ValueError):
        relative_residual(prob, np.zeros(2), 0.0)


def test_problem_rejects_wrong_output_shape():
    prob = FixedPointProblem(3, lambda x: x[:2])
    with pytest.raises(ValueError):
        prob(np.zeros(3))


@pytest.mark.parametrize("kwargs", [
    dict(window_m=0), dict(beta=0.0), dict(eta=-1.0), dict(error_c=0.0),
    dict(fixed_restart_d=0), dict(tol=1.0), dict(tol=0.0), dict(max_iters=0),
    dict(breakdown_eps=0.5),
])
def test_solver_config_validation(kwargs):
    with pytest.raises(ValueError):
        SolverConfig(**kwargs)


def test_solver_config_capacity():
    assert SolverConfig().capacity == math.inf
    assert SolverConfig(window_m=4).capacity == 4


@settings(max_examples=200, deadline=None)
@given(arrays(float, st.integers(1, 64),
              elements=st.floats(-1e6, 1e6, allow_nan=False)))
def test_norm_inequalities(v):
    n = v.size
    inf, two = norm_inf(v), norm2(v)
    assert inf <= two * (1 + 1e-12)
    assert two <= math.sqrt(n) * inf * (1 + 1e-12)


SUITE = [
    {"kind": "bratu", "grid": 6, "alpha": 20.0},
    {"kind": "hequation", "n": 20, "omega": 0.9},
    {"kind": "lennard_jones", "cells": 1},
    {"kind": "logreg", "n_samples": 40, "n_features": 6},
    {"kind": "bilinear", "n": 5},
    {"kind": "linear", "operator": "nonsymmetric_random", "n": 8},
    {"kind": "affine", "dim": 3},
]


@pytest.mark.parametrize("params", SUITE, ids=lambda p: p["kind"])
@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_residuals_are_pure(params, seed):
    inst = build_problem(params, 0)
    rng = np.random.default_rng(seed)
    x = inst.x0 + 0.01 * rng.standard_normal(inst.problem.dim)
    f1 = inst.problem(x)
    f2 = inst.problem(x.copy())
    assert f1.shape == (inst.problem.dim,)
    assert f1.tobytes() == f2.tobytes()


def test_fixed_point_halves_residual():
    prob = affine([1.0])
    trace = fixed_point_solve(prob, SolverConfig(beta=0.5, tol=1e-6), np.zeros(1))
    r = trace.residual_norms
    assert np.allclose(r[1:] / r[:-1], 0.5, rtol=0, atol=1e-14)
    assert trace.converged and trace.status == "converged"
    assert [rec.iter for rec in trace.records] == list(range(len(r)))


def test_max_iters_status():
    trace = fixed_point_solve(affine([1.0]), SolverConfig(beta=0.01, max_iters=5),
                              np.zeros(1))
    assert trace.status == "max_iters" and not trace.converged
    assert len(trace.records) == 6


def test_diverged_status():
    trace = fixed_point_solve(affine([1.0], a=-1.0), SolverConfig(beta=1.0, max_iters=5000),
                              np.zeros(1))
    assert trace.status == "diverged"


def test_iterations_to_uses_first_hit():
    recs = [IterationRecord(0, 1.0), IterationRecord(1, 1e-3), IterationRecord(2, 1e-9),
            IterationRecord(3, 1e-10)]
    trace = ConvergenceTrace(recs)
    assert trace.iterations_to(1e-8) == 2
    assert trace.iterations_to(1e-12) is None
