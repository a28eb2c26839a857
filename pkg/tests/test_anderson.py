import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aatgs import (DifferenceWindow, FixedPointProblem, SolverConfig, aa_step,
                   anderson_solve, least_squares, solve)
from aatgs.linear import linear_problem, make_test_operator
from aatgs.problems import HEquationSpec, hequation_problem


def test_empty_window_is_fixed_point_step():
    x, f = np.array([1.0, -1]), np.array([0.2, 0.4])
    assert np.array_equal(aa_step(DifferenceWindow(3), x, f, 0.5), x + 0.5 * f)


def test_one_dimensional_example():
    w = DifferenceWindow()
    w.push(np.array([1.0]), np.array([-2.0]))
    X, F = w.matrices()
    assert least_squares(F, np.array([-1.0]))[0] == pytest.approx(0.5, abs=1e-15)
    assert aa_step(w, np.array([1.0]), np.array([-1.0]), 1.0)[0] == pytest.approx(0.5, abs=1e-15)


def test_window_capacity():
    w = DifferenceWindow(2)
    for k in range(4):
        w.push(np.full(3, k), np.full(3, -k))
        assert len(w.x_diffs) == len(w.f_diffs) == min(k + 1, 2)
    X, _ = w.matrices()
    assert np.array_equal(X[0], [2, 3])


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(3, 40), k=st.integers(1, 8))
def test_least_squares_optimality(seed, n, k):
    rng = np.random.default_rng(seed)
    k = min(k, n)
    F = rng.standard_normal((n, k)) * np.exp(rng.uniform(-3, 3, k))
    f = rng.standard_normal(n)
    theta = least_squares(F, f)
    assert np.all(np.abs(F.T @ (f - F @ theta)) <= 1e-8 * np.linalg.norm(f) * np.linalg.norm(F, axis=0))
    ref = np.linalg.lstsq(F, f, rcond=None)[0]
    floor = 1e-13 * np.linalg.norm(f)
    assert np.linalg.norm(f - F @ theta) <= np.linalg.norm(f - F @ ref) * (1 + 1e-10) + floor


def test_least_squares_rank_deficient():
    rng = np.random.default_rng(0)
    a = rng.standard_normal(10)
    F = np.column_stack([a, 2 * a, rng.standard_normal(10)])
    f = rng.standard_normal(10)
    theta = least_squares(F, f)
    assert np.all(np.isfinite(theta))
    ref = np.linalg.lstsq(F, f, rcond=None)[0]
    assert np.linalg.norm(f - F @ theta) == pytest.approx(np.linalg.norm(f - F @ ref), rel=1e-12)
    assert np.count_nonzero(theta) == 2
    assert np.array_equal(least_squares(np.zeros((4, 2)), np.ones(4)), np.zeros(2))


def _nonsym(seed, n=30, beta=0.1):
    A = make_test_operator("nonsymmetric_random", n, seed)
    b = np.random.default_rng(seed + 1).standard_normal(n)
    return linear_problem(A, b, beta)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_full_depth_equivalence_on_linear_problems(seed):
    prob = _nonsym(seed)
    cfg = SolverConfig(beta=0.1, tol=1e-300, max_iters=12)
    ta = solve(prob, cfg, np.zeros(30), keep_iterates=True)
    tb = anderson_solve(prob, cfg, np.zeros(30), keep_iterates=True)
    for xa, xb in zip(ta.iterates, tb.iterates):
        assert np.linalg.norm(xa - xb) <= 1e-8 * np.linalg.norm(xb)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**31), m=st.integers(1, 5))
def test_short_runs_agree_within_window(seed, m):
    prob = _nonsym(seed)
    # iterates x_0 .. x_{m+1} only use j <= m stored differences
    cfg = SolverConfig(window_m=m, beta=0.1, tol=1e-300, max_iters=m + 1)
    ta = solve(prob, cfg, np.zeros(30), keep_iterates=True)
    tb = anderson_solve(prob, cfg, np.zeros(30), keep_iterates=True)
    for xa, xb in zip(ta.iterates, tb.iterates):
        assert np.linalg.norm(xa - xb) <= 1e-8 * np.linalg.norm(xb)


def test_symmetric_full_depth_residuals_match():
    A = make_test_operator("spd_spectrum", 50, 3)
    b = np.random.default_rng(4).standard_normal(50)
    beta = 2 / 101
    cfg = SolverConfig(beta=beta, tol=1e-300, max_iters=25)
    ra = solve(linear_problem(A, b, beta), cfg, np.zeros(50)).residual_norms
    rb = anderson_solve(linear_problem(A, b, beta), cfg, np.zeros(50)).residual_norms
    assert len(ra) == len(rb) == 26
    assert np.all(np.abs(ra - rb) <= 1e-8 * rb)


def test_hequation_window_five_trajectories_overlap():
    prob = hequation_problem(HEquationSpec(1000, 0.5))
    ta = solve(prob, SolverConfig(window_m=5, eta=1e3, tol=1e-10), np.ones(1000))
    tb = anderson_solve(prob, SolverConfig(window_m=5, tol=1e-10), np.ones(1000))
    ra, rb = ta.residual_norms, tb.residual_norms
    r0 = ra[0]
    # identical while the residual is well above rounding level
    k = 0
    while k < min(len(ra), len(rb)) and min(ra[k], rb[k]) >= 1e-5 * r0:
        k += 1
    assert k >= 6
    assert np.all(np.abs(ra[:k] - rb[:k]) <= 1e-6 * r0)
    assert ta.converged and tb.converged
    assert len(ra) <= 2 * len(rb)


def test_fixed_restart_clears_window():
    prob = _nonsym(5)
    trace = anderson_solve(prob, SolverConfig(window_m=10, beta=0.1, fixed_restart_d=4,
                                              max_iters=20), np.zeros(30))
    assert trace.restarts == [5, 9, 13, 17]
    assert all(r.monitor_w is None for r in trace.records)
