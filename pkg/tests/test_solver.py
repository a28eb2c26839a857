import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aatgs import (FixedPointProblem, MonitorState, SolverConfig, anderson_solve,
                   monitor_update, norm_inf, solve)
from aatgs.linear import LinearOperator, linear_problem, make_test_operator
from aatgs.problems import BratuSpec, HEquationSpec, bratu_problem, hequation_problem


def line_problem():
    return FixedPointProblem(1, lambda x: 1.0 - 2.0 * x)


def test_one_dimensional_root_in_two_steps():
    trace = solve(line_problem(), SolverConfig(beta=1.0), np.zeros(1),
                  keep_iterates=True)
    assert trace.iterates[1][0] == 1.0
    assert trace.iterates[2][0] == 0.5
    assert trace.converged and trace.records[-1].iter == 2


def test_monitor_examples():
    st_ = MonitorState(1.0)
    assert monitor_update(st_, [], 0.25, 0.5) == 2.0
    st_ = MonitorState(1.0)
    st_.w_values.extend([1.0, 2.0])
    assert monitor_update(st_, [0.5, -0.25], 0.5, 1.0) == 4.0
    assert list(st_.w_values) == [1.0, 2.0, 4.0]


def test_monitor_drops_evicted_values():
    st_ = MonitorState(2.0)
    st_.w_values.extend([100.0, 1.0, 3.0])
    # window slid: only the two newest columns are still referenced
    w = monitor_update(st_, [1.0, 1.0], 1.0, 1.0)
    assert w == 2.0 + 4.0
    assert list(st_.w_values) == [1.0, 3.0, 6.0]


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), c=st.floats(0.1, 10.0),
       eta=st.floats(1.0, 1e3), m=st.sampled_from([2, 3, 5, None]),
       d=st.sampled_from([3, 4, 6]))
def test_monitor_resets_after_restart(seed, c, eta, m, d):
    prob = bratu_problem(BratuSpec(8, alpha=20.0))
    rng = np.random.default_rng(seed)
    cfg = SolverConfig(window_m=m, eta=eta, error_c=c, fixed_restart_d=d, tol=1e-10,
                       max_iters=60)
    steps = []

    def grab(info):
        steps.append(info)

    solve(prob, cfg, 0.1 * rng.standard_normal(prob.dim), callback=grab)
    assert any(s.restarted for s in steps[:-1])
    for prev, cur in zip(steps, steps[1:]):
        assert cur.w >= 0
        if prev.restarted:
            dx = cur.x - prev.x
            assert cur.s_column.size == 1
            assert cur.w == c * norm_inf(dx) / cur.s_column[-1]


@pytest.mark.parametrize("params", [
    dict(kind="bratu", alpha=20.0), dict(kind="hequation"), dict(kind="linear"),
])
@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.sampled_from([1, 2, 3, None]))
def test_no_restarts_without_triggers(params, seed, m):
    rng = np.random.default_rng(seed)
    if params["kind"] == "bratu":
        prob = bratu_problem(BratuSpec(10, alpha=params["alpha"]))
        x0 = 0.1 * rng.standard_normal(prob.dim)
    elif params["kind"] == "hequation":
        prob = hequation_problem(HEquationSpec(30, 0.9))
        x0 = 1 + 0.1 * rng.random(30)
    else:
        A = make_test_operator("nonsymmetric_random", 20, seed)
        prob = linear_problem(A, rng.standard_normal(20), 0.1)
        x0 = np.zeros(20)
    trace = solve(prob, SolverConfig(window_m=m, beta=prob.default_beta,
                                     eta=math.inf, max_iters=40), x0)
    assert trace.restarts == []


def _restart_case(seed):
    prob = bratu_problem(BratuSpec(10, alpha=20.0))
    x0 = 0.1 * np.random.default_rng(seed).standard_normal(prob.dim)
    return prob, x0


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), eta=st.floats(2.0, 200.0),
       d=st.sampled_from([None, 4, 7]))
def test_restart_matches_fresh_solve(seed, eta, d):
    prob, x0 = _restart_case(seed)
    cfg = SolverConfig(window_m=5, eta=eta, fixed_restart_d=d, tol=1e-12, max_iters=80)
    trace = solve(prob, cfg, x0, keep_iterates=True)
    xs = trace.iterates
    for j in trace.restarts[:3]:
        if j + 1 >= len(xs):
            continue
        # restart happened in the step that produced x_j; resume from (x_{j-1}, x_j)
        fresh = solve(prob, cfg, xs[j - 1], x1=xs[j], keep_iterates=True)
        k = min(len(fresh.iterates), len(xs) - (j - 1), 15)
        for i in range(k):
            ref = xs[j - 1 + i]
            assert np.linalg.norm(fresh.iterates[i] - ref) <= 1e-12 * np.linalg.norm(ref)


def test_window_one_restart_every_step_is_window_one():
    prob, x0 = _restart_case(1)
    for method in (solve, anderson_solve):
        a = method(prob, SolverConfig(window_m=4, fixed_restart_d=1, max_iters=30), x0,
                   keep_iterates=True)
        b = method(prob, SolverConfig(window_m=1, max_iters=30), x0, keep_iterates=True)
        assert len(a.iterates) == len(b.iterates)
        for xa, xb in zip(a.iterates, b.iterates):
            assert np.allclose(xa, xb, rtol=1e-12, atol=0)
        assert a.restarts == list(range(2, len(a.records)))


def test_fixed_restart_period():
    prob, x0 = _restart_case(2)
    trace = solve(prob, SolverConfig(window_m=10, fixed_restart_d=5, max_iters=40), x0)
    assert trace.restarts == [6, 11, 16, 21, 26, 31, 36]


def test_skew_symmetric_breakdown_is_reported():
    rng = np.random.default_rng(0)
    G = rng.standard_normal((10, 10))
    prob = linear_problem(LinearOperator.from_dense(G - G.T), rng.standard_normal(10), 1.0)
    trace = solve(prob, SolverConfig(max_iters=50), np.zeros(10), keep_iterates=True)
    assert trace.status == "breakdown"
    assert "step 2" in trace.message
    # the accelerated step reproduces x_1
    assert np.allclose(trace.iterates[2], trace.iterates[1], atol=1e-13)


def test_domain_error_ends_run():
    prob = hequation_problem(HEquationSpec(10, 1.0))
    trace = solve(prob, SolverConfig(), np.full(10, 50.0))
    assert trace.status == "domain_error" and not trace.converged


def test_aatgs3_equals_full_depth_on_spd():
    A = make_test_operator("spd_spectrum", 100, 0)
    b = np.random.default_rng(1).standard_normal(100)
    prob = linear_problem(A, b, 2 / 101)
    cfg = dict(beta=2 / 101, tol=1e-300, max_iters=30)
    t3 = solve(prob, SolverConfig(window_m=3, **cfg), np.zeros(100), keep_iterates=True)
    tf = solve(prob, SolverConfig(**cfg), np.zeros(100), keep_iterates=True)
    for a, b_ in zip(t3.iterates, tf.iterates):
        assert np.linalg.norm(a - b_) <= 1e-6 * np.linalg.norm(b_)


def test_forced_restart_on_breakdown_with_basis():
    # differences of f always point along e1, so the second one is parallel to q_1
    prob = FixedPointProblem(3, lambda x: np.array([1.0 - x[0], 1.0, 0.0]))
    forced = []
    trace = solve(prob, SolverConfig(beta=0.5, max_iters=6), np.zeros(3),
                  callback=lambda info: forced.append(info.forced_restart))
    assert forced[:2] == [False, True]
    assert trace.records[3].restarted
    # afterwards f is stuck at (0, 1, 0): delta f vanishes on an empty basis
    assert trace.status == "breakdown"
