"""
Chandrasekhar's H-equation
==========================

A dense nonlinear integral equation.  ``omega = 1`` is the critical case
where the Jacobian at the solution is singular and plain iteration crawls.
"""
import numpy as np

from aatgs import SolverConfig, anderson_solve, fixed_point_solve, solve
from aatgs.problems import HEquationSpec, hequation_problem

for omega in (0.5, 0.99, 1.0):
    prob = hequation_problem(HEquationSpec(n=1000, omega=omega))
    x0 = np.ones(1000)
    print(f"omega = {omega}")
    for name, fn, cfg in [
        ("fixed point", fixed_point_solve, SolverConfig(tol=1e-10, max_iters=500)),
        ("AA[5,-]", anderson_solve, SolverConfig(window_m=5, tol=1e-10, max_iters=500)),
        ("AATGS[5,-]", solve, SolverConfig(window_m=5, eta=1e3, tol=1e-10, max_iters=500)),
    ]:
        t = fn(prob, cfg, x0)
        its = t.iterations_to(1e-10)
        print(f"  {name:12s} {t.status:12s} iterations: {its if its is not None else 'F'}")
