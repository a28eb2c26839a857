"""
Watching the restart monitor
============================

With a convective term the Bratu Jacobian is no longer symmetric, the
truncated basis stops being orthogonal, and rounding errors in ``U`` can
grow.  AATGS tracks a cheap bound ``w_j`` on that growth and restarts when
it passes ``eta``.  Here we log ``w_j`` along a run and see how the choice
of ``eta`` changes the iteration count.
"""
import math

import numpy as np

from aatgs import SolverConfig, solve
from aatgs.problems import BratuSpec, bratu_problem

prob = bratu_problem(BratuSpec(grid_interior=50, alpha=20.0))
x0 = np.zeros(prob.dim)

# %%
# The callback sees every step, including the monitor value and whether a
# restart fired.
log = []
trace = solve(prob, SolverConfig(window_m=5, eta=1e3, tol=1e-8, max_iters=2000), x0,
              callback=lambda info: log.append((info.j, info.w, info.restarted)))
print("converged:", trace.converged, "iterations:", trace.iterations_to(1e-8))
print("restarts at iterations:", trace.restarts)
print("first steps (j, w_j, restart):")
for j, w, r in log[:12]:
    print(f"  {j:3d}  {w:10.3e}  {'*' if r else ''}")

# %%
# A range of thresholds.  eta = inf turns the monitor off.
for eta in (1e1, 1e2, 1e3, 1e4, 1e6, math.inf):
    t = solve(prob, SolverConfig(window_m=5, eta=eta, tol=1e-8, max_iters=2000), x0)
    its = t.iterations_to(1e-8)
    print(f"eta={eta:<8g} iterations={its if its is not None else 'F':>5}  "
          f"restarts={len(t.restarts)}")
