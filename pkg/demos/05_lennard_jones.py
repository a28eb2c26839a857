"""
Relaxing a Lennard-Jones cluster
================================

108 atoms start on a slightly perturbed FCC lattice.  The residual is the
negative gradient of the pair energy, so ``x + beta f(x)`` is gradient
descent and acceleration turns it into something much faster.
"""
import numpy as np

from aatgs import SolverConfig, anderson_solve, fixed_point_solve, solve
from aatgs.problems import LennardJonesSpec, fcc_initial, lj_energy_and_gradient, lj_problem

spec = LennardJonesSpec(cells_per_side=3, seed=0)
prob = lj_problem(spec)
x0 = fcc_initial(spec)
e0, g0 = lj_energy_and_gradient(spec, x0)
print(f"{spec.n_atoms} atoms, E0 = {e0:.4f}, |grad| = {np.linalg.norm(g0):.3e}")

cfg = dict(beta=1.5e-4, tol=1e-6, max_iters=3000)
for name, fn, extra in [("gradient descent", fixed_point_solve, {}),
                        ("AA[20,-]", anderson_solve, dict(window_m=20)),
                        ("AATGS[3,-]", solve, dict(window_m=3, eta=1e3)),
                        ("AATGS[20,-]", solve, dict(window_m=20, eta=1e3))]:
    t = fn(prob, SolverConfig(**cfg, **extra), x0)
    e, _ = lj_energy_and_gradient(spec, t.final_x)
    its = t.iterations_to(1e-6)
    print(f"{name:17s} iterations: {its if its is not None else 'F':>5}  final E = {e:.6f}")
