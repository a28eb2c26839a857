"""Benchmark residual maps."""
from .bilinear import (BilinearGameSpec, bilinear_initial, bilinear_problem,
                       bilinear_residual, make_bilinear_game)
from .bratu import BratuSpec, bratu_problem, bratu_residual
from .hequation import HEquationSpec, hequation_problem, hequation_residual
from .lennard_jones import (LennardJonesSpec, fcc_initial, lj_energy_and_gradient,
                            lj_problem)
from .logreg import (LogRegSpec, load_madelon, logreg_loss_and_gradient,
                     logreg_problem, standardize, synthetic_madelon)
