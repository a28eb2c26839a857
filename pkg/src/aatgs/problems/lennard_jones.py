"""Lennard-Jones cluster relaxation posed as ``f(x) = -grad E(x)``."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core import DomainError, FixedPointProblem

FCC_OFFSETS = np.array([[0.0, 0.0, 0.0],
                        [0.5, 0.5, 0.0],
                        [0.5, 0.0, 0.5],
                        [0.0, 0.5, 0.5]])


@dataclass(frozen=True)
class LennardJonesSpec:
    cells_per_side: int = 3
    epsilon: float = 1.0
    delta: float = 1.0
    perturbation_scale: float = 0.05
    seed: int = 0
    lattice_constant: float = None

    @property
    def n_atoms(self):
        return 4 * self.cells_per_side ** 3

    @property
    def dim(self):
        return 3 * self.n_atoms

    @property
    def lattice(self):
        # nearest-neighbour distance a / sqrt(2) sits at the pair minimum 2^(1/6) delta
        if self.lattice_constant is not None:
            return self.lattice_constant
        return 2 ** (1 / 6) * self.delta * math.sqrt(2)


def fcc_initial(spec):
    """Flattened FCC coordinates plus a seeded Gaussian perturbation."""
    k = spec.cells_per_side
    cells = np.array([(i, j, l) for i in range(k) for j in range(k)
                      for l in range(k)], dtype=float)
    Y = (cells[:, None, :] + FCC_OFFSETS[None, :, :]).reshape(-1, 3) * spec.lattice
    if spec.perturbation_scale:
        rng = np.random.default_rng(spec.seed)
        Y = Y + spec.perturbation_scale * spec.delta * rng.standard_normal(Y.shape)
    return Y.ravel()


def lj_energy_and_gradient(spec, x):
    """Total pair energy and its gradient with respect to the flat coordinates."""
    Y = np.asarray(x, dtype=float).reshape(-1, 3)
    diff = Y[:, None, :] - Y[None, :, :]
    r2 = np.einsum("ijk,ijk->ij", diff, diff)
    np.fill_diagonal(r2, np.inf)
    if np.min(r2) == 0.0:
        i, j = np.unravel_index(np.argmin(r2), r2.shape)
        raise DomainError(f"atoms {i} and {j} coincide")
    s6 = (spec.delta ** 2 / r2) ** 3
    energy = 2.0 * spec.epsilon * float(np.sum(s6 * s6 - s6))  # each pair counted twice
    # dE/dr / r for every pair
    coef = 4.0 * spec.epsilon * (6.0 * s6 - 12.0 * s6 * s6) / r2
    grad = np.einsum("ij,ijk->ik", coef, diff)
    return energy, grad.ravel()


def lj_problem(spec, beta=1.5e-4):
    return FixedPointProblem(spec.dim,
                             lambda x: -lj_energy_and_gradient(spec, x)[1], beta,
                             f"lennard_jones(N={spec.n_atoms})")
