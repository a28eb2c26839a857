"""Modified Bratu problem ``Lap u + alpha u_x + lambda exp(u) = 0`` on the unit square.

Discretized with centered differences on an ``N x N`` interior grid and
zero Dirichlet data; the mesh factor ``h^2`` is multiplied through so the
residual reads ``f(v) = A v + h alpha B v + h^2 lambda exp(v)`` with the
integer 5-point stencil ``A`` and the skew-symmetric first difference ``B``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import FixedPointProblem


@dataclass(frozen=True)
class BratuSpec:
    grid_interior: int = 200
    alpha: float = 0.0
    lam: float = 1.0

    def __post_init__(self):
        if self.grid_interior < 2:
            raise ValueError("grid_interior must be >= 2")

    @property
    def h(self):
        return 1.0 / (self.grid_interior + 1)

    @property
    def dim(self):
        return self.grid_interior ** 2


def laplacian(V):
    """5-point stencil ``[1, 1, -4, 1, 1]`` with zero boundary, on a 2-D grid."""
    out = -4.0 * V
    out[1:, :] += V[:-1, :]
    out[:-1, :] += V[1:, :]
    out[:, 1:] += V[:, :-1]
    out[:, :-1] += V[:, 1:]
    return out


def convection(V):
    """Centered difference ``(v[i, j+1] - v[i, j-1]) / 2`` along x (axis 1)."""
    out = np.zeros_like(V)
    out[:, :-1] += 0.5 * V[:, 1:]
    out[:, 1:] -= 0.5 * V[:, :-1]
    return out


def bratu_residual(spec, v):
    N = spec.grid_interior
    v = np.asarray(v, dtype=float)
    if v.shape != (N * N,):
        raise ValueError(f"expected {N * N} unknowns, got {v.shape}")
    V = v.reshape(N, N)
    with np.errstate(over="ignore"):  # a diverging iterate shows up as a non-finite residual
        out = laplacian(V) + spec.lam * spec.h ** 2 * np.exp(V)
    if spec.alpha:
        out += spec.h * spec.alpha * convection(V)
    return out.ravel()


def bratu_problem(spec, beta=1.0):
    return FixedPointProblem(spec.dim, lambda v: bratu_residual(spec, v), beta,
                             f"bratu(N={spec.grid_interior}, alpha={spec.alpha})")
