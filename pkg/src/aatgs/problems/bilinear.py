"""Bilinear zero-sum game ``min_x max_y x^T A y + b^T x + c^T y`` via alternating GDA."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import FixedPointProblem


@dataclass(frozen=True, eq=False)
class BilinearGameSpec:
    A: np.ndarray
    b: np.ndarray
    c: np.ndarray
    beta_game: float = 1e-4

    @property
    def n(self):
        return self.A.shape[0]

    @property
    def dim(self):
        return 2 * self.n

    def equilibrium(self):
        """Nash point ``(-A^{-T} c, -A^{-1} b)`` as one stacked vector."""
        x = -np.linalg.solve(self.A.T, self.c)
        y = -np.linalg.solve(self.A, self.b)
        return np.concatenate([x, y])

    def operator(self):
        """Dense matrix ``M`` with ``f(z) = M z - rhs``."""
        A, bg = self.A, self.beta_game
        n = self.n
        M = np.zeros((2 * n, 2 * n))
        M[:n, n:] = -A
        M[n:, :n] = A.T
        M[n:, n:] = -bg * A.T @ A
        return M

    def rhs(self):
        return np.concatenate([self.b, self.beta_game * self.A.T @ self.b - self.c])

    def distance(self, z):
        star = self.equilibrium()
        return float(np.linalg.norm(z - star) / np.linalg.norm(star))


def make_bilinear_game(n=100, seed=0, beta_game=1e-4):
    """Gaussian ``A, b, c`` with ``A`` scaled to unit spectral norm."""
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n))
    A /= np.linalg.norm(A, 2)
    b = rng.standard_normal(n)
    c = rng.standard_normal(n)
    return BilinearGameSpec(A, b, c, beta_game)


def bilinear_initial(spec, seed=0):
    return np.random.default_rng(seed).standard_normal(spec.dim)


def bilinear_residual(spec, z):
    z = np.asarray(z, dtype=float)
    if z.shape != (spec.dim,):
        raise ValueError(f"expected {spec.dim} unknowns, got {z.shape}")
    n, A, bg = spec.n, spec.A, spec.beta_game
    x, y = z[:n], z[n:]
    Ay = A @ y
    top = -Ay - spec.b
    bottom = A.T @ (x - bg * Ay - bg * spec.b) + spec.c
    return np.concatenate([top, bottom])


def bilinear_problem(spec, beta=1e-4):
    return FixedPointProblem(spec.dim, lambda z: bilinear_residual(spec, z), beta,
                             f"bilinear(n={spec.n})")
