"""Chandrasekhar's H-equation discretized with the midpoint rule."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..core import DomainError, FixedPointProblem


@dataclass(frozen=True)
class HEquationSpec:
    n: int = 1000
    omega: float = 0.5

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0.0 <= self.omega <= 1.0:
            raise ValueError("omega must lie in [0, 1]")

    @property
    def mu(self):
        return (np.arange(1, self.n + 1) - 0.5) / self.n

    @cached_property
    def kernel(self):
        """``omega / (2n) * mu_i / (mu_i + mu_j)``."""
        mu = self.mu
        return (self.omega / (2 * self.n)) * mu[:, None] / (mu[:, None] + mu[None, :])


def hequation_residual(spec, h):
    """``f(h)_i = h_i - 1 / (1 - omega/(2n) sum_j mu_i h_j / (mu_i + mu_j))``.

    Raises
    ------
    DomainError
        When some bracket is not positive.
    """
    h = np.asarray(h, dtype=float)
    if h.shape != (spec.n,):
        raise ValueError(f"expected {spec.n} unknowns, got {h.shape}")
    bracket = 1.0 - spec.kernel @ h
    if not np.all(bracket > 0):
        i = int(np.argmin(bracket))
        raise DomainError(
            f"H-equation bracket {bracket[i]:.3e} <= 0 at index {i}")
    return h - 1.0 / bracket


def hequation_problem(spec, beta=1.0):
    return FixedPointProblem(spec.n, lambda h: hequation_residual(spec, h), beta,
                             f"hequation(n={spec.n}, omega={spec.omega})")
