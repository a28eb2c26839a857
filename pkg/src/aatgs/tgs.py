"""Paired truncated Gram-Schmidt basis.

``Q`` holds (locally) orthonormal residual-difference directions and ``U``
the solution-difference directions that received exactly the same linear
combinations, so that ``q_i ~ J u_i`` for the Jacobian ``J``.
"""
from __future__ import annotations

import math
from collections import deque
from typing import NamedTuple

import numpy as np

from .core import BreakdownError, norm2


class Combination(NamedTuple):
    x_next: np.ndarray
    x_bar: np.ndarray
    f_bar: np.ndarray


class PairedBasis:
    """Windowed ring buffer of paired columns ``(q_i, u_i)``.

    Parameters
    ----------
    n : int
        Length of the stored vectors.
    capacity : int or None
        Maximum number of stored pairs.  ``None`` (or ``math.inf``) keeps
        everything.
    """

    def __init__(self, n, capacity=None):
        if capacity is not None and capacity != math.inf:
            capacity = int(capacity)
            if capacity < 1:
                raise ValueError("capacity must be >= 1")
            alloc = capacity
        else:
            capacity = None
            alloc = 8
        self.n = int(n)
        self.capacity = capacity
        self._q = np.empty((alloc, self.n))
        self._u = np.empty((alloc, self.n))
        self._start = 0
        self.count = 0
        self.s_cols = deque()

    def __len__(self):
        return self.count

    @property
    def full(self):
        return self.capacity is not None and self.count == self.capacity

    def _slots(self):
        alloc = self._q.shape[0]
        return (self._start + np.arange(self.count)) % alloc

    @property
    def Q(self):
        """Stored q's as an ``n x count`` matrix, oldest column first."""
        return self._q[self._slots()].T

    @property
    def U(self):
        return self._u[self._slots()].T

    def _grow(self):
        idx = self._slots()
        alloc = 2 * self._q.shape[0]
        q = np.empty((alloc, self.n))
        u = np.empty((alloc, self.n))
        q[: self.count] = self._q[idx]
        u[: self.count] = self._u[idx]
        self._q, self._u, self._start = q, u, 0

    def append_pair(self, delta_f, delta_x, breakdown_eps=1e-14, reference_norm=0.0):
        """Orthonormalize ``delta_f`` against the window and store the pair.

        Modified Gram-Schmidt in storage order; ``delta_x`` receives the
        same subtractions.  When the window is full the oldest pair is
        dropped, so the new vector is orthogonalized against the most recent
        ``capacity - 1`` columns only.

        Returns the new column of ``S``: the coefficients against the
        retained columns (oldest first) followed by ``s_jj``.

        Raises
        ------
        BreakdownError
            If ``s_jj <= breakdown_eps * max(||delta_f||_2, reference_norm)``.
            The basis is left untouched in that case.  Passing the current
            residual norm as ``reference_norm`` also catches a ``delta_f``
            that is pure rounding noise (stagnation).
        """
        q = np.array(delta_f, dtype=float)
        u = np.array(delta_x, dtype=float)
        if q.shape != (self.n,) or u.shape != (self.n,):
            raise ValueError("delta_f and delta_x must have length n")
        idx = self._slots()
        if self.full:
            idx = idx[1:]
        s = np.empty(len(idx) + 1)
        for k, slot in enumerate(idx):
            qi = self._q[slot]
            s[k] = q @ qi
            q -= s[k] * qi
            u -= s[k] * self._u[slot]
        s_jj = norm2(q)
        df_norm = norm2(delta_f)
        if not s_jj > breakdown_eps * max(df_norm, reference_norm):
            raise BreakdownError(
                f"breakdown: s_jj={s_jj:.3e} with ||delta_f||={df_norm:.3e} "
                f"and {len(idx)} retained columns")
        s[-1] = s_jj
        if self.full:
            self.evict_oldest()
        elif self.capacity is None and self.count == self._q.shape[0]:
            self._grow()
        slot = (self._start + self.count) % self._q.shape[0]
        self._q[slot] = q / s_jj
        self._u[slot] = u / s_jj
        self.count += 1
        self.s_cols.append(s)
        return s

    def project(self, f):
        """``theta = Q^T f`` in storage order."""
        f = np.asarray(f, dtype=float)
        if f.shape != (self.n,):
            raise ValueError("f must have length n")
        if self.count == 0:
            return np.zeros(0)
        return self._q[self._slots()] @ f

    def combine(self, x, f, theta, beta):
        """Next iterate ``(x - U theta) + beta (f - Q theta)``.

        Also returns the intermediates ``x_bar = x - U theta`` and
        ``f_bar = f - Q theta``.
        """
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.count,):
            raise ValueError(
                f"theta has length {theta.size}, basis holds {self.count} columns")
        x = np.asarray(x, dtype=float)
        f = np.asarray(f, dtype=float)
        if self.count:
            idx = self._slots()
            x_bar = x - theta @ self._u[idx]
            f_bar = f - theta @ self._q[idx]
        else:
            x_bar, f_bar = x.copy(), f.copy()
        return Combination(x_bar + beta * f_bar, x_bar, f_bar)

    def evict_oldest(self):
        if self.count == 0:
            return
        self._start = (self._start + 1) % self._q.shape[0]
        self.count -= 1
        self.s_cols.popleft()

    def clear(self):
        self._start = 0
        self.count = 0
        self.s_cols.clear()
