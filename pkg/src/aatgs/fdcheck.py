"""Central finite differences for checking analytic gradients."""
from __future__ import annotations

import numpy as np


def fd_gradient(fun, x, step=1e-6):
    """Central-difference gradient of the scalar ``fun`` at ``x``."""
    x = np.array(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        h = step * max(1.0, abs(x[i]))
        xi = x[i]
        x[i] = xi + h
        fp = fun(x)
        x[i] = xi - h
        fm = fun(x)
        x[i] = xi
        g[i] = (fp - fm) / (2 * h)
    return g


def gradient_error(energy_and_gradient, x, step=1e-6):
    """``||g_fd - g|| / ||g||`` for a function returning ``(value, gradient)``."""
    _, g = energy_and_gradient(x)
    g_fd = fd_gradient(lambda y: energy_and_gradient(y)[0], x, step)
    return float(np.linalg.norm(g_fd - g) / max(np.linalg.norm(g), 1e-300))
