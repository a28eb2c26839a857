"""L2-regularized logistic regression, ``f(theta) = -grad loss(theta)``."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.special import expit

from ..core import FixedPointProblem


@dataclass(frozen=True)
class LogRegSpec:
    features: np.ndarray
    labels: np.ndarray
    lambda_reg: float = 0.01

    def __post_init__(self):
        if self.features.ndim != 2 or self.labels.shape != (self.features.shape[0],):
            raise ValueError("features must be N x n and labels length N")
        if not np.all(np.abs(self.labels) == 1):
            raise ValueError("labels must be +1 or -1")

    @property
    def dim(self):
        return self.features.shape[1]

    def with_lambda(self, lambda_reg):
        return LogRegSpec(self.features, self.labels, lambda_reg)


def logreg_loss_and_gradient(spec, theta):
    X, y = spec.features, spec.labels
    theta = np.asarray(theta, dtype=float)
    t = y * (X @ theta)
    loss = float(np.mean(np.logaddexp(0.0, -t))) + 0.5 * spec.lambda_reg * float(theta @ theta)
    grad = -(X.T @ (y * expit(-t))) / X.shape[0] + spec.lambda_reg * theta
    return loss, grad


def logreg_problem(spec, beta=1.0):
    return FixedPointProblem(spec.dim,
                             lambda th: -logreg_loss_and_gradient(spec, th)[1], beta,
                             f"logreg(N={spec.features.shape[0]}, n={spec.dim}, "
                             f"lambda={spec.lambda_reg:g})")


def standardize(X):
    """Zero mean, unit std per column; constant columns are only centered."""
    X = np.asarray(X, dtype=float)
    X = X - X.mean(axis=0)
    std = X.std(axis=0)
    std[std < 1e-12] = 1.0
    return X / std


def _read_rows(path):
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rows.append([float(tok) for tok in line.split()])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if len(rows[-1]) != len(rows[0]):
                raise ValueError(
                    f"{path}:{lineno}: expected {len(rows[0])} values, got {len(rows[-1])}")
    return rows


def load_madelon(feature_path, label_path, lambda_reg=0.01):
    """Read the UCI Madelon text files (``madelon_train.data``/``.labels``)."""
    feats = _read_rows(Path(feature_path))
    labels = _read_rows(Path(label_path))
    if len(feats) != len(labels):
        raise ValueError(
            f"{feature_path} has {len(feats)} rows but {label_path} has {len(labels)}")
    y = np.array([row[0] for row in labels])
    bad = np.flatnonzero(np.abs(y) != 1)
    if bad.size:
        raise ValueError(f"{label_path}:{bad[0] + 1}: label {y[bad[0]]:g} is not +-1")
    return LogRegSpec(standardize(np.array(feats)), y, lambda_reg)


def synthetic_madelon(n_samples=2000, n_features=500, seed=0, lambda_reg=0.01,
                      separation=0.05):
    """Two Gaussian classes shaped like Madelon, standardized per feature.

    Class means differ by ``2 * separation`` per feature, so the default
    keeps the classes overlapping (the real data set is far from separable).
    """
    rng = np.random.default_rng(seed)
    y = np.where(np.arange(n_samples) % 2 == 0, 1.0, -1.0)
    y = rng.permutation(y)
    direction = rng.standard_normal(n_features) * separation
    X = rng.standard_normal((n_samples, n_features)) + y[:, None] * direction
    return LogRegSpec(standardize(X), y, lambda_reg)
