"""
How sensitive is AATGS to eta?
==============================

Regularized logistic regression on Madelon-shaped data (2000 samples, 500
features).  We count AATGS[3] iterations over a grid of regularization
strengths and restart thresholds, in the same layout as a results table.
``F`` marks a run that did not reach the tolerance within the budget.

Point ``MADELON_DIR`` at the UCI ``madelon_train.*`` files to use the real
data; otherwise a seeded synthetic set of the same shape is used.
"""
import math
import os

from aatgs.harness import ExperimentConfig, run_sweep

problem = {"kind": "logreg", "n_samples": 2000, "n_features": 500}
if "MADELON_DIR" in os.environ:
    d = os.environ["MADELON_DIR"]
    problem = {"kind": "logreg", "source": "madelon",
               "features": os.path.join(d, "madelon_train.data"),
               "labels": os.path.join(d, "madelon_train.labels")}

config = ExperimentConfig.from_dict({
    "problem": problem,
    "solvers": [{"method": "aatgs", "m": 3}],
    "tol": 1e-10, "max_iters": 1000, "seed": 0,
})
grid, table = run_sweep(config, "lambda_reg", [1e0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5],
                        "eta", [1e1, 1e2, 1e3, 1e4, 1e5, math.inf])
print(table)
