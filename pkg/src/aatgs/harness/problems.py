"""Build a benchmark problem and its starting point from a config entry."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..core import FixedPointProblem
from ..linear import linear_problem, make_test_operator
from ..problems import (BratuSpec, HEquationSpec, LennardJonesSpec,
                        bilinear_initial, bilinear_problem, bratu_problem,
                        fcc_initial, hequation_problem, lj_problem,
                        load_madelon, logreg_problem, make_bilinear_game,
                        synthetic_madelon)
from .config import ConfigError, sub_seed


@dataclass
class ProblemInstance:
    problem: FixedPointProblem
    x0: np.ndarray
    distance: Optional[Callable[[np.ndarray], float]] = None


def _take(params, allowed):
    unknown = set(params) - set(allowed) - {"kind"}
    if unknown:
        raise ConfigError(f"unknown parameters for {params['kind']}: {sorted(unknown)}")
    return {k: v for k, v in params.items() if k != "kind"}


def _bratu(p, seed):
    p = _take(p, ("grid", "alpha", "lam"))
    spec = BratuSpec(int(p.get("grid", 50)), float(p.get("alpha", 0.0)),
                     float(p.get("lam", 1.0)))
    return ProblemInstance(bratu_problem(spec), np.zeros(spec.dim))


def _hequation(p, seed):
    p = _take(p, ("n", "omega"))
    spec = HEquationSpec(int(p.get("n", 1000)), float(p.get("omega", 0.5)))
    return ProblemInstance(hequation_problem(spec), np.ones(spec.n))


def _lennard_jones(p, seed):
    p = _take(p, ("cells", "epsilon", "delta", "perturbation"))
    spec = LennardJonesSpec(int(p.get("cells", 3)), float(p.get("epsilon", 1.0)),
                            float(p.get("delta", 1.0)),
                            float(p.get("perturbation", 0.05)),
                            seed=sub_seed(seed, "problem"))
    return ProblemInstance(lj_problem(spec), fcc_initial(spec))


def _logreg(p, seed):
    p = _take(p, ("source", "lambda_reg", "n_samples", "n_features",
                  "separation", "features", "labels"))
    lam = float(p.get("lambda_reg", 0.01))
    source = p.get("source", "synthetic")
    if source == "synthetic":
        spec = synthetic_madelon(int(p.get("n_samples", 2000)),
                                 int(p.get("n_features", 500)),
                                 seed=sub_seed(seed, "problem"), lambda_reg=lam,
                                 separation=float(p.get("separation", 0.05)))
    elif source == "madelon":
        try:
            spec = load_madelon(p["features"], p["labels"], lam)
        except KeyError as exc:
            raise ConfigError(f"madelon source needs {exc}") from None
        except (OSError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
    else:
        raise ConfigError(f"unknown logreg source {source!r}")
    return ProblemInstance(logreg_problem(spec), np.zeros(spec.dim))


def _bilinear(p, seed):
    p = _take(p, ("n", "beta_game"))
    spec = make_bilinear_game(int(p.get("n", 100)), sub_seed(seed, "problem"),
                              float(p.get("beta_game", 1e-4)))
    x0 = bilinear_initial(spec, sub_seed(seed, "initial"))
    return ProblemInstance(bilinear_problem(spec), x0, spec.distance)


def _linear(p, seed):
    p = dict(p)
    kind = p.pop("operator", "spd_spectrum")
    n = int(p.pop("n", 100))
    beta = float(p.pop("beta", 1.0))
    p.pop("kind")
    try:
        A = make_test_operator(kind, n, sub_seed(seed, "problem"), **p)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    b = np.random.default_rng(sub_seed(seed, "rhs")).standard_normal(n)
    return ProblemInstance(linear_problem(A, b, beta), np.zeros(n))


def _affine(p, seed):
    """``f(x) = b - a x`` elementwise; the fixed point is ``b / a``."""
    p = _take(p, ("a", "b", "dim"))
    a, b, dim = float(p.get("a", 1.0)), float(p.get("b", 1.0)), int(p.get("dim", 1))
    prob = FixedPointProblem(dim, lambda x: b - a * x, name="affine")
    return ProblemInstance(prob, np.zeros(dim))


BUILDERS = {
    "bratu": _bratu,
    "hequation": _hequation,
    "lennard_jones": _lennard_jones,
    "logreg": _logreg,
    "bilinear": _bilinear,
    "linear": _linear,
    "affine": _affine,
}


def build_problem(params, seed):
    kind = params.get("kind")
    if kind not in BUILDERS:
        raise ConfigError(f"unknown problem {kind!r}; expected one of {sorted(BUILDERS)}")
    try:
        return BUILDERS[kind](params, seed)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{kind}: {exc}") from None
