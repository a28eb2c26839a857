"""Experiment configuration: JSON files plus flag overrides."""
from __future__ import annotations

import copy
import json
import math
import zlib
from dataclasses import asdict, dataclass, replace
from typing import List, Optional

import numpy as np

METHODS = ("aatgs", "aa", "fixed_point")


class ConfigError(ValueError):
    pass


def sub_seed(seed, name):
    """Named child seed, so every random consumer is reproducible on its own."""
    ss = np.random.SeedSequence([int(seed), zlib.crc32(name.encode())])
    return int(ss.generate_state(1)[0])


def _num(value):
    """JSON has no infinity; accept ``"inf"`` / ``null`` spellings."""
    if value is None:
        return math.inf
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"not a number: {value!r}") from None
    return float(value)


def _opt_int(value, name):
    if value in (None, "-", "none", "inf", math.inf):
        return None
    try:
        ivalue = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be an integer or '-', got {value!r}") from None
    if ivalue < 1:
        raise ConfigError(f"{name} must be >= 1")
    return ivalue


@dataclass(frozen=True)
class SolverEntry:
    method: str = "aatgs"
    m: Optional[int] = None
    d: Optional[int] = None
    eta: float = 1e3
    beta: Optional[float] = None
    C: float = 1.0

    @classmethod
    def from_dict(cls, raw):
        raw = dict(raw)
        method = raw.pop("method", "aatgs")
        if method not in METHODS:
            raise ConfigError(f"unknown solver {method!r}; expected one of {METHODS}")
        entry = cls(
            method=method,
            m=_opt_int(raw.pop("m", None), "m"),
            d=_opt_int(raw.pop("d", None), "d"),
            eta=_num(raw.pop("eta", 1e3)),
            beta=None if raw.get("beta") is None else _num(raw.pop("beta")),
            C=_num(raw.pop("C", 1.0)),
        )
        raw.pop("beta", None)
        if raw:
            raise ConfigError(f"unknown solver keys {sorted(raw)}")
        return entry

    @property
    def label(self):
        name = {"aatgs": "AATGS", "aa": "AA", "fixed_point": "FP"}[self.method]
        if self.method == "fixed_point":
            return name
        m = "inf" if self.m is None else str(self.m)
        d = "-" if self.d is None else str(self.d)
        return f"{name}[{m},{d}]"

    def to_json(self):
        out = asdict(self)
        out["eta"] = _json_num(self.eta)
        return out


def _json_num(x):
    return "inf" if x == math.inf else x


@dataclass(frozen=True)
class ExperimentConfig:
    problem: dict
    solvers: List[SolverEntry]
    tol: float = 1e-8
    max_iters: int = 1000
    seed: int = 0
    output: Optional[str] = None
    timing: bool = False
    workers: int = 1

    def __post_init__(self):
        if not self.solvers:
            raise ConfigError("at least one solver is required")
        if "kind" not in self.problem:
            raise ConfigError("problem needs a 'kind'")
        if not 0 < self.tol < 1:
            raise ConfigError("tol must lie in (0, 1)")
        if self.max_iters < 1:
            raise ConfigError("max_iters must be >= 1")

    @classmethod
    def from_dict(cls, raw):
        raw = copy.deepcopy(raw)
        try:
            problem = raw.pop("problem")
            if isinstance(problem, str):
                problem = {"kind": problem}
            solvers = [SolverEntry.from_dict(s) for s in raw.pop("solvers", [])]
            cfg = cls(problem=problem, solvers=solvers,
                      tol=float(raw.pop("tol", 1e-8)),
                      max_iters=int(raw.pop("max_iters", 1000)),
                      seed=int(raw.pop("seed", 0)),
                      output=raw.pop("output", None),
                      timing=bool(raw.pop("timing", False)),
                      workers=int(raw.pop("workers", 1)))
        except KeyError as exc:
            raise ConfigError(f"missing key {exc}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from None
        if raw:
            raise ConfigError(f"unknown config keys {sorted(raw)}")
        return cfg

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                return cls.from_dict(json.load(fh))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None

    def to_json(self):
        return {"problem": self.problem,
                "solvers": [s.to_json() for s in self.solvers],
                "tol": self.tol, "max_iters": self.max_iters, "seed": self.seed,
                "timing": self.timing}

    def with_overrides(self, problem=None, problem_params=None, method=None,
                       m=None, d=None, eta=None, beta=None, tol=None,
                       max_iters=None, seed=None, output=None):
        """Apply command-line flags; solver flags hit every solver entry."""
        prob = dict(self.problem)
        if problem is not None and problem != prob.get("kind"):
            prob = {"kind": problem}
        prob.update(problem_params or {})
        solvers = list(self.solvers)
        changes = {k: v for k, v in dict(method=method, m=m, d=d, eta=eta,
                                         beta=beta).items() if v is not None}
        if "method" in changes and changes["method"] not in METHODS:
            raise ConfigError(f"unknown solver {changes['method']!r}")
        if changes:
            if "m" in changes:
                changes["m"] = _opt_int(changes["m"], "m")
            if "d" in changes:
                changes["d"] = _opt_int(changes["d"], "d")
            if "eta" in changes:
                changes["eta"] = _num(changes["eta"])
            solvers = [replace(s, **changes) for s in solvers]
        return replace(
            self, problem=prob, solvers=solvers,
            tol=self.tol if tol is None else tol,
            max_iters=self.max_iters if max_iters is None else max_iters,
            seed=self.seed if seed is None else seed,
            output=self.output if output is None else output)


def default_config(problem="bratu"):
    return ExperimentConfig(problem={"kind": problem}, solvers=[SolverEntry()])
