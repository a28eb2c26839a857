"""Linear-algebra reference machinery used to check AATGS on ``f(x) = b - Ax``.

Contains a textbook full GMRES, the residual bound for SPD operators,
seeded test operators, and report builders that run AATGS against them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from .core import BreakdownError, FixedPointProblem, SolverConfig
from . import solver as aatgs


@dataclass(frozen=True)
class LinearOperator:
    """Matrix-vector product with a little metadata.

    ``rapply`` is the transpose product; it defaults to ``apply`` for
    symmetric operators and to ``matrix.T`` when a dense matrix is attached.
    """

    dim: int
    apply: Callable[[np.ndarray], np.ndarray]
    symmetric: bool = False
    spectrum_hint: Optional[Tuple[float, float]] = None
    matrix: Optional[np.ndarray] = None
    rapply: Optional[Callable[[np.ndarray], np.ndarray]] = None

    @classmethod
    def from_dense(cls, M, symmetric=None, spectrum_hint=None):
        M = np.asarray(M, dtype=float)
        if symmetric is None:
            symmetric = bool(np.array_equal(M, M.T))
        return cls(M.shape[0], M.__matmul__, symmetric, spectrum_hint, M,
                   M.T.__matmul__)

    def __matmul__(self, v):
        return self.apply(v)

    def T(self, v):
        if self.rapply is not None:
            return self.rapply(v)
        if self.symmetric:
            return self.apply(v)
        raise ValueError("operator has no transpose product")

    def dense(self):
        if self.matrix is not None:
            return self.matrix
        return np.column_stack([self.apply(e) for e in np.eye(self.dim)])


def linear_problem(A, b, beta=1.0, name="linear"):
    """``f(x) = b - A x`` as a :class:`FixedPointProblem`."""
    b = np.asarray(b, dtype=float)
    return FixedPointProblem(A.dim, lambda x: b - A.apply(x), beta, name)


def make_test_operator(kind, n, seed=0, **params):
    """Deterministic test operators.

    kind : str
        ``spd_spectrum``  -- ``Q diag(lam) Q^T`` with ``lam`` evenly spaced on
        ``[lam_min, lam_max]`` (defaults 1 and 100), so ``kappa`` is exact.
        ``nonsymmetric_random`` -- ``shift I + scale G / sqrt(n)``.
        ``skewplus_identity`` -- ``I + S`` with ``S`` skew-symmetric.
        ``banded_laplacian`` -- 1-D Dirichlet Laplacian ``tridiag(-1, 2, -1)``.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = np.random.default_rng(seed)
    if kind == "spd_spectrum":
        lo = float(params.pop("lam_min", 1.0))
        hi = float(params.pop("lam_max", 100.0))
        _no_extra(params)
        if not 0 < lo <= hi:
            raise ValueError("need 0 < lam_min <= lam_max")
        lam = np.linspace(lo, hi, n)
        Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        M = (Q * lam) @ Q.T
        M = 0.5 * (M + M.T)
        return LinearOperator.from_dense(M, True, (lo, hi))
    if kind == "nonsymmetric_random":
        shift = float(params.pop("shift", 5.0))
        scale = float(params.pop("scale", 4.0))
        _no_extra(params)
        M = shift * np.eye(n) + scale * rng.standard_normal((n, n)) / math.sqrt(n)
        return LinearOperator.from_dense(M, False)
    if kind == "skewplus_identity":
        scale = float(params.pop("scale", 1.0))
        _no_extra(params)
        G = rng.standard_normal((n, n)) / math.sqrt(n)
        M = np.eye(n) + scale * 0.5 * (G - G.T)
        return LinearOperator.from_dense(M, False)
    if kind == "banded_laplacian":
        _no_extra(params)
        M = 2 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
        k = np.arange(1, n + 1)
        lam = 2 - 2 * np.cos(k * np.pi / (n + 1))
        return LinearOperator.from_dense(M, True, (lam.min(), lam.max()))
    raise ValueError(f"unknown operator kind {kind!r}")


def _no_extra(params):
    if params:
        raise ValueError(f"unexpected parameters: {sorted(params)}")


def gmres_iterate(A, b, x0, j):
    """The ``j``-th full GMRES iterate for ``A x = b`` started at ``x0``.

    Arnoldi with modified Gram-Schmidt followed by a dense least-squares
    solve on the Hessenberg matrix.  On lucky breakdown the exact solution
    of the reduced problem is returned.
    """
    if j > A.dim:
        raise ValueError("j must not exceed the dimension")
    x0 = np.asarray(x0, dtype=float)
    r0 = np.asarray(b, dtype=float) - A.apply(x0)
    gamma = np.linalg.norm(r0)
    if j == 0 or gamma == 0:
        return x0.copy()
    V = np.zeros((A.dim, j + 1))
    H = np.zeros((j + 1, j))
    V[:, 0] = r0 / gamma
    k_used = j
    for k in range(j):
        w = A.apply(V[:, k])
        for i in range(k + 1):
            H[i, k] = w @ V[:, i]
            w = w - H[i, k] * V[:, i]
        H[k + 1, k] = np.linalg.norm(w)
        if H[k + 1, k] <= 1e-14 * gamma:
            k_used = k + 1
            break
        V[:, k + 1] = w / H[k + 1, k]
    rhs = np.zeros(k_used + 1)
    rhs[0] = gamma
    y, *_ = np.linalg.lstsq(H[: k_used + 1, :k_used], rhs, rcond=None)
    return x0 + V[:, :k_used] @ y


def krylov_basis(A, r, j):
    """Orthonormal basis of ``K_j(A, r)`` (Gram-Schmidt applied twice)."""
    V = np.zeros((A.dim, j))
    v = np.asarray(r, dtype=float)
    for k in range(j):
        w = v if k == 0 else A.apply(V[:, k - 1])
        for _ in range(2):
            w = w - V[:, :k] @ (V[:, :k].T @ w)
        V[:, k] = w / np.linalg.norm(w)
    return V


def spd_bound(kappa, beta, norm_i_minus_beta_a, j, r0_norm):
    """``2 ||I - beta A|| ((sqrt(k) - 1) / (sqrt(k) + 1))^j ||r_0||``.

    Upper bound for the residual after step ``j + 1`` of full-depth AATGS on
    an SPD system with condition number ``kappa``.  ``beta`` only enters
    through ``norm_i_minus_beta_a``; it is accepted to keep the signature
    self-describing.
    """
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    sk = math.sqrt(kappa)
    return 2.0 * norm_i_minus_beta_a * ((sk - 1) / (sk + 1)) ** j * r0_norm


def norm_i_minus_beta_a(A, beta, tol=1e-8, max_iter=10000, seed=0):
    """2-norm of ``I - beta A``.

    Closed form ``max |1 - beta lam|`` for symmetric operators with a known
    spectrum, power iteration on ``(I - bA)^T (I - bA)`` otherwise.
    """
    if A.symmetric and A.spectrum_hint is not None:
        lo, hi = A.spectrum_hint
        return max(abs(1 - beta * lo), abs(1 - beta * hi))
    v = np.random.default_rng(seed).standard_normal(A.dim)
    v /= np.linalg.norm(v)
    sigma2 = 0.0
    for _ in range(max_iter):
        w = v - beta * A.apply(v)
        w = w - beta * A.T(w)
        new = float(np.linalg.norm(w))
        if new == 0:
            return 0.0
        v = w / new
        if abs(new - sigma2) <= tol * new:
            sigma2 = new
            break
        sigma2 = new
    return math.sqrt(sigma2)


@dataclass
class Report:
    """Per-step discrepancies plus named pass/fail checks."""

    name: str
    rows: List[dict] = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())

    def to_text(self):
        lines = [f"suite={self.name}", f"passed={str(self.passed).lower()}"]
        for key, ok in self.checks.items():
            lines.append(f"check.{key}={'pass' if ok else 'fail'}")
        for row in self.rows:
            lines.append(" ".join(f"{k}={_fmt(v)}" for k, v in row.items()))
        return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6e}"
    return str(v)


def _full_depth_config(beta, steps, window_m=None):
    return SolverConfig(window_m=window_m, beta=beta, tol=1e-300,
                        max_iters=steps + 1)


def run_linear(A, b, x0, beta, steps, window_m=None):
    """Restart-free AATGS run on ``b - Ax`` collecting every ``StepInfo``.

    ``Q`` and ``U`` are copied at each step so identities can be checked
    afterwards.
    """
    infos = []

    def grab(info):
        info.Q = info.basis.Q.copy()
        info.U = info.basis.U.copy()
        infos.append(info)

    trace = aatgs.solve(linear_problem(A, b, beta), _full_depth_config(
        beta, steps, window_m), x0, callback=grab, keep_iterates=True)
    if trace.status == "breakdown":
        raise BreakdownError(trace.message, step=len(infos) + 1)
    return trace, infos


def check_gmres_equivalence(A, b, x0, steps, beta=0.1, tol_x=1e-8,
                            tol_richardson=1e-10):
    """Compare full-depth AATGS with GMRES and the Richardson identity.

    For every step ``j`` reports ``||x_bar_j - x_j^GMRES|| / ||x_j^GMRES||``
    and ``||f_{j+1} - (I - beta A) f_bar_j|| / ||f_bar_j||``.  Once
    ``f_bar_j`` drops to rounding level (``1e-12 ||f_0||``) the system is
    solved; that step is measured against ``||f_0||`` and the report ends.
    """
    trace, infos = run_linear(A, b, x0, beta, steps)
    report = Report("linear_equivalence")
    worst_x = worst_r = 0.0
    f0_norm = trace.records[0].residual_norm
    for info in infos[:steps]:
        xg = gmres_iterate(A, b, x0, info.j)
        ex = _rel(info.x_bar - xg, xg)
        rich = info.f_bar - beta * A.apply(info.f_bar)
        solved = np.linalg.norm(info.f_bar) <= 1e-12 * f0_norm
        er = _rel(info.f_next - rich, info.f_bar)
        if solved:
            er = float(np.linalg.norm(info.f_next - rich)) / f0_norm
        worst_x, worst_r = max(worst_x, ex), max(worst_r, er)
        report.rows.append({"step": info.j, "xbar_vs_gmres": ex,
                            "richardson": er})
        if solved:
            break
    report.checks["xbar_vs_gmres"] = worst_x <= tol_x
    report.checks["richardson"] = worst_r <= tol_richardson
    return report


def check_symmetric_band(A, b, x0, steps, beta, band_tol=1e-8,
                         theta_tol=1e-8, equiv_tol=1e-6):
    """Band structure of ``S``, sparsity of ``theta`` and AATGS(3) == AATGS(inf).

    Only meaningful for symmetric ``A``.
    """
    trace_inf, infos = run_linear(A, b, x0, beta, steps)
    trace_3, _ = run_linear(A, b, x0, beta, steps, window_m=3)
    s_max = max(float(np.max(np.abs(i.s_column))) for i in infos)
    report = Report("symmetric_band")
    band_worst = theta_worst = 0.0
    for info in infos:
        off_band = np.abs(info.s_column[:-3])
        band = float(off_band.max()) / s_max if off_band.size else 0.0
        old = np.abs(info.theta[:-2])
        th = float(old.max()) / np.linalg.norm(info.f) if old.size else 0.0
        band_worst, theta_worst = max(band_worst, band), max(theta_worst, th)
        report.rows.append({"step": info.j, "band": band, "theta": th})
    n_common = min(len(trace_inf.iterates), len(trace_3.iterates))
    equiv = max(_rel(trace_3.iterates[k] - trace_inf.iterates[k],
                     trace_inf.iterates[k]) for k in range(n_common))
    report.rows.append({"aatgs3_vs_full": equiv})
    report.checks["band"] = band_worst <= band_tol
    report.checks["theta_sparsity"] = theta_worst <= theta_tol
    report.checks["aatgs3_equals_full"] = equiv <= equiv_tol
    return report


def check_spd_bound(A, b, x0, steps, beta, slack=1.1):
    """Measured ``||r_{j+1}||`` against ``slack * spd_bound`` for ``j = 1..steps``."""
    if not A.symmetric or A.spectrum_hint is None:
        raise ValueError("need a symmetric operator with a spectrum hint")
    lo, hi = A.spectrum_hint
    kappa = hi / lo
    nrm = norm_i_minus_beta_a(A, beta)
    trace, _ = run_linear(A, b, x0, beta, steps)
    r = trace.residual_norms
    report = Report("spd_bound")
    ok = True
    for j in range(1, min(steps, len(r) - 2) + 1):
        bound = spd_bound(kappa, beta, nrm, j, r[0])
        ok &= r[j + 1] <= slack * bound
        report.rows.append({"step": j, "residual": float(r[j + 1]),
                            "bound": bound})
    report.checks["bound"] = bool(ok)
    return report


def _rel(diff, ref):
    d = float(np.linalg.norm(diff))
    r = float(np.linalg.norm(ref))
    return d / r if r > 0 else d
