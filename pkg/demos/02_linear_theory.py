"""
What AATGS does on a linear system
==================================

For ``f(x) = b - A x`` the intermediate iterate of AATGS with unlimited
window equals the GMRES iterate, and the next iterate is one Richardson
step from it.  When ``A`` is symmetric the Gram-Schmidt coefficients are
banded, so a window of three already gives the full-memory method.  This
script checks all of that numerically and compares the residuals with the
Chebyshev-type bound for SPD matrices.
"""
import numpy as np

from aatgs.linear import (check_gmres_equivalence, check_spd_bound,
                          check_symmetric_band, make_test_operator)

rng = np.random.default_rng(0)

# %%
# Nonsymmetric, well conditioned: GMRES equivalence holds to rounding.
A = make_test_operator("nonsymmetric_random", 50, seed=1)
rep = check_gmres_equivalence(A, rng.standard_normal(50), np.zeros(50), 20, beta=0.1)
print(rep.to_text().splitlines()[1], "worst x_bar gap:",
      f"{max(r['xbar_vs_gmres'] for r in rep.rows):.1e}")

# %%
# SPD with eigenvalues spread evenly over [1, 100].
S = make_test_operator("spd_spectrum", 100, seed=2)
b = rng.standard_normal(100)
band = check_symmetric_band(S, b, np.zeros(100), 30, beta=2 / 101)
for key, ok in band.checks.items():
    print(f"{key:20s} {'ok' if ok else 'FAILED'}")

# %%
# Residuals against the bound.  The bound is loose early and tight in rate.
bound = check_spd_bound(S, b, np.zeros(100), 15, beta=2 / 101)
print(" j   residual     bound")
for row in bound.rows[::3]:
    print(f"{row['step']:2d}  {row['residual']:.3e}  {row['bound']:.3e}")
