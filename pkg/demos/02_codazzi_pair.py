"""The form A = I + c dh^2 and why it pairs with II.

For a surface of constant curvature K (K != eps), set c = 1/(eps K - 1).
(I, II) fails the space-form Codazzi equations, while (A, II) satisfies
them, and their extrinsic curvature is the constant K - eps.
"""

# %%
import numpy as np

from ccsurf import H2R, immersion_from_profile, profile
from ccsurf.codazzi_pair import KA_formula, build_A, classical_codazzi_defect, hilbert_bound_check
from ccsurf.forms_engine import first_form_field, fundamental_forms, second_form_field
from ccsurf.quadratic_forms import codazzi_residual, pair_extrinsic_curvature

K = 2.0
chart = immersion_from_profile(H2R, profile(H2R, K))
pair = build_A(chart, K)
print(f"c = {pair.c:.6f}")

# %%
u = np.linspace(0.2, 2.0, 6)
v = np.full_like(u, 0.3)
_, II, _ = fundamental_forms(chart, u, v)
print("K(A, II) along a meridian:", np.round(pair_extrinsic_curvature(pair.A(u, v), II), 12))

# %% [markdown]
# The Codazzi residual of (I, II) is not small, and it matches the predicted
# defect term built from nu and grad h. The residual of (A, II) vanishes.

# %%
r1, r2 = codazzi_residual(first_form_field(chart), second_form_field(chart), u, v)
d1, d2 = classical_codazzi_defect(chart, u, v)
a1, a2 = codazzi_residual(pair.A, pair.II, u, v)
print("(I, II) residual      :", np.round(r2, 6))
print("predicted defect      :", np.round(d2, 6))
print("(A, II) residual (max):", float(np.max(np.abs(np.r_[a1, a2]))))

# %% [markdown]
# For K < -1 in H2xR, the curvature of A as a function of x = |grad h|^2 is
# trapped in [K - 1, K + 1], which lies entirely below zero.

# %%
for Kneg in (-2.0, -1.5, -1.1):
    lo, hi = hilbert_bound_check(H2R, Kneg)
    x = np.linspace(0, 1, 5)
    print(f"K = {Kneg}: K(A) in [{lo:.3f}, {hi:.3f}];", np.round(KA_formula(H2R, Kneg, x), 4))
