"""Rotational surfaces of constant Gaussian curvature in H2xR and S2xR.

Walks through the profile families, what the classifier says about each
(space, K) pair, and how closely the finite-difference curvature of the
induced metric matches K.
"""

# %%
import numpy as np

from ccsurf import H2R, S2R, classify, immersion_from_profile, profile
from ccsurf.forms_engine import first_form_field
from ccsurf.quadratic_forms import gaussian_curvature_fd
from ccsurf.revolution import families_for

# %% [markdown]
# Every ambient point satisfies eps x1^2 + x2^2 + x3^2 = eps, with eps = 1 for
# the sphere factor and eps = -1 for the hyperbolic one. A rotational surface
# is a meridian (k(s), h(s)) in arclength, spun about the x4 axis.

# %%
for space in (H2R, S2R):
    print(f"--- {space.name} (eps = {space.epsilon:+d})")
    for K in (-2.0, -0.5, 0.0, 0.5, 1.0, 2.0):
        fams = ", ".join(f.value for f in families_for(space, K)) or "(none)"
        print(f"K = {K:+.1f}: {classify(space, K).status.value:<18} families: {fams}")

# %% [markdown]
# The sphere in H2xR with K = 2 closes up at s = pi / sqrt(K). Its height
# is monotone from the south pole to the north pole.

# %%
p = profile(H2R, 2.0)
s = np.linspace(0.0, np.pi / np.sqrt(2.0), 7)
print("s      k(s)      h(s)")
for si, ki, hi in zip(s, p.k(s), p.h(s)):
    print(f"{si:.3f}  {ki:.6f}  {hi:+.6f}")

# %%
chart = immersion_from_profile(H2R, p)
lo, hi = p.sample_range()
U, V = np.meshgrid(np.linspace(lo, hi, 30), np.linspace(0, 2 * np.pi, 30), indexing="ij")
K_fd = gaussian_curvature_fd(first_form_field(chart), U, V)
print(f"finite-difference curvature: min {K_fd.min():.10f}, max {K_fd.max():.10f}")

# %% [markdown]
# In S2xR the gap 0 < K < 1 is different: no rotational sphere exists there,
# and whether any complete surface exists is not known.

# %%
v = classify(S2R, 0.5)
print(v.summary())
for note in v.conditional_notes:
    print("  note:", note)
