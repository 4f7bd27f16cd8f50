"""Shared constructors for the test modules."""

from pathlib import Path

import numpy as np

from ccsurf.ambient import H2R, S2R
from ccsurf.forms_engine import ImmersionChart, slab_chart
from ccsurf.revolution import classify, families_for

K_VALUES = (-1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 4.0)


def all_surfaces(k_values=K_VALUES):
    """(space, K, family) for every constructible family at the listed K."""
    out = []
    for space in (H2R, S2R):
        for K in k_values:
            for fam in families_for(space, K):
                out.append((space, K, fam))
    return out


def surface_id(item):
    space, K, fam = item
    return f"{fam.value}-K{K:g}"


def tilted_slab(space, a, b):
    """Slab chart with height a u + b v added; |grad h|^2 = (a^2 + b^2) d^2."""
    base = slab_chart(space)
    e4 = np.array([0.0, 0.0, 0.0, 1.0])

    def psi(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        return base.psi(u, v) + (a * u + b * v)[..., None] * e4

    def d1(u, v):
        pu, pv = base.d1(u, v)
        return pu + a * e4, pv + b * e4

    return ImmersionChart(space, psi, d1, base.d2, base.domain, 1, "tilted", None, (0.0, 0.0))


def isclose_all(a, b, tol):
    return np.max(np.abs(np.asarray(a) - np.asarray(b))) <= tol


GOLDEN = Path(__file__).parent / "golden"
CLASSIFY_K = [-1e6, -5.0, -2.0, -1.5, -1.1, -1.0000001, -1.0, -0.9999999, -0.75, -0.5, -0.25, -0.1,
              -1e-9, 0.0, 1e-9, 0.1, 0.25, 0.5, 0.75, 0.9999999, 1.0, 1.0000001, 1.1, 1.5, 2.0, 3.0,
              4.0, 10.0, 100.0, 1e6]


def golden_text(space):
    """One line per K: repr, status, detail, conditional notes."""
    lines = []
    for K in CLASSIFY_K:
        v = classify(space, K)
        lines.append(f"K={K!r} | {v.status.value} | {v.detail} | {' ; '.join(v.conditional_notes)}")
    return "\n".join(lines) + "\n"
