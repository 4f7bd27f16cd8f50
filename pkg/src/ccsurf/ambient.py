"""The product spaces S2xR and H2xR as hypersurfaces of R^4.

S2xR sits in Euclidean R^4 as x1^2 + x2^2 + x3^2 = 1, and H2xR sits in
Lorentzian R^4 (signature -+++) as -x1^2 + x2^2 + x3^2 = -1 with x1 > 0.
The sign ``epsilon`` (+1 for S2xR, -1 for H2xR) is the only thing that
distinguishes the two; every formula downstream branches on it.

Points and tangent vectors are plain numpy arrays whose last axis has
length 4, so everything here broadcasts over grids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "AmbientSpace",
    "H2R",
    "S2R",
    "E4",
    "space_from_name",
    "inner",
    "manifold_residual",
    "rotate_about_axis",
    "vertical_translate",
]

# module-level default tolerances
ALGEBRAIC_TOL = 1e-9
FD_TOL = 1e-4

E4 = np.array([0.0, 0.0, 0.0, 1.0])


@dataclass(frozen=True)
class AmbientSpace:
    """M^2(epsilon) x R with epsilon = +1 (S2xR) or -1 (H2xR)."""

    epsilon: int

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {self.epsilon!r}")

    @property
    def name(self) -> str:
        return "s2r" if self.epsilon == 1 else "h2r"

    @property
    def signature(self) -> np.ndarray:
        """Diagonal of the R^4 bilinear form."""
        return np.array([float(self.epsilon), 1.0, 1.0, 1.0])

    def __repr__(self):
        return f"AmbientSpace({'S2xR' if self.epsilon == 1 else 'H2xR'})"


S2R = AmbientSpace(1)
H2R = AmbientSpace(-1)


def space_from_name(name: str) -> AmbientSpace:
    key = name.strip().lower().replace("x", "").replace("*", "")
    if key in ("s2r", "s2", "sphere", "+1", "1"):
        return S2R
    if key in ("h2r", "h2", "hyperbolic", "-1"):
        return H2R
    raise ValueError(f"unknown ambient space {name!r} (expected 'h2r' or 's2r')")


def inner(space: AmbientSpace, a, b):
    """epsilon*a1*b1 + a2*b2 + a3*b3 + a4*b4, broadcast over leading axes.

    Complex input is paired bilinearly (no conjugation).
    """
    a = np.asarray(a)
    b = np.asarray(b)
    return np.sum(space.signature * a * b, axis=-1)


def manifold_residual(space: AmbientSpace, p):
    """epsilon*p1^2 + p2^2 + p3^2 - epsilon; zero on the model hypersurface.

    The H2xR sheet condition p1 > 0 is left to the caller.
    """
    p = np.asarray(p, dtype=float)
    eps = space.epsilon
    return eps * p[..., 0] ** 2 + p[..., 1] ** 2 + p[..., 2] ** 2 - eps


def rotate_about_axis(space: AmbientSpace, angle, p):
    """Rotate the (x2, x3) plane by ``angle``; x1 and x4 are fixed.

    This is the rotation about the axis {(1,0,0)} x R in either space.
    ``space`` is accepted for symmetry with the other operations; the
    rotation matrix does not depend on it.
    """
    p = np.asarray(p, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    out = p.copy()
    out[..., 1] = c * p[..., 1] - s * p[..., 2]
    out[..., 2] = s * p[..., 1] + c * p[..., 2]
    return out


def vertical_translate(p, t):
    """Shift the height coordinate x4 by ``t``."""
    out = np.array(p, dtype=float, copy=True)
    out[..., 3] = out[..., 3] + t
    return out
