"""Pairs of real quadratic forms on a two-dimensional chart.

A form is written E du^2 + 2F du dv + G dv^2. A :class:`QuadraticFormField`
attaches such coefficients to every point of a chart, optionally with exact
first derivatives; otherwise derivatives come from five-point central
differences. All functions accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

__all__ = [
    "DegenerateFormError",
    "NotRiemannianError",
    "FormAtPoint",
    "Christoffel",
    "Rectangle",
    "Disk",
    "QuadraticFormField",
    "central_diff",
    "pair_mean_curvature",
    "pair_extrinsic_curvature",
    "christoffel_from_derivatives",
    "christoffel_of",
    "codazzi_residual",
    "is_riemannian",
    "gaussian_curvature_fd",
    "conformal_model_metric",
]

DET_TOL = 1e-12
COEFF_FD_STEP = 1e-5
CURVATURE_FD_STEP = 1e-4


class DegenerateFormError(ValueError):
    pass


class NotRiemannianError(ValueError):
    pass


class FormAtPoint(NamedTuple):
    E: float
    F: float
    G: float

    @property
    def det(self):
        return self.E * self.G - self.F * self.F

    @property
    def trace(self):
        return self.E + self.G

    def scaled(self, lam) -> "FormAtPoint":
        return FormAtPoint(lam * self.E, lam * self.F, lam * self.G)

    def matrix(self) -> np.ndarray:
        """Coefficients as a (..., 2, 2) array."""
        E, F, G = np.broadcast_arrays(*map(np.asarray, self))
        return np.stack([np.stack([E, F], -1), np.stack([F, G], -1)], -2)


class Christoffel(NamedTuple):
    """Gamma^k_ij; field ``g<i><j><k>``, e.g. ``g122`` is Gamma^2_12."""

    g111: float
    g112: float
    g121: float
    g122: float
    g221: float
    g222: float


@dataclass(frozen=True)
class Rectangle:
    u0: float
    u1: float
    v0: float
    v1: float
    periodic_v: bool = False

    def distance_to_boundary(self, u, v):
        du = np.minimum(np.asarray(u) - self.u0, self.u1 - np.asarray(u))
        if self.periodic_v:
            return du
        dv = np.minimum(np.asarray(v) - self.v0, self.v1 - np.asarray(v))
        return np.minimum(du, dv)


@dataclass(frozen=True)
class Disk:
    radius: float
    center: tuple = (0.0, 0.0)

    def distance_to_boundary(self, u, v):
        r = np.hypot(np.asarray(u) - self.center[0], np.asarray(v) - self.center[1])
        return self.radius - r


def central_diff(f, x, h):
    """Five-point central difference of ``f`` at ``x`` (error O(h^4))."""
    # symmetric pairs first, so constants difference to exactly zero
    return (8 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12 * h)


@dataclass(frozen=True)
class QuadraticFormField:
    """Coefficients (E, F, G) as functions of (u, v).

    ``coeff(u, v)`` returns a triple; ``deriv(u, v)``, when given, returns
    ``((E_u, F_u, G_u), (E_v, F_v, G_v))``.
    """

    coeff: Callable
    deriv: Optional[Callable] = None
    domain: Optional[object] = None
    fd_step: float = COEFF_FD_STEP

    def __call__(self, u, v) -> FormAtPoint:
        return FormAtPoint(*self.coeff(u, v))

    def check_inside(self, u, v, margin):
        if self.domain is None:
            return
        if np.any(self.domain.distance_to_boundary(u, v) < margin):
            raise ValueError("evaluation point closer than the difference stencil to the domain boundary")

    def derivatives(self, u, v, step=None):
        """(dA/du, dA/dv) as two FormAtPoint triples."""
        if self.deriv is not None:
            du, dv = self.deriv(u, v)
            return FormAtPoint(*du), FormAtPoint(*dv)
        h = self.fd_step if step is None else step
        self.check_inside(u, v, 2 * h)
        du = central_diff(lambda x: np.stack(self.coeff(x, v)), u, h)
        dv = central_diff(lambda y: np.stack(self.coeff(u, y)), v, h)
        return FormAtPoint(*du), FormAtPoint(*dv)

    def scaled(self, lam: float) -> "QuadraticFormField":
        coeff = lambda u, v: tuple(lam * c for c in self.coeff(u, v))
        deriv = None
        if self.deriv is not None:
            def deriv(u, v):
                du, dv = self.deriv(u, v)
                return tuple(lam * c for c in du), tuple(lam * c for c in dv)
        return QuadraticFormField(coeff, deriv, self.domain, self.fd_step)


def _check_base(A: FormAtPoint, tol):
    det = A.det
    if np.any(np.abs(det) < tol):
        raise DegenerateFormError("degenerate base form")
    return det


def pair_mean_curvature(A: FormAtPoint, B: FormAtPoint, tol: float = DET_TOL):
    """H(A, B) = (E g - 2 F f + G e) / (2 (E G - F^2))."""
    det = _check_base(A, tol)
    E, F, G = A
    e, f, g = B
    return (E * g - 2 * F * f + G * e) / (2 * det)


def pair_extrinsic_curvature(A: FormAtPoint, B: FormAtPoint, tol: float = DET_TOL):
    """K(A, B) = (e g - f^2) / (E G - F^2)."""
    det = _check_base(A, tol)
    e, f, g = B
    return (e * g - f * f) / det


def is_riemannian(A: FormAtPoint, tol: float = 0.0):
    """Positive definiteness via trace and determinant."""
    return np.logical_and(A.trace > tol, A.det > tol * tol)


def christoffel_from_derivatives(A: FormAtPoint, dA_u: FormAtPoint, dA_v: FormAtPoint) -> Christoffel:
    """Levi-Civita symbols of A from its coefficients and their first derivatives."""
    E, F, G = A
    Eu, Fu, Gu = dA_u
    Ev, Fv, Gv = dA_v
    two_det = 2 * (E * G - F * F)
    return Christoffel(
        g111=(G * Eu - 2 * F * Fu + F * Ev) / two_det,
        g112=(2 * E * Fu - E * Ev - F * Eu) / two_det,
        g121=(G * Ev - F * Gu) / two_det,
        g122=(E * Gu - F * Ev) / two_det,
        g221=(2 * G * Fv - G * Gu - F * Gv) / two_det,
        g222=(E * Gv - 2 * F * Fv + F * Gu) / two_det,
    )


def christoffel_of(A: QuadraticFormField, u, v, fd_step=None) -> Christoffel:
    form = A(u, v)
    if not np.all(is_riemannian(form)):
        raise NotRiemannianError("form not positive definite")
    dA_u, dA_v = A.derivatives(u, v, fd_step)
    return christoffel_from_derivatives(form, dA_u, dA_v)


def codazzi_residual(A: QuadraticFormField, B: QuadraticFormField, u, v, fd_step=None):
    """Residuals (r1, r2) of the space-form Codazzi equations for the pair (A, B).

    r1 = e_v - f_u - [e G^1_12 + f (G^2_12 - G^1_11) - g G^2_11]
    r2 = f_v - g_u - [e G^1_22 + f (G^2_22 - G^1_12) - g G^2_12]
    """
    gam = christoffel_of(A, u, v, fd_step)
    e, f, g = B(u, v)
    (eu, fu, gu), (ev, fv, gv) = B.derivatives(u, v, fd_step)
    r1 = ev - fu - (e * gam.g121 + f * (gam.g122 - gam.g111) - g * gam.g112)
    r2 = fv - gu - (e * gam.g221 + f * (gam.g222 - gam.g121) - g * gam.g122)
    return r1, r2


def gaussian_curvature_fd(A: QuadraticFormField, u, v, fd_step: float = CURVATURE_FD_STEP):
    """Intrinsic curvature of A from its Christoffel symbols.

    (EG - F^2) K = E [(G^1_22)_u - (G^1_12)_v + G^1_22 G^1_11 + G^2_22 G^1_12
                      - (G^1_12)^2 - G^2_12 G^1_22]
                 + F [(G^2_22)_u - (G^2_12)_v + G^2_11 G^1_22 + G^2_22 G^2_12
                      - G^1_12 G^2_12 - G^2_12 G^2_22]

    Derivatives of the symbols are five-point central differences with step
    ``fd_step``; the symbols themselves use the field's exact derivatives
    when it has them.
    """
    form = A(u, v)
    if not np.all(is_riemannian(form)):
        raise NotRiemannianError("form not positive definite")
    A.check_inside(u, v, 2 * fd_step + (0 if A.deriv else 2 * A.fd_step))
    gam = christoffel_of(A, u, v)

    def sym(uu, vv):
        c = christoffel_of(A, uu, vv)
        return np.stack([c.g221, c.g121, c.g222, c.g122])

    d_u = central_diff(lambda x: sym(x, v), u, fd_step)
    d_v = central_diff(lambda y: sym(u, y), v, fd_step)
    g221_u, g222_u = d_u[0], d_u[2]
    g121_v, g122_v = d_v[1], d_v[3]

    E, F, G = form
    t1 = (g221_u - g121_v + gam.g221 * gam.g111 + gam.g222 * gam.g121
          - gam.g121 ** 2 - gam.g122 * gam.g221)
    t2 = (g222_u - g122_v + gam.g112 * gam.g221 + gam.g222 * gam.g122
          - gam.g121 * gam.g122 - gam.g122 * gam.g222)
    return (E * t1 + F * t2) / (E * G - F * F)


def conformal_model_metric(K: float, domain=None) -> QuadraticFormField:
    """(du^2 + dv^2) / d^2 with d = (1 + K (u^2 + v^2)) / 2; curvature K."""

    def coeff(u, v):
        d = 0.5 * (1 + K * (u * u + v * v))
        E = 1.0 / (d * d)
        return E, 0.0 * E, E

    def deriv(u, v):
        d = 0.5 * (1 + K * (u * u + v * v))
        Eu = -2 * K * u / d ** 3
        Ev = -2 * K * v / d ** 3
        z = 0.0 * Eu
        return (Eu, z, Eu), (Ev, z, Ev)

    if domain is None and K < 0:
        domain = Disk(1.0 / np.sqrt(-K))
    return QuadraticFormField(coeff, deriv, domain)
