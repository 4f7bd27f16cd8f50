"""Geometric fields of an immersion chart into M^2(epsilon) x R.

Given a chart psi(u, v) in R^4 with exact first and second derivatives, this
module computes the unit normal N, the product normal eta = (x1, x2, x3, 0),
the angle function nu (fourth coordinate of N), the intrinsic gradient of the
height h = x4, and the forms I, II and II_eta. It also evaluates the Gauss
decomposition and the moving-frame structure equations as residuals.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from .ambient import AmbientSpace, inner
from .quadratic_forms import (
    FormAtPoint,
    QuadraticFormField,
    central_diff,
    gaussian_curvature_fd,
    pair_extrinsic_curvature,
)

__all__ = [
    "ChartError",
    "ImmersionChart",
    "PointFrame",
    "frame_at",
    "fundamental_forms",
    "second_form_by_normal_derivative",
    "first_form_field",
    "second_form_field",
    "gauss_split_residual",
    "structure_equation_residual",
    "second_form_signature",
    "slab_chart",
    "vertical_cylinder_chart",
    "scaled_height",
]

RANK_TOL = 1e-12
CONFORMAL_TOL = 1e-9
NORMAL_FD_STEP = 1e-5


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class ImmersionChart:
    """psi: (u, v) -> R^4 with exact derivatives.

    ``d1(u, v)`` returns (psi_u, psi_v); ``d2(u, v)`` returns
    (psi_uu, psi_uv, psi_vv). Arrays carry the R^4 index last.
    ``orientation`` multiplies the raw normal (see :func:`frame_at`).
    """

    space: AmbientSpace
    psi: Callable
    d1: Callable
    d2: Callable
    domain: object = None
    orientation: int = 1
    name: str = "chart"
    K: Optional[float] = None
    anchor: Optional[tuple] = None

    def with_orientation(self, sign: int) -> "ImmersionChart":
        return dataclasses.replace(self, orientation=int(np.sign(sign)) or 1)

    def oriented_at_anchor(self) -> "ImmersionChart":
        """Flip the normal, if needed, so that nu >= 0 at the anchor point."""
        if self.anchor is None:
            return self
        nu = frame_at(self.with_orientation(1), *self.anchor).nu
        return self.with_orientation(1 if nu >= 0 else -1)


class PointFrame(NamedTuple):
    N: np.ndarray
    eta: np.ndarray
    nu: np.ndarray
    gradh: np.ndarray  # components (h^u, h^v) in the chart basis
    gradh_norm2: np.ndarray
    hu: np.ndarray
    hv: np.ndarray


def _generalized_cross(space: AmbientSpace, a, b, c):
    """Vector n with <n, a> = <n, b> = <n, c> = 0 for the epsilon-inner product.

    The Euclidean 4D cross product m (cofactor expansion) is Euclidean-orthogonal
    to a, b, c; n = S m with S the signature matrix then satisfies <n, w> = m.w.
    """
    M = np.stack(np.broadcast_arrays(a, b, c), axis=-2)  # (..., 3, 4)
    m = np.empty(M.shape[:-2] + (4,), dtype=M.dtype)
    cols = [0, 1, 2, 3]
    for i in range(4):
        minor = M[..., [j for j in cols if j != i]]
        m[..., i] = (-1) ** i * np.linalg.det(minor)
    return space.signature * m


def _first_form(space, pu, pv):
    return FormAtPoint(inner(space, pu, pu), inner(space, pu, pv), inner(space, pv, pv))


def frame_at(chart: ImmersionChart, u, v) -> PointFrame:
    space = chart.space
    p = np.asarray(chart.psi(u, v), dtype=float)
    pu, pv = chart.d1(u, v)
    I = _first_form(space, pu, pv)
    if np.any(I.det <= RANK_TOL * np.maximum(1.0, I.trace) ** 2):
        raise ChartError("degenerate chart point")
    eta = p.copy()
    eta[..., 3] = 0.0
    n = _generalized_cross(space, pu, pv, eta)
    n = n / np.sqrt(inner(space, n, n))[..., None]
    N = chart.orientation * n
    nu = N[..., 3]
    hu, hv = pu[..., 3], pv[..., 3]
    E, F, G = I
    det = I.det
    gu = (G * hu - F * hv) / det
    gv = (E * hv - F * hu) / det
    gradh_norm2 = hu * gu + hv * gv
    return PointFrame(N, eta, nu, np.stack([gu, gv], -1), gradh_norm2, hu, hv)


def fundamental_forms(chart: ImmersionChart, u, v):
    """(I, II, II_eta) at (u, v).

    II = <N, psi_ij>, which equals <-dN, dpsi> because N is orthogonal to the
    tangent plane. II_eta = -I + dh^2.
    """
    space = chart.space
    fr = frame_at(chart, u, v)
    pu, pv = chart.d1(u, v)
    puu, puv, pvv = chart.d2(u, v)
    I = _first_form(space, pu, pv)
    II = FormAtPoint(inner(space, fr.N, puu), inner(space, fr.N, puv), inner(space, fr.N, pvv))
    hu, hv = fr.hu, fr.hv
    II_eta = FormAtPoint(-I.E + hu * hu, -I.F + hu * hv, -I.G + hv * hv)
    return I, II, II_eta


def normal_derivatives(chart: ImmersionChart, u, v, step: float = NORMAL_FD_STEP):
    Nu = central_diff(lambda x: frame_at(chart, x, v).N, u, step)
    Nv = central_diff(lambda y: frame_at(chart, u, y).N, v, step)
    return Nu, Nv


def second_form_by_normal_derivative(chart: ImmersionChart, u, v, step: float = NORMAL_FD_STEP) -> FormAtPoint:
    """II = <-dN, dpsi> with dN by finite differences (cross-check path)."""
    space = chart.space
    pu, pv = chart.d1(u, v)
    Nu, Nv = normal_derivatives(chart, u, v, step)
    f = -0.5 * (inner(space, Nu, pv) + inner(space, Nv, pu))
    return FormAtPoint(-inner(space, Nu, pu), f, -inner(space, Nv, pv))


def first_form_field(chart: ImmersionChart) -> QuadraticFormField:
    """I as a field with exact coefficient derivatives from psi's second derivatives."""
    sp = chart.space

    def coeff(u, v):
        pu, pv = chart.d1(u, v)
        return tuple(_first_form(sp, pu, pv))

    def deriv(u, v):
        pu, pv = chart.d1(u, v)
        puu, puv, pvv = chart.d2(u, v)
        Eu = 2 * inner(sp, pu, puu)
        Ev = 2 * inner(sp, pu, puv)
        Fu = inner(sp, puu, pv) + inner(sp, pu, puv)
        Fv = inner(sp, puv, pv) + inner(sp, pu, pvv)
        Gu = 2 * inner(sp, pv, puv)
        Gv = 2 * inner(sp, pv, pvv)
        return (Eu, Fu, Gu), (Ev, Fv, Gv)

    return QuadraticFormField(coeff, deriv, chart.domain)


def second_form_field(chart: ImmersionChart, fd_step: float = 1e-4) -> QuadraticFormField:
    """II as a field; coefficient derivatives by five-point differences."""
    return QuadraticFormField(lambda u, v: tuple(fundamental_forms(chart, u, v)[1]),
                              None, chart.domain, fd_step)


def gauss_split_residual(chart: ImmersionChart, u, v, fd_step: float = 1e-4):
    """K_fd(I) - K(I, II) - epsilon (1 - |grad h|^2).

    The intrinsic term comes from finite-difference curvature of I, so this
    compares three independently computed quantities.
    """
    I, II, _ = fundamental_forms(chart, u, v)
    fr = frame_at(chart, u, v)
    K_fd = gaussian_curvature_fd(first_form_field(chart), u, v, fd_step)
    return K_fd - pair_extrinsic_curvature(I, II) - chart.space.epsilon * (1 - fr.gradh_norm2)


def structure_equation_residual(chart: ImmersionChart, u, v, step: float = NORMAL_FD_STEP,
                                tol: float = CONFORMAL_TOL):
    """Largest R^4 norm among the seven moving-frame equations.

    Valid for conformal charts, I = (du^2 + dv^2) / d^2. The conformal factor
    d is read off the chart (d = E^-1/2), so the terms K u / d and K v / d of
    the constant-curvature disk model appear here as d_u / d and d_v / d.
    Derivatives of N are finite differences; eta_u = psi_u - h_u e4 exactly.
    """
    space = chart.space
    eps = space.epsilon
    I = first_form_field(chart)
    E, F, G = I(u, v)
    if np.any(np.abs(E - G) > tol * np.abs(E)) or np.any(np.abs(F) > tol * np.abs(E)):
        raise ChartError("chart not in conformal coordinates")
    (Eu, _, _), (Ev, _, _) = I.derivatives(u, v)
    d = 1.0 / np.sqrt(E)
    a_u = -0.5 * Eu / E  # d_u / d
    a_v = -0.5 * Ev / E
    d2 = d * d

    fr = frame_at(chart, u, v)
    _, II, _ = fundamental_forms(chart, u, v)
    e, f, g = II
    N, eta, nu, hu, hv = fr.N, fr.eta, fr.nu, fr.hu, fr.hv
    pu, pv = chart.d1(u, v)
    puu, puv, pvv = chart.d2(u, v)
    Nu, Nv = normal_derivatives(chart, u, v, step)
    e4 = np.array([0.0, 0.0, 0.0, 1.0])
    eta_u = pu - hu[..., None] * e4
    eta_v = pv - hv[..., None] * e4

    def c(x):
        return np.asarray(x)[..., None]

    rows = [
        puu - (c(-a_u) * pu + c(a_v) * pv + c(e) * N + c(eps * (hu * hu - 1 / d2)) * eta),
        puv - (c(-a_v) * pu + c(-a_u) * pv + c(f) * N + c(eps * hu * hv) * eta),
        pvv - (c(a_u) * pu + c(-a_v) * pv + c(g) * N + c(eps * (hv * hv - 1 / d2)) * eta),
        -Nu - (c(e * d2) * pu + c(f * d2) * pv - c(eps * nu * hu) * eta),
        -Nv - (c(f * d2) * pu + c(g * d2) * pv - c(eps * nu * hv) * eta),
        -eta_u - (c(hu * hu * d2 - 1) * pu + c(hu * hv * d2) * pv + c(nu * hu) * N),
        -eta_v - (c(hu * hv * d2) * pu + c(hv * hv * d2 - 1) * pv + c(nu * hv) * N),
    ]
    return np.max(np.stack([np.linalg.norm(r, axis=-1) for r in rows]), axis=0)


def second_form_signature(chart: ImmersionChart, u, v, tol: float = 1e-10) -> str:
    _, II, _ = fundamental_forms(chart, u, v)
    det = float(II.det)
    if abs(det) <= tol:
        return "degenerate"
    return "definite" if det > 0 else "lorentzian"


# -- simple reference charts -------------------------------------------------

def slab_chart(space: AmbientSpace, height: float = 0.0) -> ImmersionChart:
    """M^2(epsilon) x {height} in conformal coordinates.

    Inverse stereographic projection (epsilon = +1) or the Poincare disk
    (epsilon = -1): I = (du^2 + dv^2) / d^2, d = (1 + epsilon (u^2 + v^2)) / 2.
    """
    eps = space.epsilon

    def psi(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        r = u * u + v * v
        q = 1 + eps * r
        return np.stack([(1 - eps * r) / q, 2 * u / q, 2 * v / q, height + 0 * u], -1)

    def d1(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        r = u * u + v * v
        q = 1 + eps * r
        q2 = q * q
        z = 0 * u
        # d/du of (1 - eps r)/q = -4 eps u / q^2
        pu = np.stack([-4 * eps * u / q2, 2 / q - 4 * eps * u * u / q2, -4 * eps * u * v / q2, z], -1)
        pv = np.stack([-4 * eps * v / q2, -4 * eps * u * v / q2, 2 / q - 4 * eps * v * v / q2, z], -1)
        return pu, pv

    def d2(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        r = u * u + v * v
        q = 1 + eps * r
        q2, q3 = q * q, q ** 3
        z = 0 * u
        # x1 = -1 + 2/q ; x2 = 2u/q ; x3 = 2v/q
        x1_uu = -4 * eps / q2 + 16 * u * u / q3
        x1_uv = 16 * u * v / q3
        x1_vv = -4 * eps / q2 + 16 * v * v / q3
        x2_uu = -12 * eps * u / q2 + 16 * u ** 3 / q3
        x2_uv = -4 * eps * v / q2 + 16 * u * u * v / q3
        x2_vv = -4 * eps * u / q2 + 16 * u * v * v / q3
        x3_uu = -4 * eps * v / q2 + 16 * u * u * v / q3
        x3_uv = -4 * eps * u / q2 + 16 * u * v * v / q3
        x3_vv = -12 * eps * v / q2 + 16 * v ** 3 / q3
        return (np.stack([x1_uu, x2_uu, x3_uu, z], -1),
                np.stack([x1_uv, x2_uv, x3_uv, z], -1),
                np.stack([x1_vv, x2_vv, x3_vv, z], -1))

    from .quadratic_forms import Disk
    domain = Disk(1.0) if eps == -1 else None
    return ImmersionChart(space, psi, d1, d2, domain, 1, f"slab({space.name})", float(eps), (0.0, 0.0)).oriented_at_anchor()


def vertical_cylinder_chart(space: AmbientSpace, k0: float = 0.0) -> ImmersionChart:
    """Flat cylinder over a circle about the axis, parametrized by (height, angle)."""
    from .revolution import Family, profile, immersion_from_profile

    fam = Family.S2R_FlatCylinder if space.epsilon == 1 else Family.H2R_FlatCylinder
    return immersion_from_profile(space, profile(space, 0.0, fam, k0=k0))


def scaled_height(chart: ImmersionChart, factor: float) -> ImmersionChart:
    """Same chart with the height coordinate multiplied by ``factor``."""
    s = np.array([1.0, 1.0, 1.0, factor])

    def psi(u, v):
        return chart.psi(u, v) * s

    def d1(u, v):
        return tuple(x * s for x in chart.d1(u, v))

    def d2(u, v):
        return tuple(x * s for x in chart.d2(u, v))

    return dataclasses.replace(chart, psi=psi, d1=d1, d2=d2, name=f"{chart.name}*h{factor:g}", K=None)
