"""Rotational constant-curvature surfaces in H2xR and S2xR.

A meridian alpha(u) = (X1(k(u)), X2(k(u)), 0, h(u)) parametrized by arc length
is rotated about the axis {(1,0,0)} x R, where (X1, X2) = (cosh, sinh) in H2xR
and (sin, cos) in S2xR. The induced metric is du^2 + X2(k(u))^2 dv^2, so
constant curvature K forces X2(k(u)) to solve f'' + K f = 0. Each family below
is one of the resulting closed-form solutions, together with the constraint on
K that keeps k'(u)^2 <= 1 on the whole (complete) domain.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from .ambient import AmbientSpace, H2R, S2R
from .forms_engine import ImmersionChart
from .quadratic_forms import Disk, QuadraticFormField, Rectangle

__all__ = [
    "ProfileError",
    "Family",
    "ProfileFamily",
    "ProfileCurve",
    "Status",
    "ClassificationVerdict",
    "profile",
    "default_family",
    "families_for",
    "immersion_from_profile",
    "conformal_chart",
    "induced_metric_coeffs",
    "completeness_bound_check",
    "classify",
    "conformal_radius_to_arclength",
]

POLE_COLLAR = 0.05
DEFAULT_HALF_RANGE = 2.0


class ProfileError(ValueError):
    pass


class Family(str, enum.Enum):
    H2R_SpherePositiveK = "H2R_SpherePositiveK"
    H2R_FlatCylinder = "H2R_FlatCylinder"
    H2R_FlatAxisGraph = "H2R_FlatAxisGraph"
    H2R_NegKAxis = "H2R_NegKAxis"
    H2R_NegKExponential = "H2R_NegKExponential"
    H2R_NegKCoshC = "H2R_NegKCoshC"
    S2R_SphereKGe1 = "S2R_SphereKGe1"
    S2R_FlatCylinder = "S2R_FlatCylinder"

    @property
    def space(self) -> AmbientSpace:
        return S2R if self.value.startswith("S2R") else H2R

    @property
    def is_sphere(self) -> bool:
        return self in (Family.H2R_SpherePositiveK, Family.S2R_SphereKGe1)

    @property
    def meets_axis(self) -> bool:
        """Whether the meridian starts on the rotation axis (at u = 0)."""
        return self in (Family.H2R_SpherePositiveK, Family.S2R_SphereKGe1,
                        Family.H2R_FlatAxisGraph, Family.H2R_NegKAxis)

    @classmethod
    def parse(cls, name) -> "Family":
        if isinstance(name, cls):
            return name
        for f in cls:
            if f.value.lower() == str(name).strip().lower():
                return f
        raise ValueError(f"unknown family {name!r}; expected one of {[f.value for f in cls]}")


def _admissible(tag: Family, K: float) -> bool:
    if tag is Family.H2R_SpherePositiveK:
        return K > 0
    if tag in (Family.H2R_FlatCylinder, Family.H2R_FlatAxisGraph, Family.S2R_FlatCylinder):
        return K == 0
    if tag in (Family.H2R_NegKAxis, Family.H2R_NegKExponential, Family.H2R_NegKCoshC):
        return -1 <= K < 0
    if tag is Family.S2R_SphereKGe1:
        return K >= 1
    return False


def families_for(space: AmbientSpace, K: float):
    """Every family constructible in ``space`` with curvature ``K``."""
    return [f for f in Family if f.space == space and _admissible(f, K)]


def default_family(space: AmbientSpace, K: float) -> Family:
    if space.epsilon == -1:
        if K > 0:
            return Family.H2R_SpherePositiveK
        if K == 0:
            return Family.H2R_FlatAxisGraph
        return Family.H2R_NegKAxis
    if K >= 1:
        return Family.S2R_SphereKGe1
    return Family.S2R_FlatCylinder


@dataclass(frozen=True)
class ProfileFamily:
    tag: Family
    K: float
    C: Optional[float] = None
    theta: float = 0.0  # metadata only; the shift is absorbed into u
    k0: Optional[float] = None  # cylinder radius parameter


@dataclass(frozen=True)
class ProfileCurve:
    """Closed-form meridian with exact derivatives up to second order."""

    family: ProfileFamily
    space: AmbientSpace
    k: Callable
    h: Callable
    dk: Callable
    dh: Callable
    ddk: Callable
    ddh: Callable
    domain: tuple  # (u_min, u_max), may be infinite
    h_by_quadrature: bool = False

    @property
    def tag(self) -> Family:
        return self.family.tag

    @property
    def K(self) -> float:
        return self.family.K

    def sample_range(self, collar: float = POLE_COLLAR, half_range: float = DEFAULT_HALF_RANGE):
        """Finite u-interval for grids, keeping ``collar`` away from axis points."""
        lo, hi = self.domain
        if math.isfinite(lo) and math.isfinite(hi):
            return lo + collar, hi - collar
        if math.isfinite(lo):
            return lo + collar, lo + half_range
        return -half_range, half_range

    def arclength_residual(self, u):
        return self.dk(u) ** 2 + self.dh(u) ** 2 - 1.0

    def X(self, k):
        """(X1, X2) and their first and second derivatives in k."""
        if self.space.epsilon == -1:
            c, s = np.cosh(k), np.sinh(k)
            return (c, s), (s, c), (c, s)
        c, s = np.cos(k), np.sin(k)
        return (s, c), (c, -s), (-s, -c)

    def warp(self, u):
        """X2(k(u)): sinh k in H2xR, cos k in S2xR; I = du^2 + warp^2 dv^2."""
        return self.X(self.k(u))[0][1]


def profile(space: AmbientSpace, K: float, family_hint=None, *, C: Optional[float] = None,
            theta: float = 0.0, k0: Optional[float] = None) -> ProfileCurve:
    """Closed-form meridian of the rotational surface of curvature ``K``.

    Raises :class:`ProfileError` when the requested family does not exist in
    ``space`` or ``K`` violates its completeness constraint.
    """
    K = float(K)
    tag = default_family(space, K) if family_hint is None else Family.parse(family_hint)
    if tag.space != space:
        raise ProfileError(f"family {tag.value} does not live in {space.name}")
    if not _admissible(tag, K):
        verdict = classify(space, K)
        raise ProfileError(
            f"no such profile (curvature bound violated): {tag.value} with K={K:g}; "
            f"classification: {verdict.status.value} ({verdict.detail})")
    builder = _BUILDERS[tag]
    return builder(space, K, C=C, theta=theta, k0=k0)


def _sphere_h2r(space, K, **_):
    a = math.sqrt(K)
    B = math.sqrt((1 + K) / K)
    r1k = math.sqrt(1 + K)

    def S(u):
        return np.sin(a * np.asarray(u, float))

    def Co(u):
        return np.cos(a * np.asarray(u, float))

    def D(u):
        return K + S(u) ** 2

    k = lambda u: np.arcsinh(S(u) / a)
    h = lambda u: -B * np.arctan(Co(u) / np.sqrt(D(u)))
    dk = lambda u: a * Co(u) / np.sqrt(D(u))
    dh = lambda u: r1k * S(u) / np.sqrt(D(u))
    ddk = lambda u: -K * (1 + K) * S(u) / D(u) ** 1.5
    ddh = lambda u: r1k * a * K * Co(u) / D(u) ** 1.5
    fam = ProfileFamily(Family.H2R_SpherePositiveK, K, C=1 / a)
    return ProfileCurve(fam, space, k, h, dk, dh, ddk, ddh, (0.0, math.pi / a))


def _cylinder(space, K, k0=None, **_):
    if k0 is None:
        k0 = 1.0 if space.epsilon == -1 else 0.0
    if space.epsilon == 1 and not (-math.pi / 2 < k0 < math.pi / 2):
        raise ProfileError("S2xR cylinder needs cos k0 > 0")
    if space.epsilon == -1 and k0 <= 0:
        raise ProfileError("H2xR cylinder needs k0 > 0 (off the axis)")
    z = lambda u: 0.0 * np.asarray(u, float)
    tag = Family.H2R_FlatCylinder if space.epsilon == -1 else Family.S2R_FlatCylinder
    return ProfileCurve(ProfileFamily(tag, 0.0, k0=k0), space,
                        lambda u: z(u) + k0, lambda u: np.asarray(u, float) + 0.0,
                        z, lambda u: z(u) + 1.0, z, z, (-math.inf, math.inf))


def _axis_graph(space, K, **_):
    def w(u):
        return 1 + np.asarray(u, float) ** 2

    return ProfileCurve(
        ProfileFamily(Family.H2R_FlatAxisGraph, 0.0), space,
        lambda u: np.arcsinh(u), lambda u: -1 + np.sqrt(w(u)),
        lambda u: 1 / np.sqrt(w(u)), lambda u: np.asarray(u, float) / np.sqrt(w(u)),
        lambda u: -np.asarray(u, float) / w(u) ** 1.5, lambda u: 1 / w(u) ** 1.5,
        (0.0, math.inf))


def _negk_axis(space, K, **_):
    a = math.sqrt(-K)
    b = 1 + K
    B = math.sqrt(b) / a

    def Sh(u):
        return np.sinh(a * np.asarray(u, float))

    def Ch(u):
        return np.cosh(a * np.asarray(u, float))

    def R(u):
        return np.sqrt(a * a + Sh(u) ** 2)

    k = lambda u: np.arcsinh(Sh(u) / a)
    h = lambda u: B * np.log((Ch(u) + R(u)) / (1 + a))
    dk = lambda u: a * Ch(u) / R(u)
    dh = lambda u: math.sqrt(b) * Sh(u) / R(u)
    ddk = lambda u: -a * a * b * Sh(u) / R(u) ** 3
    ddh = lambda u: math.sqrt(b) * a ** 3 * Ch(u) / R(u) ** 3
    fam = ProfileFamily(Family.H2R_NegKAxis, K, C=1 / a)
    return ProfileCurve(fam, space, k, h, dk, dh, ddk, ddh, (0.0, math.inf))


def _negk_exponential(space, K, **_):
    a = math.sqrt(-K)
    b = 1 + K

    def Ex(u):
        return np.exp(a * np.asarray(u, float))

    def prim(x):
        # antiderivative in x = exp(2 a u) of sqrt(1 + b x) / (x sqrt(1 + x))
        Q = (1 + b * x) * (1 + x)
        sq = np.sqrt(Q)
        out = -np.log((2 + (1 + b) * x + 2 * sq) / x)
        if b > 0:
            out = out + math.sqrt(b) * np.log(2 * math.sqrt(b) * sq + 2 * b * x + 1 + b)
        return out

    p1 = prim(1.0)
    k = lambda u: np.arcsinh(Ex(u))
    h = lambda u: (prim(Ex(u) ** 2) - p1) / (2 * a)
    dk = lambda u: a * Ex(u) / np.sqrt(1 + Ex(u) ** 2)
    dh = lambda u: np.sqrt((1 + b * Ex(u) ** 2) / (1 + Ex(u) ** 2))
    ddk = lambda u: a * a * Ex(u) / (1 + Ex(u) ** 2) ** 1.5
    ddh = lambda u: -dk(u) * ddk(u) / dh(u)
    return ProfileCurve(ProfileFamily(Family.H2R_NegKExponential, K), space,
                        k, h, dk, dh, ddk, ddh, (-math.inf, math.inf))


def _negk_cosh(space, K, C=None, theta=0.0, **_):
    C = 1.0 if C is None else float(C)
    if C <= 0:
        raise ProfileError("cosh family needs C > 0")
    a = math.sqrt(-K)
    b = 1 + K
    C2 = C * C

    def Sh(u):
        return np.sinh(a * np.asarray(u, float))

    def Ch(u):
        return np.cosh(a * np.asarray(u, float))

    def dh(u):
        return np.sqrt((1 + C2 + C2 * b * Sh(u) ** 2) / (1 + C2 * Ch(u) ** 2))

    def _h_scalar(x):
        val, _ = integrate.quad(lambda s: float(dh(s)), 0.0, float(x), epsabs=1e-13, epsrel=1e-12, limit=200)
        return val

    def _h_vec(u):
        # h' is even, so h is odd; integrate once per distinct |u|
        u = np.asarray(u, float)
        mags, inv = np.unique(np.abs(u), return_inverse=True)
        vals = np.array([_h_scalar(m) for m in mags])
        return np.sign(u) * vals[inv].reshape(u.shape)

    k = lambda u: np.arcsinh(C * Ch(u))
    dk = lambda u: C * a * Sh(u) / np.sqrt(1 + C2 * Ch(u) ** 2)
    ddk = lambda u: C * a * a * (1 + C2) * Ch(u) / (1 + C2 * Ch(u) ** 2) ** 1.5
    ddh = lambda u: -dk(u) * ddk(u) / dh(u)
    fam = ProfileFamily(Family.H2R_NegKCoshC, K, C=C, theta=theta)
    return ProfileCurve(fam, space, k, _h_vec, dk, dh, ddk, ddh, (-math.inf, math.inf), h_by_quadrature=True)


def _sphere_s2r(space, K, **_):
    a = math.sqrt(K)
    B = math.sqrt((K - 1) / K)
    rk1 = math.sqrt(K - 1)

    def S(u):
        return np.sin(a * np.asarray(u, float))

    def Co(u):
        return np.cos(a * np.asarray(u, float))

    def R(u):
        return np.sqrt(np.maximum(K - S(u) ** 2, 0.0))

    if K == 1:
        # the slab: k = pi/2 - u runs from the axis to the antipodal axis,
        # where the arccos branch below would fold back at the equator
        z = lambda u: 0.0 * np.asarray(u, float)
        fam = ProfileFamily(Family.S2R_SphereKGe1, K, C=1.0)
        return ProfileCurve(fam, space, lambda u: math.pi / 2 - np.asarray(u, float), z,
                            lambda u: z(u) - 1.0, z, z, z, (0.0, math.pi))
    k = lambda u: np.arccos(np.clip(S(u) / a, -1.0, 1.0))
    h = lambda u: -B * np.log((Co(u) + R(u)) / (1 + a))
    dk = lambda u: -a * Co(u) / R(u)
    dh = lambda u: rk1 * S(u) / R(u)
    ddk = lambda u: K * (K - 1) * S(u) / R(u) ** 3
    ddh = lambda u: rk1 * a * K * Co(u) / R(u) ** 3
    fam = ProfileFamily(Family.S2R_SphereKGe1, K, C=1 / a)
    return ProfileCurve(fam, space, k, h, dk, dh, ddk, ddh, (0.0, math.pi / a))


_BUILDERS = {
    Family.H2R_SpherePositiveK: _sphere_h2r,
    Family.H2R_FlatCylinder: _cylinder,
    Family.H2R_FlatAxisGraph: _axis_graph,
    Family.H2R_NegKAxis: _negk_axis,
    Family.H2R_NegKExponential: _negk_exponential,
    Family.H2R_NegKCoshC: _negk_cosh,
    Family.S2R_SphereKGe1: _sphere_s2r,
    Family.S2R_FlatCylinder: _cylinder,
}


def induced_metric_coeffs(p: ProfileCurve) -> QuadraticFormField:
    """I = du^2 + X2(k)^2 dv^2 with exact derivatives."""

    def coeff(u, v):
        w = p.warp(u) + 0.0 * np.asarray(v, float)
        return 1.0 + 0.0 * w, 0.0 * w, w * w

    def deriv(u, v):
        (X1, X2), (dX1, dX2), _ = p.X(p.k(u))
        Gu = 2 * X2 * dX2 * p.dk(u) + 0.0 * np.asarray(v, float)
        z = 0.0 * Gu
        return (z, z, Gu), (z, z, z)

    lo, hi = p.domain
    return QuadraticFormField(coeff, deriv, Rectangle(lo, hi, 0.0, 2 * math.pi, periodic_v=True))


def immersion_from_profile(space: AmbientSpace, p: ProfileCurve) -> ImmersionChart:
    """psi(u, v) = (X1(k), X2(k) cos v, X2(k) sin v, h)."""
    if p.space != space:
        raise ProfileError("profile and ambient space disagree")

    def psi(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        (X1, X2), _, _ = p.X(p.k(u))
        return np.stack([X1, X2 * np.cos(v), X2 * np.sin(v), p.h(u)], -1)

    def d1(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        (X1, X2), (dX1, dX2), _ = p.X(p.k(u))
        kp = p.dk(u)
        cv, sv = np.cos(v), np.sin(v)
        z = 0.0 * u
        pu = np.stack([dX1 * kp, dX2 * kp * cv, dX2 * kp * sv, p.dh(u) + z], -1)
        pv = np.stack([z, -X2 * sv, X2 * cv, z], -1)
        return pu, pv

    def d2(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        (X1, X2), (dX1, dX2), (ddX1, ddX2) = p.X(p.k(u))
        kp, kpp = p.dk(u), p.ddk(u)
        cv, sv = np.cos(v), np.sin(v)
        z = 0.0 * u
        r = ddX2 * kp * kp + dX2 * kpp
        puu = np.stack([ddX1 * kp * kp + dX1 * kpp, r * cv, r * sv, p.ddh(u) + z], -1)
        puv = np.stack([z, -dX2 * kp * sv, dX2 * kp * cv, z], -1)
        pvv = np.stack([z, -X2 * cv, -X2 * sv, z], -1)
        return puu, puv, pvv

    lo, hi = p.domain
    if p.tag.meets_axis:
        anchor = (lo + POLE_COLLAR, 0.0)
    else:
        anchor = (0.0, 0.0)
    chart = ImmersionChart(space, psi, d1, d2, Rectangle(lo, hi, 0.0, 2 * math.pi, periodic_v=True),
                           1, p.tag.value, p.K, anchor)
    return chart.oriented_at_anchor()


# -- conformal disk charts ---------------------------------------------------

def conformal_radius_to_arclength(K: float, rho):
    """Geodesic distance from the origin in the disk model (du^2+dv^2)/d^2."""
    rho = np.asarray(rho, float)
    if K > 0:
        a = math.sqrt(K)
        return (2 / a) * np.arctan(a * rho)
    if K < 0:
        a = math.sqrt(-K)
        return (2 / a) * np.arctanh(a * rho)
    return 2 * rho


def _radial_jet(F, F1, F2, x, y, tiny=1e-9):
    """Value and derivatives of F(sqrt(x^2+y^2)) from F, F', F'' in rho."""
    rho = np.hypot(x, y)
    safe = np.where(rho > tiny, rho, 1.0)
    ratio = np.where(rho > tiny, F1 / safe, F2)  # F'/rho -> F''(0)
    wx = np.where(rho > tiny, x * x / safe ** 2, 0.5)
    wy = np.where(rho > tiny, y * y / safe ** 2, 0.5)
    wxy = np.where(rho > tiny, x * y / safe ** 2, 0.0)
    diff = F2 - ratio
    return (F, ratio * x, ratio * y,
            ratio + diff * wx, diff * wxy, ratio + diff * wy)


def conformal_chart(space: AmbientSpace, p: ProfileCurve) -> ImmersionChart:
    """The rotational surface in conformal disk coordinates (x, y).

    With u = s(rho) the geodesic polar radius and v the polar angle, the
    induced metric becomes (dx^2 + dy^2) / d^2, d = (1 + K (x^2+y^2)) / 2.
    Only families whose meridian starts on the axis admit this chart.
    """
    if not p.tag.meets_axis:
        raise ProfileError(f"{p.tag.value} does not meet the axis; no conformal disk chart")
    K = p.K

    def radial_parts(x, y):
        rho = np.hypot(x, y)
        d = 0.5 * (1 + K * rho * rho)
        u = conformal_radius_to_arclength(K, rho)
        s1 = 1 / d
        s2 = -K * rho / (d * d)
        (X1, _), (dX1, _), (ddX1, _) = p.X(p.k(u))
        kp, kpp = p.dk(u), p.ddk(u)
        x1_u = dX1 * kp
        x1_uu = ddX1 * kp * kp + dX1 * kpp
        h_u, h_uu = p.dh(u), p.ddh(u)
        x1 = _radial_jet(X1, x1_u * s1, x1_uu * s1 * s1 + x1_u * s2, x, y)
        h = _radial_jet(p.h(u), h_u * s1, h_uu * s1 * s1 + h_u * s2, x, y)
        return x1, h

    def lin(x, y):
        # x * g(r), r = x^2 + y^2, g = 2 / (1 + K r)
        r = x * x + y * y
        q = 1 + K * r
        g, g1, g2 = 2 / q, -2 * K / q ** 2, 4 * K * K / q ** 3
        return (x * g, g + 2 * x * x * g1, 2 * x * y * g1,
                6 * x * g1 + 4 * x ** 3 * g2, 2 * y * g1 + 4 * x * x * y * g2,
                2 * x * g1 + 4 * x * y * y * g2)

    def parts(x, y):
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        x1, h = radial_parts(x, y)
        a = lin(x, y)
        b = lin(y, x)  # roles swapped: entries are (val, d_y, d_x, d_yy, d_yx, d_xx)
        x3 = (b[0], b[2], b[1], b[5], b[4], b[3])
        return x1, a, x3, h

    def psi(x, y):
        c = parts(x, y)
        return np.stack([c[0][0], c[1][0], c[2][0], c[3][0]], -1)

    def d1(x, y):
        c = parts(x, y)
        return (np.stack([ci[1] for ci in c], -1), np.stack([ci[2] for ci in c], -1))

    def d2(x, y):
        c = parts(x, y)
        return tuple(np.stack([ci[j] for ci in c], -1) for j in (3, 4, 5))

    domain = Disk(1 / math.sqrt(-K)) if K < 0 else None
    chart = ImmersionChart(space, psi, d1, d2, domain, 1, f"{p.tag.value}[conformal]", K, (0.0, 0.0))
    return chart.oriented_at_anchor()


# -- completeness and classification ----------------------------------------

def completeness_bound_check(space: AmbientSpace, family_tag, K: float) -> bool:
    """Whether sup |k'| <= 1 holds for the family at curvature ``K``.

    For the three negative families k' tends to sqrt(-K) as u -> infinity
    (and equals 1 at the axis), so sup |k'| = max(1, sqrt(-K)). In S2xR the
    sphere meridian has cos k = sin(sqrt(K) u) / sqrt(K), which stays in
    [-1, 1] (k real) only when sqrt(K) >= 1. The other families carry no
    constraint.
    """
    tag = Family.parse(family_tag)
    if tag.space != space:
        return False
    if tag in (Family.H2R_NegKAxis, Family.H2R_NegKExponential, Family.H2R_NegKCoshC):
        return K < 0 and math.sqrt(-K) <= 1.0
    if tag is Family.S2R_SphereKGe1:
        return K > 0 and 1 / math.sqrt(K) <= 1.0
    return True


class Status(str, enum.Enum):
    UniqueComplete = "UniqueComplete"
    CompleteNonUnique = "CompleteNonUnique"
    CylindersOnly = "CylindersOnly"
    NoCompleteSurface = "NoCompleteSurface"
    OpenProblem = "OpenProblem"


@dataclass(frozen=True)
class ClassificationVerdict:
    status: Status
    detail: str
    conditional_notes: tuple = field(default_factory=tuple)

    def summary(self) -> str:
        return f"{self.status.value} ({self.detail})"


LIEBMANN = "Liebmann-type uniqueness: the rotational sphere is the only complete surface"
HILBERT = "Hilbert-type non-existence: no complete immersion with K < -1"
FORM_A_UNDEFINED = "K equals epsilon: the auxiliary form A = I + dh^2/(epsilon K - 1) is undefined"


def classify(space: AmbientSpace, K: float) -> ClassificationVerdict:
    """Existence/uniqueness status of complete surfaces of constant curvature K."""
    K = float(K)
    if not math.isfinite(K):
        raise ValueError("K must be finite")
    eps = space.epsilon
    notes = []
    if K == eps:
        notes.append(FORM_A_UNDEFINED)
    if K < -1:
        return ClassificationVerdict(Status.NoCompleteSurface, HILBERT, tuple(notes))
    if eps == -1:
        if K > 0:
            return ClassificationVerdict(Status.UniqueComplete, LIEBMANN, tuple(notes))
        if K == 0:
            return ClassificationVerdict(
                Status.CompleteNonUnique,
                "flat: cylinders over complete curves and the rotational graph k = arcsinh u",
                tuple(notes))
        return ClassificationVerdict(
            Status.CompleteNonUnique,
            "-1 <= K < 0: rotational surface through the axis and infinitely many rotational surfaces off the axis",
            tuple(notes))
    if K > 1:
        return ClassificationVerdict(Status.UniqueComplete, LIEBMANN, tuple(notes))
    if K == 1:
        notes += [
            "slab S2 x {t} exists; rotational sphere exists; uniqueness unknown",
            "whether slabs are the only complete immersions with 0 < K <= 1 is not known",
        ]
        return ClassificationVerdict(Status.OpenProblem, "K = 1 in S2xR: existence known, uniqueness open",
                                     tuple(notes))
    if K > 0:
        notes.append("no complete immersion with |grad h|^2 < 1 - K(I) (II would be Lorentzian on a sphere)")
        return ClassificationVerdict(Status.OpenProblem, "0 < K < 1 in S2xR: existence open", tuple(notes))
    if K == 0:
        return ClassificationVerdict(
            Status.CylindersOnly,
            "flat: among rotational surfaces only the cylinders about the axis are complete",
            tuple(notes))
    notes.append(
        "no complete immersion with |grad h|^2 <= c0 < 1 + K(I) or |grad h|^2 >= c0 > 1 + K(I) for a constant c0")
    return ClassificationVerdict(Status.OpenProblem, "-1 <= K < 0 in S2xR: existence open", tuple(notes))
