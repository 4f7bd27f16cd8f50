"""The auxiliary metric A = I + dh^2 / (epsilon K - 1) and the pair (A, II).

For a surface of constant curvature K != epsilon, (A, II) is a Codazzi pair
with constant extrinsic curvature K - epsilon whenever A is positive definite.
This module builds A with exact coefficient derivatives, evaluates that
identity and the Codazzi residuals, gives the closed-form Christoffel symbols
of A on conformal charts, and the closed-form intrinsic curvature of A as a
function of |grad h|^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ambient import AmbientSpace
from .forms_engine import ChartError, ImmersionChart, first_form_field, fundamental_forms, frame_at, second_form_field
from .quadratic_forms import (
    Christoffel,
    DegenerateFormError,
    FormAtPoint,
    NotRiemannianError,
    QuadraticFormField,
    is_riemannian,
    pair_extrinsic_curvature,
)

__all__ = [
    "FormAUndefined",
    "APair",
    "c_of",
    "build_A",
    "pair_curvature_residual",
    "a_degenerate_criterion",
    "classical_codazzi_defect",
    "christoffel_A_closed",
    "KA_formula",
    "hilbert_bound_check",
    "minorization_margin",
]

CONFORMAL_TOL = 1e-9


class FormAUndefined(ValueError):
    pass


def c_of(space: AmbientSpace, K: float) -> float:
    """c = 1 / (epsilon K - 1)."""
    denom = space.epsilon * K - 1
    if denom == 0:
        raise FormAUndefined("form A undefined (K equals epsilon)")
    return 1.0 / denom


@dataclass(frozen=True)
class APair:
    A: QuadraticFormField
    II: QuadraticFormField
    c: float
    K: float
    space: AmbientSpace


def build_A(chart: ImmersionChart, K: float, ii_fd_step: float = 1e-4) -> APair:
    """A = I + c dh (x) dh with exact derivatives taken from the chart."""
    space = chart.space
    c = c_of(space, K)
    I = first_form_field(chart)

    def coeff(u, v):
        E, F, G = I(u, v)
        pu, pv = chart.d1(u, v)
        hu, hv = pu[..., 3], pv[..., 3]
        return E + c * hu * hu, F + c * hu * hv, G + c * hv * hv

    def deriv(u, v):
        (Eu, Fu, Gu), (Ev, Fv, Gv) = I.derivatives(u, v)
        pu, pv = chart.d1(u, v)
        puu, puv, pvv = chart.d2(u, v)
        hu, hv = pu[..., 3], pv[..., 3]
        huu, huv, hvv = puu[..., 3], puv[..., 3], pvv[..., 3]
        return ((Eu + 2 * c * hu * huu, Fu + c * (huu * hv + hu * huv), Gu + 2 * c * hv * huv),
                (Ev + 2 * c * hu * huv, Fv + c * (huv * hv + hu * hvv), Gv + 2 * c * hv * hvv))

    A = QuadraticFormField(coeff, deriv, chart.domain)
    return APair(A, second_form_field(chart, ii_fd_step), c, float(K), space)


def pair_curvature_residual(pair: APair, chart: ImmersionChart, u, v, require_riemannian: bool = True):
    """K(A, II) - (K - epsilon).

    With ``require_riemannian=False`` the algebraic identity is evaluated
    wherever A is merely non-degenerate.
    """
    A = pair.A(u, v)
    if require_riemannian and not np.all(is_riemannian(A)):
        raise NotRiemannianError("form not positive definite")
    _, II, _ = fundamental_forms(chart, u, v)
    return pair_extrinsic_curvature(A, II) - (pair.K - pair.space.epsilon)


def a_degenerate_criterion(space: AmbientSpace, K: float, gradh_norm2):
    """Pointwise criterion for A to fail to be positive definite.

    epsilon = +1: 0 <= K <= 1 and |grad h|^2 >= 1 - K.
    epsilon = -1: -1 <= K <= 0 and |grad h|^2 >= 1 + K.
    """
    x = np.asarray(gradh_norm2, float)
    if space.epsilon == 1:
        return np.logical_and(0 <= K <= 1, x >= 1 - K)
    return np.logical_and(-1 <= K <= 0, x >= 1 + K)


def classical_codazzi_defect(chart: ImmersionChart, u, v):
    """What the space-form Codazzi residuals of (I, II) must equal in M^2 x R.

    The ambient curvature term gives
    r1 = epsilon nu (F h_u - E h_v),  r2 = epsilon nu (G h_u - F h_v);
    on a conformal chart E = G = 1/d^2, F = 0 these are -epsilon nu h_v / d^2
    and epsilon nu h_u / d^2.
    """
    eps = chart.space.epsilon
    fr = frame_at(chart, u, v)
    E, F, G = first_form_field(chart)(u, v)
    return (eps * fr.nu * (F * fr.hu - E * fr.hv), eps * fr.nu * (G * fr.hu - F * fr.hv))


def christoffel_A_closed(pair: APair, chart: ImmersionChart, u, v, tol: float = CONFORMAL_TOL) -> Christoffel:
    """Closed-form Christoffel symbols of A on a conformal chart.

    Gamma^k_ij = (II_ij c d^2 nu h_k) / (1 + c |grad h|^2) + (conformal part),
    where the conformal part is that of (du^2 + dv^2) / d^2, written through
    d_u / d and d_v / d (equal to K u / d and K v / d on the disk model).
    """
    I = first_form_field(chart)
    E, F, G = I(u, v)
    if np.any(np.abs(E - G) > tol * np.abs(E)) or np.any(np.abs(F) > tol * np.abs(E)):
        raise ChartError("chart not in conformal coordinates")
    if not np.all(is_riemannian(pair.A(u, v))):
        raise NotRiemannianError("form not positive definite")
    (Eu, _, _), (Ev, _, _) = I.derivatives(u, v)
    d2 = 1.0 / E
    a_u = -0.5 * Eu / E
    a_v = -0.5 * Ev / E
    fr = frame_at(chart, u, v)
    _, II, _ = fundamental_forms(chart, u, v)
    e, f, g = II
    c = pair.c
    w = c * d2 * fr.nu / (1 + c * fr.gradh_norm2)
    hu, hv = fr.hu, fr.hv
    return Christoffel(
        g111=e * w * hu - a_u,
        g112=e * w * hv + a_v,
        g121=f * w * hu - a_v,
        g122=f * w * hv - a_u,
        g221=g * w * hu + a_u,
        g222=g * w * hv - a_v,
    )


def KA_formula(space: AmbientSpace, K: float, gradh_norm2):
    """Intrinsic curvature of A: ((1+c) K - eps c (1-x)^2) / (1 + c x)^2, x = |grad h|^2."""
    c = c_of(space, K)
    x = np.asarray(gradh_norm2, float)
    den = 1 + c * x
    if np.any(np.abs(den) < 1e-12):
        raise DegenerateFormError("degenerate base form")
    return ((1 + c) * K - space.epsilon * c * (1 - x) ** 2) / den ** 2


def hilbert_bound_check(space: AmbientSpace, K: float, samples: int = 1001):
    """(min, max) of K(A) over |grad h|^2 in [0, 1] (uniform samples plus endpoints)."""
    x = np.linspace(0.0, 1.0, samples)
    vals = KA_formula(space, K, x)
    ends = KA_formula(space, K, np.array([0.0, 1.0]))
    allv = np.concatenate([vals, ends])
    return float(np.min(allv)), float(np.max(allv))


def minorization_margin(space: AmbientSpace, K: float, I: FormAtPoint, hu, hv):
    """Smallest eigenvalue of A - m I relative to I, with m = 1 + c (eps = 1) or 1 (eps = -1).

    Non-negative whenever |grad h| <= 1 and K < -1; this is the pointwise
    inequality that makes A dominate a complete metric.
    """
    c = c_of(space, K)
    m = 1 + c if space.epsilon == 1 else 1.0
    E, F, G = I
    M = FormAtPoint(E + c * hu * hu - m * E, F + c * hu * hv - m * F, G + c * hv * hv - m * G)
    # det(M - lam I) = 0
    a = I.det
    b = -(M.E * G + M.G * E - 2 * M.F * F)
    cc = M.det
    disc = np.sqrt(np.maximum(b * b - 4 * a * cc, 0.0))
    return (-b - disc) / (2 * a)
