"""The quadratic differential Q = (<psi_z, psi_z> + c h_z^2) dz^2.

Here z is a conformal parameter for the second fundamental form, which is
definite on surfaces with K - epsilon > 0. On a rotational chart II is
diagonal and depends on u only, so z = t + i v with dt = sqrt(e/g) du.
Q is then evaluated on a regular z-grid and tested for holomorphicity
(Cauchy-Riemann residual) and for vanishing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate

from .ambient import inner
from .codazzi_pair import c_of
from .forms_engine import ImmersionChart, fundamental_forms

__all__ = [
    "NotEllipticError",
    "ConformalIIChart",
    "QSample",
    "isothermal_for_II",
    "q_field",
    "cauchy_riemann_residual",
]

QUAD_TOL = 1e-10
BISECT_TOL = 1e-12


class NotEllipticError(ValueError):
    pass


@dataclass(frozen=True)
class ConformalIIChart:
    """u = reparam(t) makes II = factor(t) (dt^2 + dv^2) on the base chart."""

    base: ImmersionChart
    K: float
    u0: float
    t_of_u: Callable
    reparam: Callable
    factor: Callable
    du_dt: Callable
    t_range: tuple


class QSample(NamedTuple):
    z: np.ndarray
    Q: np.ndarray


def _II_diag(chart, u):
    _, II, _ = fundamental_forms(chart, u, 0.0 * np.asarray(u, float))
    return II


def isothermal_for_II(chart: ImmersionChart, K: float, collar: float = 0.05,
                      check_points: int = 41) -> ConformalIIChart:
    """Conformal parameter t(u) = integral from the equator of sqrt(e/g).

    ``chart`` must be rotational: II diagonal and independent of v. The base
    point is the midpoint of the chart's u-interval.
    """
    eps = chart.space.epsilon
    if not K - eps > 0:
        raise NotEllipticError("surface not elliptic type")
    dom = chart.domain
    lo, hi = dom.u0 + collar, dom.u1 - collar
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise NotEllipticError("surface not elliptic type (needs a compact meridian)")
    us = np.linspace(lo, hi, check_points)
    II = _II_diag(chart, us)
    if not (np.all(II.E > 0) and np.all(II.G > 0)):
        raise NotEllipticError("surface not elliptic type")
    if np.max(np.abs(II.F)) > 1e-9 * np.max(np.abs(II.E)):
        raise NotEllipticError("II has a cross term; chart is not rotational")

    u0 = 0.5 * (dom.u0 + dom.u1)

    def ratio(s):
        f = _II_diag(chart, s)
        return np.sqrt(f.E / f.G)

    def t_of_u(u):
        # t(u) = (u - u0) * int_0^1 ratio(u0 + s (u - u0)) ds, adaptive in s
        # and vectorized over all requested u at once
        u = np.asarray(u, float)
        flat = u.ravel()
        span = flat - u0
        val, _ = integrate.quad_vec(lambda s: ratio(u0 + s * span), 0.0, 1.0,
                                    epsabs=QUAD_TOL, epsrel=QUAD_TOL)
        out = (span * val).reshape(u.shape)
        return out[()] if out.ndim == 0 else out

    t_lo, t_hi = float(t_of_u(lo)), float(t_of_u(hi))

    def reparam(t):
        """Inverse of t_of_u: Newton steps kept inside a shrinking bracket."""
        t = np.asarray(t, float)
        flat = t.ravel()
        if np.any(flat < t_lo - 1e-12) or np.any(flat > t_hi + 1e-12):
            raise ValueError(f"t outside the conformal chart [{t_lo}, {t_hi}]")
        a = np.full(flat.shape, lo)
        b = np.full(flat.shape, hi)
        x = np.clip(u0 + flat / ratio(np.array([u0]))[0], lo, hi)
        for _ in range(100):
            r = t_of_u(x) - flat
            a = np.where(r < 0, x, a)
            b = np.where(r > 0, x, b)
            step = r / ratio(x)
            x_new = x - step
            outside = (x_new <= a) | (x_new >= b)
            x_new = np.where(outside, 0.5 * (a + b), x_new)
            done = np.max(np.abs(x_new - x)) < BISECT_TOL
            x = x_new
            if done:
                break
        else:
            raise RuntimeError("inverse reparametrization did not converge")
        out = x.reshape(t.shape)
        return out[()] if out.ndim == 0 else out

    def du_dt(u):
        f = _II_diag(chart, u)
        return np.sqrt(f.G / f.E)

    def factor(t):
        return _II_diag(chart, reparam(t)).G

    return ConformalIIChart(chart, float(K), u0, t_of_u, reparam, factor, du_dt, (t_lo, t_hi))


def q_field(cchart: ConformalIIChart, t, v) -> QSample:
    """Q(z) on the grid of ``t`` values and ``v`` values (z = t + i v)."""
    chart = cchart.base
    space = chart.space
    c = c_of(space, cchart.K)
    t = np.asarray(t, float)
    v = np.asarray(v, float)
    u = cchart.reparam(t)
    U, V = np.meshgrid(u, v, indexing="ij")
    T, _ = np.meshgrid(t, v, indexing="ij")
    pu, pv = chart.d1(U, V)
    pt = pu * cchart.du_dt(U)[..., None]
    pz = 0.5 * (pt - 1j * pv)
    hz = pz[..., 3]
    Q = inner(space, pz, pz) + c * hz * hz
    return QSample(T + 1j * V, Q)


def cauchy_riemann_residual(Q, dt: float, dv: float = None) -> float:
    """max |dQ/dz-bar| = max |(Q_t + i Q_v) / 2| over interior nodes.

    ``Q`` is indexed [t, v] on a regular grid; centered differences.
    """
    Q = np.asarray(Q)
    dv = dt if dv is None else dv
    if Q.ndim != 2 or Q.shape[0] < 3 or Q.shape[1] < 3:
        raise ValueError("grid too small for the Cauchy-Riemann stencil (need at least 3x3)")
    Qt = (Q[2:, 1:-1] - Q[:-2, 1:-1]) / (2 * dt)
    Qv = (Q[1:-1, 2:] - Q[1:-1, :-2]) / (2 * dv)
    return float(np.max(np.abs(0.5 * (Qt + 1j * Qv))))
