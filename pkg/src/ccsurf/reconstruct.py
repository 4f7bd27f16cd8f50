"""Rebuilding the height of an elliptic-type surface from its 1-jet at a point.

On the conformal disk chart I = (du^2 + dv^2) / d^2, d = (1 + K (u^2+v^2)) / 2,
a surface with II = lambda A (lambda = sqrt(K - epsilon)) has its height
governed by a closed Pfaffian system: nu is a function of h alone (the
nu-law) and the Hessian of h is an explicit function of (u, v, h, h_u, h_v).
Integrating that system along paths from the origin with h = h_u = h_v = 0
recovers the height of the rotational sphere; this module does so with a
fixed-step classical Runge-Kutta scheme, vectorized over batches of paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .ambient import AmbientSpace
from .codazzi_pair import c_of
from .forms_engine import ImmersionChart
from .revolution import conformal_chart, conformal_radius_to_arclength, profile

__all__ = [
    "ReconstructionError",
    "BranchError",
    "AdmissibilityError",
    "NuLaw",
    "JetState",
    "nu_law",
    "nu_of_h",
    "hessian_of_jet",
    "integrate_jet",
    "integrate_paths",
    "DiskReconstruction",
    "reconstruct_disk",
    "sphere_height_oracle",
    "random_path_pairs",
    "path_independence",
    "convergence_order",
]

BRANCH_GUARD = 1e-6
ADMISSIBLE_TOL = 1e-4


class ReconstructionError(ValueError):
    """Integration stopped; ``reached_radius`` is set by :func:`reconstruct_disk`."""

    reached_radius: Optional[float] = None
    partial: Optional["DiskReconstruction"] = None


class BranchError(ReconstructionError):
    pass


class AdmissibilityError(ReconstructionError):
    pass


@dataclass(frozen=True)
class NuLaw:
    """nu(h) = sqrt(K) tan(-alpha h + const) (eps = -1) or sqrt(K) tanh(...) (eps = 1)."""

    space: AmbientSpace
    K: float
    alpha: float
    const: float

    @property
    def lam(self) -> float:
        return math.sqrt(self.K - self.space.epsilon)

    def argument(self, h):
        return -self.alpha * np.asarray(h, float) + self.const


class JetState(NamedTuple):
    h: float
    p: float
    q: float


def nu_law(space: AmbientSpace, K: float) -> NuLaw:
    """The law with nu = 1 at h = 0 (the lowest point of the sphere)."""
    K = float(K)
    if space.epsilon == 1:
        if not K > 1:
            raise ValueError("nu-law in S2xR requires K > 1")
        const = math.atanh(1 / math.sqrt(K))
    else:
        if not K > 0:
            raise ValueError("nu-law in H2xR requires K > 0")
        const = math.atan(1 / math.sqrt(K))
    alpha = math.sqrt(K / (K - space.epsilon))
    return NuLaw(space, K, alpha, const)


def nu_of_h(law: NuLaw, h):
    arg = law.argument(h)
    if law.space.epsilon == 1:
        return math.sqrt(law.K) * np.tanh(arg)
    if np.any(np.abs(arg) >= math.pi / 2 - BRANCH_GUARD):
        raise BranchError("ν-law out of branch")
    return math.sqrt(law.K) * np.tan(arg)


def _d(K, u, v):
    return 0.5 * (1 + K * (u * u + v * v))


def hessian_of_jet(space: AmbientSpace, K: float, u, v, s: JetState, law: Optional[NuLaw] = None):
    """(h_uu, h_uv, h_vv) from the position and the 1-jet (broadcasts)."""
    law = nu_law(space, K) if law is None else law
    h, p, q = (np.asarray(x, float) for x in s)
    c = c_of(space, K)
    lam = law.lam
    d = _d(K, u, v)
    nu = nu_of_h(law, h)
    au, av = K * u / d, K * v / d
    hu_u = -au * p + av * q + lam * (1 / d ** 2 + c * p * p) * nu
    h_uv = -av * p - au * q + c * lam * p * q * nu
    h_vv = au * p - av * q + lam * (1 / d ** 2 + c * q * q) * nu
    return hu_u, h_uv, h_vv


def _rhs(space, K, law, P, w, y):
    """d(h, p, q)/dtau along the direction w from the point P."""
    u, v = P[:, 0], P[:, 1]
    huu, huv, hvv = hessian_of_jet(space, K, u, v, JetState(y[:, 0], y[:, 1], y[:, 2]), law)
    wu, wv = w[:, 0], w[:, 1]
    return np.stack([y[:, 1] * wu + y[:, 2] * wv, huu * wu + huv * wv, huv * wu + hvv * wv], -1)


def _check_admissible(K, P, y):
    d = _d(K, P[:, 0], P[:, 1])
    g = d * d * (y[:, 1] ** 2 + y[:, 2] ** 2)
    if np.any(g > 1 + ADMISSIBLE_TOL) or not np.all(np.isfinite(y)):
        raise AdmissibilityError("jet left admissible region")


def _segment(space, K, law, P0, P1, y, step, record=None):
    """Integrate a batch along the straight segments P0 -> P1 (RK4, fixed step).

    Each member takes steps of length ``step`` and one shortened final step.
    When ``record`` is a list, the state after every step is appended.
    """
    delta = P1 - P0
    L = np.hypot(delta[:, 0], delta[:, 1])
    w = np.where(L[:, None] > 0, delta / np.where(L > 0, L, 1.0)[:, None], 0.0)
    tau = np.zeros_like(L)
    while np.any(tau < L):
        dt = np.minimum(step, L - tau)
        # snap tiny leftovers (rounding of tau) onto the endpoint
        dt = np.where(L - tau - dt < 1e-14 * np.maximum(L, 1.0), L - tau, dt)
        P = P0 + tau[:, None] * w
        Ph = P + 0.5 * dt[:, None] * w
        Pe = P + dt[:, None] * w
        k1 = _rhs(space, K, law, P, w, y)
        k2 = _rhs(space, K, law, Ph, w, y + 0.5 * dt[:, None] * k1)
        k3 = _rhs(space, K, law, Ph, w, y + 0.5 * dt[:, None] * k2)
        k4 = _rhs(space, K, law, Pe, w, y + dt[:, None] * k3)
        y = y + dt[:, None] / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        tau = np.where(dt > 0, np.minimum(tau + dt, L), tau)
        tau = np.where(L - tau < 1e-14 * np.maximum(L, 1.0), L, tau)
        _check_admissible(K, P0 + tau[:, None] * w, y)
        if record is not None:
            record.append(y.copy())
    return y


def integrate_paths(space: AmbientSpace, K: float, paths, init, step: float, law: Optional[NuLaw] = None):
    """Jets at the ends of a batch of polylines with the same number of vertices.

    ``paths`` has shape (B, m, 2); ``init`` has shape (B, 3) or (3,).
    """
    if step <= 0:
        raise ValueError("step must be positive")
    law = nu_law(space, K) if law is None else law
    paths = np.asarray(paths, float)
    B = paths.shape[0]
    y = np.broadcast_to(np.asarray(init, float), (B, 3)).copy()
    nu_of_h(law, y[:, 0])
    for j in range(paths.shape[1] - 1):
        y = _segment(space, K, law, paths[:, j], paths[:, j + 1], y, step)
    return y


def integrate_jet(space: AmbientSpace, K: float, path, init: JetState, step: float,
                  law: Optional[NuLaw] = None) -> JetState:
    """Jet at the end of one polyline ``path`` (shape (m, 2)) starting from ``init``."""
    path = np.atleast_2d(np.asarray(path, float))
    y = integrate_paths(space, K, path[None], np.asarray(init, float), step, law)
    return JetState(*(float(x) for x in y[0]))


def sphere_height_oracle(space: AmbientSpace, K: float, rho):
    """Height of the rotational sphere at conformal radius ``rho``, zero at the pole."""
    p = profile(space, K)
    s = conformal_radius_to_arclength(K, rho)
    return p.h(s) - p.h(0.0)


@dataclass(frozen=True)
class DiskReconstruction:
    """Jets on a polar grid: index [ray, radial node]."""

    space: AmbientSpace
    K: float
    step: float
    rho: np.ndarray
    theta: np.ndarray
    h: np.ndarray
    p: np.ndarray
    q: np.ndarray
    chart: Optional[ImmersionChart]

    @property
    def reached_radius(self) -> float:
        return float(self.rho[-1])

    def uv(self):
        R, T = np.meshgrid(self.rho, self.theta)
        return R * np.cos(T), R * np.sin(T)

    def oracle_error(self) -> float:
        return float(np.max(np.abs(self.h - sphere_height_oracle(self.space, self.K, self.rho)[None, :])))

    def symmetry_error(self) -> float:
        """max |h(u, v) - h(rho, 0)| over the grid (rotational symmetry)."""
        return float(np.max(np.abs(self.h - self.h[0][None, :])))

    def parity_error(self) -> float:
        """Evenness in u and in v: compare rays theta, pi - theta and -theta."""
        n = len(self.theta)
        idx = np.arange(n)
        refl_u = (n // 2 - idx) % n  # theta -> pi - theta
        refl_v = (-idx) % n  # theta -> -theta
        return float(max(np.max(np.abs(self.h - self.h[refl_u])), np.max(np.abs(self.h - self.h[refl_v]))))

    def nu_consistency(self) -> float:
        """max |nu^2 + d^2 (p^2 + q^2) - 1| along the rays."""
        law = nu_law(self.space, self.K)
        u, v = self.uv()
        d = _d(self.K, u, v)
        return float(np.max(np.abs(nu_of_h(law, self.h) ** 2 + d * d * (self.p ** 2 + self.q ** 2) - 1)))

    def equator_radius(self) -> Optional[float]:
        """First radius where nu changes sign on ray 0 (None if it stays positive)."""
        nu = nu_of_h(nu_law(self.space, self.K), self.h[0])
        hit = np.nonzero(nu <= 0)[0]
        return float(self.rho[hit[0]]) if hit.size else None


def reconstruct_disk(space: AmbientSpace, K: float, radius: float, step: float,
                     n_rays: int = 16) -> DiskReconstruction:
    """Integrate along ``n_rays`` rays from the origin up to ``radius``.

    ``n_rays`` must be a multiple of 4 so the grid is symmetric under both
    coordinate reflections. On failure the raised error carries the radius
    reached and the partial reconstruction.
    """
    K = float(K)
    if not K - space.epsilon > 0:
        raise ValueError("reconstruction requires K - epsilon > 0")
    law = nu_law(space, K)  # also rejects -1 < K <= 0 in H2xR, where no sphere exists
    if n_rays % 4:
        raise ValueError("n_rays must be a multiple of 4")
    if radius <= 0 or step <= 0:
        raise ValueError("radius and step must be positive")
    theta = 2 * math.pi * np.arange(n_rays) / n_rays
    n_full = int(math.floor(radius / step + 1e-9))
    rho = [i * step for i in range(n_full + 1)]
    if radius - rho[-1] > 1e-12:
        rho.append(radius)
    rho = np.array(rho)
    dirs = np.stack([np.cos(theta), np.sin(theta)], -1)
    y = np.zeros((n_rays, 3))
    states = [y.copy()]
    chart = conformal_chart(space, profile(space, K))
    err = None
    for i in range(1, len(rho)):
        try:
            y = _segment(space, K, law, rho[i - 1] * dirs, rho[i] * dirs, y, step)
        except ReconstructionError as exc:
            err = exc
            break
        states.append(y)
    S = np.stack(states, 1)
    result = DiskReconstruction(space, K, step, rho[:S.shape[1]], theta, S[..., 0], S[..., 1], S[..., 2], chart)
    if err is not None:
        err.reached_radius = result.reached_radius
        err.partial = result
        raise err
    return result


def random_path_pairs(n_pairs: int, radius: float, n_mid: int = 2, seed: int = 0):
    """Pairs of polylines from the origin to a common random endpoint.

    All vertices lie in the disk of ``radius`` (which is convex, so the whole
    polylines do). Returns two arrays of shape (n_pairs, n_mid + 2, 2).
    """
    rng = np.random.default_rng(seed)

    def pts(n):
        r = radius * np.sqrt(rng.uniform(0, 1, n))
        t = rng.uniform(0, 2 * math.pi, n)
        return np.stack([r * np.cos(t), r * np.sin(t)], -1)

    end = pts(n_pairs)
    origin = np.zeros((n_pairs, 2))
    a = np.stack([origin] + [pts(n_pairs) for _ in range(n_mid)] + [end], 1)
    b = np.stack([origin] + [pts(n_pairs) for _ in range(n_mid)] + [end], 1)
    return a, b


def path_independence(space: AmbientSpace, K: float, n_pairs: int = 100, radius: float = 0.4,
                      step: float = 1e-3, seed: int = 0) -> float:
    """max |h_a - h_b| over random path pairs with common endpoints."""
    a, b = random_path_pairs(n_pairs, radius, seed=seed)
    ya = integrate_paths(space, K, a, np.zeros(3), step)
    yb = integrate_paths(space, K, b, np.zeros(3), step)
    return float(np.max(np.abs(ya[:, 0] - yb[:, 0])))


def convergence_order(space: AmbientSpace, K: float, radius: float, steps=(4e-3, 2e-3, 1e-3)):
    """Oracle errors at the end of the ray (radius, 0) and the observed orders.

    Returns (errors, orders) where orders[i] = log2(err[i] / err[i + 1])
    scaled by the step ratio.
    """
    target = float(sphere_height_oracle(space, K, radius))
    errs = []
    for s in steps:
        y = integrate_jet(space, K, [(0.0, 0.0), (radius, 0.0)], JetState(0.0, 0.0, 0.0), s)
        errs.append(abs(y.h - target))
    orders = [math.log(errs[i] / errs[i + 1]) / math.log(steps[i] / steps[i + 1])
              for i in range(len(steps) - 1)]
    return errs, orders
