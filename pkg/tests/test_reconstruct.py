import math

import numpy as np
import pytest

from ccsurf.ambient import H2R, S2R
from ccsurf.forms_engine import frame_at
from ccsurf.reconstruct import (
    BranchError,
    JetState,
    ReconstructionError,
    convergence_order,
    hessian_of_jet,
    integrate_jet,
    integrate_paths,
    nu_law,
    nu_of_h,
    path_independence,
    random_path_pairs,
    reconstruct_disk,
    sphere_height_oracle,
)
from ccsurf.revolution import conformal_chart, profile

ZERO = JetState(0.0, 0.0, 0.0)


def test_law_constants():
    assert nu_law(H2R, 2.0).const == pytest.approx(math.atan(1 / math.sqrt(2)), abs=1e-15)
    assert nu_law(H2R, 2.0).const == pytest.approx(0.615480, abs=1e-6)
    assert nu_law(S2R, 4.0).const == pytest.approx(0.549306, abs=1e-6)
    for space, K in ((H2R, 0.5), (H2R, 2.0), (S2R, 1.5), (S2R, 4.0)):
        assert nu_of_h(nu_law(space, K), 0.0) == pytest.approx(1.0, abs=1e-14)


def test_law_rejects_non_spheres():
    with pytest.raises(ValueError):
        nu_law(S2R, 1.0)
    with pytest.raises(ValueError):
        nu_law(H2R, -0.5)


@pytest.mark.parametrize("space,K", [(H2R, 2.0), (H2R, 0.5), (S2R, 4.0)])
def test_law_matches_profile(space, K):
    """nu along the closed-form sphere equals the law evaluated at its height."""
    p = profile(space, K)
    chart = conformal_chart(space, p)
    law = nu_law(space, K)
    for rho in (0.1, 0.3, 0.6):
        nu = frame_at(chart, rho, 0.0).nu
        assert float(nu) == pytest.approx(float(nu_of_h(law, sphere_height_oracle(space, K, rho))), abs=1e-7)


def test_branch_exit():
    law = nu_law(H2R, 2.0)
    h_bad = (law.const + math.pi / 2) / law.alpha
    with pytest.raises(BranchError, match="ν-law out of branch"):
        nu_of_h(law, h_bad)


def test_hessian_at_origin():
    huu, huv, hvv = hessian_of_jet(H2R, 2.0, 0.0, 0.0, ZERO)
    assert huu == pytest.approx(4 * math.sqrt(3), abs=1e-12)
    assert huu == pytest.approx(6.928203, abs=1e-6)
    assert hvv == pytest.approx(huu) and huv == 0.0


@pytest.mark.parametrize("u,v,p,q", [(0.2, 0.0, 0.3, 0.0), (0.0, 0.15, 0.0, -0.4), (0.1, -0.2, 0.0, 0.5)])
def test_hessian_cross_term_on_axes(u, v, p, q):
    K = 2.0
    d = (1 + K * (u * u + v * v)) / 2
    _, huv, _ = hessian_of_jet(H2R, K, u, v, JetState(0.05, p, q))
    assert huv == pytest.approx(-(K * v / d) * p - (K * u / d) * q, abs=1e-14)


def test_hessian_matches_fd_on_closed_form_sphere():
    K = 1.0
    chart = conformal_chart(H2R, profile(H2R, K))

    def h(u, v):
        return chart.psi(u, v)[..., 3]

    e = 1e-4
    for u, v in ((0.1, 0.05), (0.3, -0.2), (-0.4, 0.1)):
        h0 = h(u, v) - chart.psi(0.0, 0.0)[3]
        p = (h(u + e, v) - h(u - e, v)) / (2 * e)
        q = (h(u, v + e) - h(u, v - e)) / (2 * e)
        fd_uu = (h(u + e, v) - 2 * h(u, v) + h(u - e, v)) / e ** 2
        fd_vv = (h(u, v + e) - 2 * h(u, v) + h(u, v - e)) / e ** 2
        fd_uv = (h(u + e, v + e) - h(u + e, v - e) - h(u - e, v + e) + h(u - e, v - e)) / (4 * e * e)
        huu, huv, hvv = hessian_of_jet(H2R, K, u, v, JetState(h0, p, q))
        assert huu == pytest.approx(fd_uu, abs=1e-3)
        assert huv == pytest.approx(fd_uv, abs=1e-3)
        assert hvv == pytest.approx(fd_vv, abs=1e-3)


def test_zero_length_path():
    s = JetState(0.01, 0.02, -0.03)
    assert integrate_jet(H2R, 2.0, [(0.1, 0.1), (0.1, 0.1)], s, 1e-3) == pytest.approx(s)
    assert integrate_jet(H2R, 2.0, [(0.1, 0.1)], s, 1e-3) == pytest.approx(s)


def test_radial_path_matches_oracle():
    s = integrate_jet(H2R, 2.0, [(0, 0), (0.3, 0)], ZERO, 1e-3)
    dist = (2 / math.sqrt(2)) * math.atan(math.sqrt(2) * 0.3)
    p = profile(H2R, 2.0)
    assert s.h == pytest.approx(p.h(dist) - p.h(0.0), abs=1e-4)
    assert s.q == pytest.approx(0.0, abs=1e-14)


def test_two_path_independence():
    a = integrate_jet(H2R, 2.0, [(0, 0), (0.2, 0), (0.2, 0.2)], ZERO, 1e-3)
    b = integrate_jet(H2R, 2.0, [(0, 0), (0, 0.2), (0.2, 0.2)], ZERO, 1e-3)
    assert abs(a.h - b.h) < 1e-6


def test_batched_matches_single():
    paths = random_path_pairs(3, 0.3, seed=5)[0]
    batch = integrate_paths(S2R, 4.0, paths, np.zeros(3), 2e-3)
    for i in range(len(paths)):
        single = integrate_jet(S2R, 4.0, paths[i], ZERO, 2e-3)
        assert np.allclose(batch[i], single, atol=1e-14)


def test_bad_step():
    with pytest.raises(ValueError):
        integrate_jet(H2R, 2.0, [(0, 0), (0.1, 0)], ZERO, 0.0)


@pytest.fixture(scope="module")
def disk_h2r_k2():
    return reconstruct_disk(H2R, 2.0, 0.5, 1e-3)


def test_disk_origin(disk_h2r_k2):
    r = disk_h2r_k2
    assert np.all(r.h[:, 0] == 0) and np.all(r.p[:, 0] == 0) and np.all(r.q[:, 0] == 0)
    assert r.reached_radius == pytest.approx(0.5)


def test_disk_statistics(disk_h2r_k2):
    r = disk_h2r_k2
    assert r.oracle_error() < 1e-3
    assert r.symmetry_error() < 1e-6
    assert r.parity_error() < 1e-8
    assert r.nu_consistency() < 1e-5
    assert r.equator_radius() is None


@pytest.mark.parametrize("space,K", [(H2R, 2.0), (S2R, 4.0)])
def test_path_independence_random(space, K):
    assert path_independence(space, K, 100, 0.4, 1e-3, seed=1) < 1e-5


def test_random_paths_share_endpoints():
    a, b = random_path_pairs(10, 0.4, seed=3)
    assert np.allclose(a[:, 0], 0) and np.allclose(b[:, 0], 0)
    assert np.allclose(a[:, -1], b[:, -1])
    assert np.all(np.hypot(a[..., 0], a[..., 1]) <= 0.4 + 1e-12)


def test_fourth_order_convergence():
    errs, orders = convergence_order(H2R, 2.0, 0.5)
    assert all(e1 > e2 for e1, e2 in zip(errs, errs[1:]))
    assert min(orders) > 3.5


def test_equator_detected_past_sign_change():
    r = reconstruct_disk(H2R, 0.5, 2.0, 2e-3, n_rays=4)
    assert r.equator_radius() == pytest.approx(1 / math.sqrt(0.5), abs=5e-3)


def test_disk_rejects_bad_input():
    with pytest.raises(ValueError):
        reconstruct_disk(S2R, 0.5, 0.3, 1e-3)
    with pytest.raises(ValueError):
        reconstruct_disk(H2R, 2.0, 0.3, 1e-3, n_rays=6)


def test_error_carries_partial(monkeypatch):
    import ccsurf.reconstruct as rc

    def boom(law, h):
        if np.max(np.abs(h)) > 0.05:
            raise BranchError("ν-law out of branch")
        return math.sqrt(law.K) * np.tan(law.argument(h))

    monkeypatch.setattr(rc, "nu_of_h", boom)
    with pytest.raises(ReconstructionError) as info:
        rc.reconstruct_disk(H2R, 2.0, 0.5, 1e-2, n_rays=4)
    assert 0 < info.value.reached_radius < 0.5
    assert info.value.partial.h.shape[1] == len(info.value.partial.rho)
