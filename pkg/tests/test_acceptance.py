"""Acceptance suite: nine criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or directly as
``python tests/test_acceptance.py``.
"""

import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ccsurf.ambient import H2R, S2R
from ccsurf.codazzi_pair import KA_formula, build_A, a_degenerate_criterion
from ccsurf.forms_engine import frame_at
from ccsurf.quadratic_forms import is_riemannian
from ccsurf.reconstruct import convergence_order, path_independence, reconstruct_disk
from ccsurf.revolution import profile
from ccsurf.verify import VerifyConfig, verify_surface

from helpers import GOLDEN, all_surfaces, golden_text, surface_id, tilted_slab

GRID = 50
SPHERES = [(H2R, 0.5), (H2R, 1.0), (H2R, 2.0), (H2R, 4.0), (S2R, 1.5), (S2R, 2.0), (S2R, 4.0)]

_reports = {}


def report_for(space, K, fam=None):
    """verify_surface on the 50x50 grid, cached; also records wall time."""
    key = (space.name, K, None if fam is None else fam.value)
    if key not in _reports:
        t0 = time.perf_counter()
        rep = verify_surface(space, K, fam, VerifyConfig(grid=GRID))
        _reports[key] = (rep, time.perf_counter() - t0)
    return _reports[key]


def check(rep, name):
    return next(c for c in rep["checks"] if c["name"] == name)


def announce(n, ok, text):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}"
    capture = _capsys[0]
    if capture is not None:
        with capture.disabled():
            print(line)
    else:
        print(line)
    return ok


_capsys = [None]


@pytest.fixture(autouse=True)
def _grab_capsys(capsys):
    _capsys[0] = capsys
    yield
    _capsys[0] = None


def test_criterion_1_curvature_fidelity():
    worst, slowest, bad = 0.0, 0.0, []
    for space, K, fam in all_surfaces():
        rep, secs = report_for(space, K, fam)
        c = check(rep, "gauss_curvature")
        worst, slowest = max(worst, c["max"]), max(slowest, secs)
        if not (c["max"] < 1e-4 and secs < 10):
            bad.append(surface_id((space, K, fam)))
    ok = not bad
    announce(1, ok, f"max |K_fd - K| = {worst:.2e} (< 1e-4), slowest surface {slowest:.1f} s (< 10 s)"
             + (f"; failing {bad}" if bad else ""))
    assert ok


def test_criterion_2_pair_curvature_identity():
    worst, n = 0.0, 0
    for space, K, fam in all_surfaces():
        if K == space.epsilon:
            continue
        c = check(report_for(space, K, fam)[0], "pair_curvature_identity")
        if c["max"] is not None:
            worst, n = max(worst, c["max"]), n + 1
    ok = n > 0 and worst < 1e-9
    announce(2, ok, f"max |K(A,II) - (K - eps)| = {worst:.2e} (< 1e-9) over {n} surfaces")
    assert ok


def test_criterion_3_codazzi():
    worst_A, worst_defect, min_control, bad = 0.0, 0.0, math.inf, []
    for space, K, fam in all_surfaces():
        rep = report_for(space, K, fam)[0]
        cA = check(rep, "codazzi_A_II")
        if cA["max"] is not None:
            worst_A = max(worst_A, cA["max"])
            if cA["max"] >= 1e-6:
                bad.append(surface_id((space, K, fam)))
        d = check(rep, "codazzi_I_II_defect")
        worst_defect = max(worst_defect, d["max"])
        if fam.is_sphere and K != space.epsilon:
            ctrl = check(rep, "codazzi_I_II_control")
            min_control = min(min_control, ctrl["max"])
    ok = not bad and worst_defect < 1e-6 and min_control > 1e-3
    announce(3, ok, f"max Codazzi(A,II) = {worst_A:.2e} (< 1e-6); (I,II) minus predicted defect "
             f"{worst_defect:.2e} (< 1e-6); smallest sphere control {min_control:.2e} (> 1e-3)")
    assert ok


def test_criterion_4_holomorphic_Q():
    worst_q, worst_cr, worst_lam = 0.0, 0.0, 0.0
    for space, K in SPHERES:
        rep = report_for(space, K)[0]
        worst_q = max(worst_q, check(rep, "q_vanishing")["max"])
        worst_cr = max(worst_cr, check(rep, "q_cauchy_riemann")["max"])
        worst_lam = max(worst_lam, check(rep, "lambda_relation")["max"])
    ok = worst_q < 1e-8 and worst_cr < 1e-4 and worst_lam < 1e-6
    announce(4, ok, f"max|Q| = {worst_q:.2e} (< 1e-8), CR residual {worst_cr:.2e} (< 1e-4), "
             f"II - lambda A {worst_lam:.2e} (< 1e-6) on {len(SPHERES)} spheres")
    assert ok


def test_criterion_5_reconstruction():
    t0 = time.perf_counter()
    parts, ok = [], True
    for space, K, radius in ((H2R, 2.0, 0.5), (S2R, 4.0, 0.3)):
        oracle = reconstruct_disk(space, K, radius, 1e-3).oracle_error()
        paths = path_independence(space, K, 100, min(0.4, radius), 1e-3, seed=0)
        _, orders = convergence_order(space, K, radius)
        ok &= oracle < 1e-3 and paths < 1e-5 and min(orders) >= 3.5
        parts.append(f"{space.name} K={K:g}: oracle {oracle:.1e}, paths {paths:.1e}, order {min(orders):.2f}")
    secs = time.perf_counter() - t0
    ok &= secs < 60
    announce(5, ok, "; ".join(parts) + f"; {secs:.1f} s (< 60 s)")
    assert ok


def test_criterion_6_hilbert_bound():
    x = np.linspace(0.0, 1.0, 10001)
    ok, parts = True, []
    for K in (-2.0, -1.5, -1.1):
        vals = KA_formula(H2R, K, x)
        inside = np.all(vals >= K - 1 - 1e-12) and np.all(vals <= K + 1 + 1e-12)
        ends = abs(vals.min() - (K - 1)) < 1e-12 and abs(vals.max() - (K + 1)) < 1e-12
        ok &= bool(inside and ends and K + 1 < 0)
        parts.append(f"K={K:g}: [{vals.min():.12f}, {vals.max():.12f}]")
    announce(6, ok, "K(A) range in [K-1, K+1] with K+1 < 0; " + ", ".join(parts))
    assert ok


def test_criterion_7_definiteness_equivalence():
    rng = np.random.default_rng(20240607)
    agree = total = 0
    while total < 200:
        space = (S2R, H2R)[rng.integers(2)]
        K = float(rng.uniform(-3.0, 3.0))
        x = float(rng.uniform(0.0, 0.999))
        if abs(K - space.epsilon) < 1e-6:
            continue
        phi = rng.uniform(0, 2 * math.pi)
        # at the slab origin d = 1/2, so |grad h|^2 = (a^2 + b^2) / 4
        r = 2 * math.sqrt(x)
        chart = tilted_slab(space, r * math.cos(phi), r * math.sin(phi))
        x_chart = float(frame_at(chart, 0.0, 0.0).gradh_norm2)
        A = build_A(chart, K).A(0.0, 0.0)
        total += 1
        agree += bool(a_degenerate_criterion(space, K, x_chart)) == (not bool(is_riemannian(A)))
    ok = agree == total
    announce(7, ok, f"criterion agrees with non-definiteness of A at {agree}/{total} random points")
    assert ok


def test_criterion_8_classifier_golden():
    same = {sp.name: golden_text(sp).encode("utf-8") == (GOLDEN / f"classify_{sp.name}.txt").read_bytes()
            for sp in (H2R, S2R)}
    ok = all(same.values())
    announce(8, ok, "classify matches golden files byte for byte (30 K values per space): "
             + ", ".join(f"{k} {'ok' if v else 'differs'}" for k, v in same.items()))
    assert ok


def test_criterion_9_arclength_and_frame():
    worst_arc, worst_frame = 0.0, 0.0
    for space, K, fam in all_surfaces():
        rep = report_for(space, K, fam)[0]
        worst_arc = max(worst_arc, check(rep, "arclength")["max"])
        worst_frame = max(worst_frame, check(rep, "frame_unit")["max"])
        p = profile(space, K, fam)
        lo, hi = p.sample_range()
        worst_arc = max(worst_arc, float(np.max(np.abs(p.arclength_residual(np.linspace(lo, hi, 1000))))))
    ok = worst_arc < 1e-9 and worst_frame < 1e-9
    announce(9, ok, f"arclength residual {worst_arc:.2e} (< 1e-9), |nu^2 + |grad h|^2 - 1| "
             f"{worst_frame:.2e} (< 1e-9)")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
