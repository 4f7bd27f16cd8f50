import json
import math

import numpy as np
import pytest

from ccsurf.ambient import H2R, S2R, manifold_residual
from ccsurf.cli import main
from ccsurf.io import (
    ConfigError,
    build_mesh,
    dumps_report,
    load_config,
    project,
    read_obj,
    read_raw_csv,
    write_raw_csv,
    write_report,
)
from ccsurf.revolution import Family, profile


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("space,K,status", [
    ("h2r", 2.0, "UniqueComplete"),
    ("h2r", -2.0, "NoCompleteSurface"),
    ("s2r", 0.5, "OpenProblem"),
    ("s2r", 4.0, "UniqueComplete"),
])
def test_classify(capsys, space, K, status):
    code, out, _ = run(capsys, "classify", "--space", space, "--k", K)
    assert code == 0
    assert out.startswith(status + " (")


def test_classify_open_problem_has_conditional_note(capsys):
    _, out, _ = run(capsys, "classify", "--space", "s2r", "--k", 0.5)
    assert "note:" in out and "1 - K" in out


def test_classify_json(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run(capsys, "classify", "--space", "h2r", "--k", -2, "--out", out)[0] == 0
    data = json.loads(out.read_text())
    assert data["status"] == "NoCompleteSurface" and data["K"] == -2.0


@pytest.mark.parametrize("argv", [
    ["classify", "--space", "r3", "--k", "1"],
    ["classify", "--space", "h2r"],
    ["classify", "--space", "h2r", "--k", "nan"],
    ["generate", "--space", "h2r", "--k", "1"],
    ["generate", "--space", "h2r", "--k", "1", "--out", "x.obj", "--family", "NoSuchFamily"],
    ["reconstruct", "--space", "h2r", "--k", "2", "--radius", "-1"],
    ["frobnicate"],
])
def test_usage_errors(capsys, tmp_path, monkeypatch, argv):
    monkeypatch.chdir(tmp_path)
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == 2


def test_mesh_sphere_closed():
    mesh = build_mesh(H2R, profile(H2R, 1.0), 64)
    assert mesh.euler_characteristic() == 2
    assert mesh.boundary_loops() == 0
    assert set(mesh.poles) == {"lo", "hi"}
    for f in mesh.faces:
        assert len(set(f)) == len(f)
        assert all(0 <= i < mesh.n_vertices for i in f)


def test_mesh_cylinder_tube():
    mesh = build_mesh(S2R, profile(S2R, 0.0), 16)
    assert mesh.boundary_loops() == 2
    assert mesh.euler_characteristic() == 0
    assert mesh.poles == ()


def test_generate_obj_roundtrip(tmp_path, capsys):
    out = tmp_path / "s.obj"
    code, msg, _ = run(capsys, "generate", "--space", "h2r", "--k", 1.0, "--samples", 20, "--out", out)
    assert code == 0 and "wrote" in msg
    verts, faces, comments = read_obj(out)
    mesh = build_mesh(H2R, profile(H2R, 1.0), 20)
    assert len(verts) == mesh.n_vertices and len(faces) == len(mesh.faces)
    assert any("poincare" in c for c in comments)
    # Poincare ball images stay inside the unit disk horizontally
    assert np.all(np.hypot(verts[:, 0], verts[:, 1]) < 1)


def test_generate_raw_csv_revalidates(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "generate", "--space", "s2r", "--k", 4.0, "--samples", 12,
                     "--projection", "raw", "--out", out)
    assert code == 0
    data = read_raw_csv(out, S2R)
    assert np.max(np.abs(manifold_residual(S2R, data[:, 2:]))) < 1e-9


def test_raw_csv_rejects_off_manifold(tmp_path):
    mesh = build_mesh(S2R, profile(S2R, 4.0), 6)
    mesh.points4[3, 1] += 1e-3
    path = tmp_path / "bad.csv"
    write_raw_csv(mesh, path)
    with pytest.raises(ValueError, match="off the manifold"):
        read_raw_csv(path, S2R)


def test_slab_cannot_be_projected(tmp_path, capsys):
    code, _, err = run(capsys, "generate", "--space", "s2r", "--k", 1.0, "--samples", 8,
                       "--projection", "stereo", "--out", tmp_path / "m.obj")
    assert code == 1 and "raw" in err


def test_projection_checks():
    pts = np.array([[1.0, 0, 0, 0.5]])
    assert np.allclose(project(H2R, pts, "poincare"), [[0, 0, 0.5]])
    with pytest.raises(ValueError, match="pole"):
        project(S2R, pts, "stereo")
    with pytest.raises(ValueError, match="is for"):
        project(S2R, pts, "poincare")
    with pytest.raises(ValueError, match="unknown projection"):
        project(S2R, pts, "mercator")


def test_generate_nonexistent_surface(tmp_path, capsys):
    code, _, err = run(capsys, "generate", "--space", "s2r", "--k", 0.5, "--out", tmp_path / "x.obj")
    assert code == 1 and "error" in err


def test_report_formatting():
    text = dumps_report({"b": 1.0, "a": [float("nan"), math.inf, 2], "c": {"z": True, "y": None}})
    data = json.loads(text)
    assert list(data) == ["a", "b", "c"]
    assert data["a"] == ["nan", "inf", 2]
    assert data["b"] == 1.0
    assert "1.000000000000e+00" in text


def test_report_stamp_sidecar(tmp_path):
    p = tmp_path / "r.json"
    write_report({"x": 1.5}, p, stamp=True)
    assert (tmp_path / "r.json.stamp").exists()
    assert "stamp" not in p.read_text()


def test_verify_reports_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        code, _, _ = run(capsys, "verify", "--space", "s2r", "--k", 0.0, "--grid", 12, "--out", out)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    names = [c["name"] for c in report["checks"]]
    assert len(names) == len(set(names))
    degenerate = next(c for c in report["checks"] if c["name"] == "a_degenerate_expected")
    assert degenerate["pass"] and degenerate["status"] == "ok"


def test_verify_h2r_sphere_all_pass(tmp_path, capsys):
    out = tmp_path / "v.json"
    code, text, _ = run(capsys, "verify", "--space", "h2r", "--k", 2.0, "--grid", 20, "--out", out)
    assert code == 0 and "FAIL" not in text
    report = json.loads(out.read_text())
    assert report["all_pass"]
    for c in report["checks"]:
        if c["max"] is None or c["max"] == "nan":
            continue
        ok = c["max"] >= c["tolerance"] if c["kind"] == "lower" else c["max"] <= c["tolerance"]
        assert ok == c["pass"]


def test_verify_neg_axis_skips_Q(tmp_path, capsys):
    out = tmp_path / "v.json"
    code, _, _ = run(capsys, "verify", "--space", "h2r", "--k", -0.5, "--family", "H2R_NegKAxis",
                     "--grid", 12, "--out", out)
    report = json.loads(out.read_text())
    q = [c for c in report["checks"] if c["name"].startswith("q_")]
    assert q and all(c["status"].startswith("skipped") for c in q)
    assert code == 0


def test_config_overrides_and_flags_win(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text("[verify]\ngrid = 10\n[tolerances]\ngauss_split = 1e-30\n")
    out = tmp_path / "v.json"
    code, _, _ = run(capsys, "verify", "--space", "s2r", "--k", 4.0, "--config", cfg, "--out", out)
    report = json.loads(out.read_text())
    assert code == 1 and report["config"]["grid"] == 10
    gs = next(c for c in report["checks"] if c["name"] == "gauss_split")
    assert gs["tolerance"] == 1e-30
    run(capsys, "verify", "--space", "s2r", "--k", 4.0, "--config", cfg, "--grid", 8, "--out", out)
    assert json.loads(out.read_text())["config"]["grid"] == 8


@pytest.mark.parametrize("text", ["[nope]\nx = 1\n", "[verify]\ngrid = 'many'\n", "[verify]\nwho = 1\n",
                                  "not toml ["])
def test_bad_config(tmp_path, text):
    cfg = tmp_path / "c.toml"
    cfg.write_text(text)
    with pytest.raises(ConfigError):
        load_config(cfg)


def test_bad_config_is_usage_error(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text("[verify]\ngrid = 'many'\n")
    code, _, err = run(capsys, "verify", "--space", "h2r", "--k", 2, "--config", cfg)
    assert code == 2 and "usage error" in err


def test_reconstruct_h2r(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "reconstruct", "--space", "h2r", "--k", 2.0, "--radius", 0.5, "--step", 1e-3,
                     "--out", out)
    assert code == 0
    report = json.loads(out.read_text())
    stats = {c["name"]: c["value"] for c in report["checks"]}
    assert report["status"] == "complete" and stats["oracle_error"] < 1e-3
    rows = (tmp_path / "r.csv").read_text().splitlines()
    assert rows[0] == "ray,rho,theta,u,v,h,h_u,h_v"
    assert len(rows) == 1 + 16 * 501


def test_reconstruct_s2r_path_independence(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "reconstruct", "--space", "s2r", "--k", 4.0, "--radius", 0.3, "--out", out)
    stats = {c["name"]: c["value"] for c in json.loads(out.read_text())["checks"]}
    assert code == 0 and stats["path_independence"] < 1e-5


def test_reconstruct_rejects_non_sphere(capsys):
    code, _, err = run(capsys, "reconstruct", "--space", "h2r", "--k", -0.5)
    assert code == 1 and "classification" in err


def test_reconstruct_large_radius_reports_equator(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "reconstruct", "--space", "h2r", "--k", 0.5, "--radius", 2.0, "--step", 4e-3,
                        "--out", out)
    report = json.loads(out.read_text())
    assert report["status"] in ("complete", "branch_exit")
    assert report["equator_radius"] == pytest.approx(1 / math.sqrt(0.5), abs=1e-2)
    assert "nu changes sign" in text
