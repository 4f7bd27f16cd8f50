"""File formats: deterministic JSON reports, text meshes, CSV tables, TOML config.

JSON reports are written with sorted keys, two-space indentation and every
float as ``%.12e`` (non-finite floats become the strings "nan", "inf",
"-inf"), so identical inputs give byte-identical files.

Meshes use the Wavefront text subset ``v x y z`` / ``f i j k [l]`` with
1-based indices, preceded by ``#`` comment lines carrying metadata.
"""

from __future__ import annotations

import csv
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .ambient import AmbientSpace, manifold_residual
from .revolution import ProfileCurve, immersion_from_profile

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

__all__ = [
    "dumps_report",
    "write_report",
    "MeshAsset",
    "PROJECTIONS",
    "project",
    "build_mesh",
    "write_obj",
    "read_obj",
    "write_raw_csv",
    "read_raw_csv",
    "write_height_csv",
    "load_config",
    "ConfigError",
]

FLOAT_FMT = "%.12e"


# -- deterministic JSON ------------------------------------------------------

def _scalar(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if x is None:
        return "null"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return '"nan"'
        if math.isinf(x):
            return '"inf"' if x > 0 else '"-inf"'
        return FLOAT_FMT % x
    if isinstance(x, str):
        return json.dumps(x, ensure_ascii=False)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _dump(obj, level, out):
    pad = "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(obj, key=str)
        for i, k in enumerate(keys):
            out.append(f"{pad}{json.dumps(str(k))}: ")
            _dump(obj[k], level + 1, out)
            out.append(",\n" if i < len(keys) - 1 else "\n")
        out.append("  " * level + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(seq):
            out.append(pad)
            _dump(item, level + 1, out)
            out.append(",\n" if i < len(seq) - 1 else "\n")
        out.append("  " * level + "]")
    else:
        out.append(_scalar(obj))


def dumps_report(obj) -> str:
    out = []
    _dump(obj, 0, out)
    return "".join(out) + "\n"


def write_report(obj, path, stamp: bool = False):
    """Write ``obj``; with ``stamp`` also write ``<path>.stamp`` holding the UTC time."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_report(obj))
    if stamp:
        from datetime import datetime, timezone

        with open(str(path) + ".stamp", "w", encoding="utf-8") as fh:
            fh.write(datetime.now(timezone.utc).isoformat() + "\n")


# -- projections and meshes --------------------------------------------------

def _poincare(x):
    d = 1 + x[..., 0]
    return np.stack([x[..., 1] / d, x[..., 2] / d, x[..., 3]], -1), d


def _stereo(x):
    d = 1 - x[..., 0]
    return np.stack([x[..., 1] / d, x[..., 2] / d, x[..., 3]], -1), d


# the antipodal variant projects from x1 = -1, away from the poles the sphere
# families put at x1 = +1
PROJECTIONS = {
    "poincare": ("h2r", _poincare),
    "stereo": ("s2r", _stereo),
    "stereo-antipodal": ("s2r", _poincare),
}


def project(space: AmbientSpace, points, name: str):
    """Map points of M^2 x R to R^3. Raises ValueError on a vertex at the projection pole."""
    if name not in PROJECTIONS:
        raise ValueError(f"unknown projection {name!r}; expected one of {sorted(PROJECTIONS)} or raw")
    want, fn = PROJECTIONS[name]
    if want != space.name:
        raise ValueError(f"projection {name} is for {want}, not {space.name}")
    with np.errstate(divide="ignore", invalid="ignore"):
        xyz, den = fn(np.asarray(points, float))
    if np.any(np.abs(den) < 1e-12):
        raise ValueError(f"a vertex sits at the pole of the {name} projection; choose another projection or raw")
    return xyz


@dataclass
class MeshAsset:
    """Grid mesh of a rotational surface; ``faces`` hold 0-based indices."""

    points4: np.ndarray  # (n, 4) points in R^4
    uv: np.ndarray  # (n, 2) chart coordinates
    faces: list
    n_u: int
    n_v: int
    poles: tuple  # which ends collapse to a single vertex: ("lo", "hi") subset
    meta: dict = field(default_factory=dict)

    @property
    def n_vertices(self) -> int:
        return len(self.points4)

    def edges(self):
        es = set()
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                es.add((min(a, b), max(a, b)))
        return es

    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges()) + len(self.faces)

    def boundary_loops(self) -> int:
        """Number of boundary components (edges used by a single face)."""
        count = {}
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                e = (min(a, b), max(a, b))
                count[e] = count.get(e, 0) + 1
        bnd = [e for e, c in count.items() if c == 1]
        parent = {}

        def find(a):
            while parent.setdefault(a, a) != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in bnd:
            parent[find(a)] = find(b)
        return len({find(a) for e in bnd for a in e})


def build_mesh(space: AmbientSpace, p: ProfileCurve, samples: int, collar: float = 0.05,
               half_range: float = 2.0) -> MeshAsset:
    """samples x samples grid in (u, v); axis ends become single pole vertices."""
    if samples < 3:
        raise ValueError("samples must be at least 3")
    chart = immersion_from_profile(space, p)
    lo, hi = p.domain
    fin_hi = math.isfinite(hi)
    poles = []
    if p.tag.meets_axis:
        poles.append("lo")
        if fin_hi and float(p.warp(hi)) ** 2 < 1e-20:
            poles.append("hi")
    a, b = p.sample_range(collar, half_range)
    a = lo if "lo" in poles else a
    b = hi if "hi" in poles else b
    u = np.linspace(a, b, samples)
    n_v = samples
    v = 2 * math.pi * np.arange(n_v) / n_v
    ring_u = u[(1 if "lo" in poles else 0):(len(u) - 1 if "hi" in poles else len(u))]

    pts, uv = [], []
    lo_idx = hi_idx = None
    if "lo" in poles:
        lo_idx = 0
        pts.append(chart.psi(a, 0.0))
        uv.append((a, 0.0))
    base = len(pts)
    U, Vg = np.meshgrid(ring_u, v, indexing="ij")
    ring_pts = chart.psi(U, Vg).reshape(-1, 4)
    pts.extend(ring_pts)
    uv.extend(np.stack([U.ravel(), Vg.ravel()], -1))
    if "hi" in poles:
        hi_idx = len(pts)
        pts.append(chart.psi(b, 0.0))
        uv.append((b, 0.0))

    def idx(i, j):
        return base + i * n_v + (j % n_v)

    faces = []
    n_rings = len(ring_u)
    for i in range(n_rings - 1):
        for j in range(n_v):
            faces.append([idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)])
    if lo_idx is not None:
        for j in range(n_v):
            faces.append([lo_idx, idx(0, j), idx(0, j + 1)])
    if hi_idx is not None:
        for j in range(n_v):
            faces.append([hi_idx, idx(n_rings - 1, j + 1), idx(n_rings - 1, j)])
    meta = {"family": p.tag.value, "K": p.K, "space": space.name, "grid": (len(u), n_v)}
    return MeshAsset(np.asarray(pts, float), np.asarray(uv, float), faces, len(u), n_v, tuple(poles), meta)


def write_obj(mesh: MeshAsset, space: AmbientSpace, path, projection: str):
    xyz = project(space, mesh.points4, projection)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# ccsurf mesh\n")
        fh.write(f"# family {mesh.meta.get('family')} K {FLOAT_FMT % mesh.meta.get('K')} space {space.name}\n")
        fh.write(f"# projection {projection}\n")
        fh.write(f"# grid {mesh.n_u} {mesh.n_v} poles {','.join(mesh.poles) or 'none'}\n")
        for x, y, z in xyz:
            fh.write(f"v {FLOAT_FMT % x} {FLOAT_FMT % y} {FLOAT_FMT % z}\n")
        for f in mesh.faces:
            fh.write("f " + " ".join(str(i + 1) for i in f) + "\n")


def read_obj(path):
    """(vertices (n, 3), faces as 0-based lists, comment lines)."""
    verts, faces, comments = [], [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "#":
                comments.append(line.rstrip("\n"))
            elif parts[0] == "v":
                verts.append([float(t) for t in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(t) - 1 for t in parts[1:]])
    return np.array(verts), faces, comments


RAW_HEADER = ["u", "v", "x1", "x2", "x3", "x4"]


def write_raw_csv(mesh: MeshAsset, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RAW_HEADER)
        for (u, v), x in zip(mesh.uv, mesh.points4):
            w.writerow([FLOAT_FMT % t for t in (u, v, *x)])


def read_raw_csv(path, space: AmbientSpace = None, tol: float = 1e-9):
    """Rows as an (n, 6) array; with ``space`` given, rows off the manifold raise."""
    with open(path, encoding="utf-8") as fh:
        r = csv.reader(fh)
        header = next(r)
        if header != RAW_HEADER:
            raise ValueError(f"unexpected header {header}")
        data = np.array([[float(t) for t in row] for row in r])
    if space is not None:
        res = np.abs(manifold_residual(space, data[:, 2:]))
        if np.any(res > tol):
            raise ValueError(f"row off the manifold (residual {res.max():.3e})")
    return data


def write_height_csv(rec, path):
    """Reconstructed jets: one row per polar node (ray, rho, theta, u, v, h, h_u, h_v)."""
    u, v = rec.uv()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["ray", "rho", "theta", "u", "v", "h", "h_u", "h_v"])
        for i in range(len(rec.theta)):
            for j in range(len(rec.rho)):
                w.writerow([str(i)] + [FLOAT_FMT % t for t in (rec.rho[j], rec.theta[i], u[i, j], v[i, j],
                                                               rec.h[i, j], rec.p[i, j], rec.q[i, j])])


# -- config ------------------------------------------------------------------

class ConfigError(ValueError):
    pass


CONFIG_SCHEMA = {
    "verify": {"grid": int, "collar": float, "half_range": float, "fd_step": float, "q_grid": int},
    "tolerances": None,  # any known check name -> float
    "generate": {"samples": int, "projection": str, "collar": float, "half_range": float},
    "reconstruct": {"radius": float, "step": float, "n_rays": int, "path_pairs": int, "seed": int,
                    "path_radius": float},
}


def load_config(path) -> dict:
    """Read and type-check a TOML config; unknown tables or keys raise ConfigError."""
    from .verify import DEFAULT_TOLERANCES

    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    out = {}
    for table, body in data.items():
        if table not in CONFIG_SCHEMA or not isinstance(body, dict):
            raise ConfigError(f"unknown config table [{table}]")
        schema = CONFIG_SCHEMA[table]
        if schema is None:
            schema = {k: float for k in DEFAULT_TOLERANCES}
        clean = {}
        for k, val in body.items():
            if k not in schema:
                raise ConfigError(f"unknown key {k!r} in [{table}]")
            typ = schema[k]
            if typ is float and isinstance(val, int) and not isinstance(val, bool):
                val = float(val)
            if not isinstance(val, typ) or isinstance(val, bool):
                raise ConfigError(f"[{table}] {k} must be {typ.__name__}")
            clean[k] = val
        out[table] = clean
    return out
