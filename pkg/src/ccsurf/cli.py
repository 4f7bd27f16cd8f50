"""ccsurf command line: classify | generate | verify | reconstruct.

Exit codes: 0 success, 1 failed check or nonexistent surface, 2 usage error.
Settings come from built-in defaults, then ``--config`` (TOML), then flags.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .ambient import space_from_name
from .io import (
    ConfigError,
    build_mesh,
    dumps_report,
    load_config,
    write_height_csv,
    write_obj,
    write_raw_csv,
    write_report,
)
from .revolution import Family, ProfileError, classify, default_family, profile

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

GENERATE_DEFAULTS = {"samples": 64, "projection": None, "collar": 0.05, "half_range": 2.0}
RECONSTRUCT_DEFAULTS = {"radius": 0.5, "step": 1e-3, "n_rays": 16, "path_pairs": 100, "seed": 0,
                        "path_radius": 0.4}
RECONSTRUCT_TOLERANCES = {
    "oracle_error": 1e-3,
    "rotational_symmetry": 1e-6,
    "parity": 1e-8,
    "nu_consistency": 1e-5,
    "path_independence": 1e-5,
    "convergence_order": 3.5,
}
CONVERGENCE_STEPS = (4e-3, 2e-3, 1e-3)


class UsageError(Exception):
    pass


def _finite(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError("must be finite")
    return x


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccsurf", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ccsurf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k_required=True):
        p.add_argument("--space", choices=["h2r", "s2r"], required=True)
        p.add_argument("--k", type=_finite, required=k_required, help="Gaussian curvature K")
        p.add_argument("--config", type=Path, help="TOML file with defaults (flags override it)")
        p.add_argument("--out", type=Path, help="output path")

    p = sub.add_parser("classify", help="existence/uniqueness status for (space, K)")
    common(p)

    p = sub.add_parser("generate", help="mesh of a rotational surface")
    common(p)
    p.add_argument("--family", help="profile family tag (default: per space and K)")
    p.add_argument("--samples", type=_positive_int)
    p.add_argument("--projection", help="poincare | stereo | stereo-antipodal | raw")

    p = sub.add_parser("verify", help="residual checks on a rotational surface")
    common(p)
    p.add_argument("--family")
    p.add_argument("--grid", type=_positive_int)

    p = sub.add_parser("reconstruct", help="integrate the height from its 1-jet at the pole")
    common(p)
    p.add_argument("--radius", type=_finite)
    p.add_argument("--step", type=_finite)
    return parser


def _settings(args, table, defaults, keys):
    cfg = load_config(args.config) if args.config else {}
    out = dict(defaults)
    out.update(cfg.get(table, {}))
    for k in keys:
        val = getattr(args, k, None)
        if val is not None:
            out[k] = val
    return out, cfg


def cmd_classify(args) -> int:
    space = space_from_name(args.space)
    if args.config:
        load_config(args.config)
    v = classify(space, args.k)
    lines = [v.summary()] + [f"  note: {n}" for n in v.conditional_notes]
    print("\n".join(lines))
    if args.out:
        write_report({"space": space.name, "K": float(args.k), "status": v.status.value,
                      "detail": v.detail, "notes": list(v.conditional_notes)}, args.out)
    return EXIT_OK


def cmd_generate(args) -> int:
    space = space_from_name(args.space)
    s, _ = _settings(args, "generate", GENERATE_DEFAULTS, ["samples", "projection"])
    if args.out is None:
        raise UsageError("generate needs --out")
    if s["samples"] < 3:
        raise UsageError("--samples must be at least 3")
    projection = s["projection"] or ("poincare" if space.epsilon == -1 else "stereo-antipodal")
    try:
        fam = Family.parse(args.family) if args.family else default_family(space, args.k)
    except ValueError as exc:
        raise UsageError(str(exc))
    try:
        p = profile(space, args.k, fam)
    except ProfileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    mesh = build_mesh(space, p, s["samples"], s["collar"], s["half_range"])
    if projection == "raw":
        write_raw_csv(mesh, args.out)
    else:
        try:
            write_obj(mesh, space, args.out, projection)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
    print(f"wrote {mesh.n_vertices} vertices, {len(mesh.faces)} faces ({fam.value}, {projection}) to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import VerifyConfig, verify_surface

    space = space_from_name(args.space)
    s, cfg_file = _settings(args, "verify", {}, ["grid"])
    cfg = VerifyConfig(**s)
    cfg.tolerances.update(cfg_file.get("tolerances", {}))
    try:
        fam = Family.parse(args.family) if args.family else None
    except ValueError as exc:
        raise UsageError(str(exc))
    try:
        report = verify_surface(space, args.k, fam, cfg)
    except ProfileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    for c in report["checks"]:
        flag = "PASS" if c["pass"] else "FAIL"
        val = "-" if c["max"] is None else f"{c['max']:.3e}"
        rel = ">=" if c["kind"] == "lower" else "<="
        print(f"{flag}  {c['name']:<26} max={val:<10} {rel} {c['tolerance']:.1e}  {c['status']}")
    print(f"classification: {report['classification']['status']} ({report['classification']['detail']})")
    if args.out:
        write_report(report, args.out)
    return EXIT_OK if report["all_pass"] else EXIT_FAIL


def reconstruction_report(space, K, s) -> dict:
    """Run the reconstruction and its statistics; never raises on integration failure."""
    from .reconstruct import (BranchError, ReconstructionError, convergence_order, path_independence,
                              reconstruct_disk)

    report = {"tool": "ccsurf", "version": __version__,
              "surface": {"space": space.name, "epsilon": space.epsilon, "K": float(K)},
              "config": dict(s), "tolerances": dict(RECONSTRUCT_TOLERANCES)}
    try:
        rec = reconstruct_disk(space, K, s["radius"], s["step"], s["n_rays"])
        status, message = "complete", ""
    except ReconstructionError as exc:
        rec = exc.partial
        status = "branch_exit" if isinstance(exc, BranchError) else "inadmissible"
        message = str(exc)
    report["status"] = status
    report["message"] = message
    report["reached_radius"] = rec.reached_radius if rec is not None else 0.0
    report["equator_radius"] = rec.equator_radius() if rec is not None else None
    stats = {}
    if rec is not None:
        stats["oracle_error"] = rec.oracle_error()
        stats["rotational_symmetry"] = rec.symmetry_error()
        stats["parity"] = rec.parity_error()
        stats["nu_consistency"] = rec.nu_consistency()
    if status == "complete":
        pr = min(s["path_radius"], s["radius"])
        try:
            stats["path_independence"] = path_independence(space, K, s["path_pairs"], pr, s["step"], s["seed"])
            errs, orders = convergence_order(space, K, s["radius"], CONVERGENCE_STEPS)
            stats["convergence_order"] = min(orders)
            report["convergence"] = {"steps": list(CONVERGENCE_STEPS), "errors": errs, "orders": orders}
        except ReconstructionError as exc:
            report["message"] = f"statistics incomplete: {exc}"
    checks = []
    for name, tol in RECONSTRUCT_TOLERANCES.items():
        if name not in stats:
            checks.append({"name": name, "value": None, "tolerance": tol, "pass": False, "status": "not computed"})
            continue
        val = stats[name]
        ok = val >= tol if name == "convergence_order" else val <= tol
        checks.append({"name": name, "value": val, "tolerance": tol, "pass": bool(ok), "status": "ok"})
    report["checks"] = checks
    report["all_pass"] = status == "complete" and all(c["pass"] for c in checks)
    return report, rec


def cmd_reconstruct(args) -> int:
    space = space_from_name(args.space)
    s, _ = _settings(args, "reconstruct", RECONSTRUCT_DEFAULTS, ["radius", "step"])
    if s["radius"] <= 0 or s["step"] <= 0:
        raise UsageError("--radius and --step must be positive")
    if s["n_rays"] % 4:
        raise UsageError("n_rays must be a multiple of 4")
    need = 1.0 if space.epsilon == 1 else 0.0
    if not args.k > need:
        print(f"error: reconstruction needs a rotational sphere, K > {need:g} in {space.name} "
              f"(got K={args.k:g}); "
              f"classification: {classify(space, args.k).summary()}", file=sys.stderr)
        return EXIT_FAIL
    report, rec = reconstruction_report(space, args.k, s)
    print(f"status: {report['status']}  reached radius {report['reached_radius']:.6g}"
          + (f"  ({report['message']})" if report["message"] else ""))
    if report["equator_radius"] is not None:
        print(f"nu changes sign at radius {report['equator_radius']:.6g}")
    for c in report["checks"]:
        val = "-" if c["value"] is None else f"{c['value']:.3e}"
        print(f"{'PASS' if c['pass'] else 'FAIL'}  {c['name']:<20} {val}  (tolerance {c['tolerance']:.1e})")
    if args.out:
        write_report(report, args.out)
        csv_path = args.out.with_suffix(".csv")
        if csv_path == args.out:
            csv_path = Path(str(args.out) + ".csv")
        if rec is not None:
            write_height_csv(rec, csv_path)
    else:
        sys.stdout.write(dumps_report(report))
    return EXIT_OK if report["all_pass"] else EXIT_FAIL


COMMANDS = {"classify": cmd_classify, "generate": cmd_generate, "verify": cmd_verify,
            "reconstruct": cmd_reconstruct}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with status 2 on bad flags
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
