"""Command-line interface: geometry reports, fiducial search, identity
verification, representation conversion and tomography simulation.

Exit code 0 means every internal tolerance check passed; output files are
deterministic functions of the flags (including --seed).
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import bloch, state_simplex
from .sic_povm import (Fiducial, fiducial_from_json, fiducial_to_json,
                       find_fiducial, load_catalog, save_catalog,
                       default_catalog_path, sic_residual, wh_orbit)
from .simplex_geometry import to_probabilities
from .state_simplex import (build_context, geometry_report, report_to_json,
                            simulate_tomography, state_to_probabilities,
                            probabilities_to_point, point_to_state,
                            verify_b_equals_q)

GEOMETRY_CSV_COLUMNS = ["d", "R_out", "R_in", "R_pure", "m_pure",
                        "sum_p2_pure", "pure_sphere_is_inner"]
VERIFY_CSV_COLUMNS = ["d", "R_out", "R_in", "R_pure", "m_pure",
                      "sum_p2_pure", "max_theorem_deviation"]
TOMOGRAPHY_CSV_COLUMNS = ["shots", "trace_distance", "seed"]


def _dim(value: str) -> int:
    d = int(value)
    if d < 2:
        raise argparse.ArgumentTypeError(f"dimension must be >= 2, got {d}")
    return d


def _check_finite(obj) -> None:
    """Refuse to emit NaN/Inf anywhere in an output payload."""
    if isinstance(obj, dict):
        for v in obj.values():
            _check_finite(v)
    elif isinstance(obj, (list, tuple)):
        for v in obj:
            _check_finite(v)
    elif isinstance(obj, float) and not math.isfinite(obj):
        raise ValueError(f"non-finite value {obj!r} in output")


def _write_json(obj, path: str | None) -> None:
    _check_finite(obj)
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_csv(columns, rows, path: str | None) -> None:
    _check_finite([list(r.values()) for r in rows])
    out = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if path:
            out.close()


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _fiducial_from_file(path: str) -> Fiducial:
    """Load a fiducial entry, re-verifying the residual from the vector
    itself so a corrupted entry cannot sneak through."""
    fid = fiducial_from_json(_load_json(path))
    fid.residual = sic_residual(wh_orbit(fid))
    return fid


def _context(d: int, args) -> state_simplex.QuantumSimplexContext:
    fid = None
    if getattr(args, "fiducial", None):
        fid = _fiducial_from_file(args.fiducial)
        if fid.d != d:
            raise ValueError(f"fiducial file is for d={fid.d}, expected d={d}")
    return build_context(d, fiducial=fid, seed=getattr(args, "seed", 0))


def _cmd_geometry(args) -> int:
    rep = geometry_report(args.d)
    obj = report_to_json(rep)
    if args.format == "json":
        _write_json(obj, args.out)
    else:
        row = {k: obj[k] for k in GEOMETRY_CSV_COLUMNS}
        _write_csv(GEOMETRY_CSV_COLUMNS, [row], args.out)
    return 0


def _cmd_find_sic(args) -> int:
    fid = find_fiducial(args.d, seed=args.seed, restarts=args.restarts,
                        max_iters=args.max_iters,
                        target_residual=args.target_residual)
    entry = fiducial_to_json(fid)
    entry["converged"] = bool(fid.converged)
    _write_json(entry, args.out)
    print(f"d={args.d} residual={fid.residual:.6e} "
          f"{'converged' if fid.converged else 'NOT CONVERGED'}")
    if fid.converged:
        try:
            path = default_catalog_path()
            catalog = load_catalog(path)
            catalog[args.d] = fid
            save_catalog(catalog, path)
        except OSError:
            pass
        return 0
    return 1


def _verify_one(d: int, args) -> dict:
    ctx = _context(d, args)
    theorem_dev = verify_b_equals_q(ctx, samples=args.samples, seed=args.seed)
    rng = np.random.default_rng(args.seed + 1)
    norm_dev = 0.0
    p2_dev = 0.0
    target_norm2 = (d - 1.0) / (d + 1.0)
    target_p2 = 2.0 / (d * (d + 1.0))
    for _ in range(args.samples):
        rho = bloch.random_pure_state(d, rng)
        p = state_to_probabilities(rho, ctx)
        s = probabilities_to_point(p, ctx)
        norm_dev = max(norm_dev, abs(float(s @ s) - target_norm2))
        p2_dev = max(p2_dev, abs(float(p @ p) - target_p2))
    rep = geometry_report(d)
    return {
        "d": d,
        "samples": args.samples,
        "seed": args.seed,
        "R_out": rep.r_out,
        "R_in": rep.r_in,
        "R_pure": rep.r_pure,
        "m_pure": rep.m_pure,
        "sum_p2_pure": rep.sum_p2_pure,
        "max_theorem_deviation": theorem_dev,
        "max_pure_norm_deviation": norm_dev,
        "max_pure_sum_p2_deviation": p2_dev,
        "tolerance": args.tol,
        "passed": bool(max(theorem_dev, norm_dev, p2_dev) < args.tol),
    }


def _cmd_verify(args) -> int:
    dims = list(range(2, 6)) if args.all else [args.d]
    if dims == [None]:
        raise ValueError("verify needs --d or --all")
    results = [_verify_one(d, args) for d in dims]
    for res in results:
        print(f"d={res['d']}: max point-vs-Bloch deviation "
              f"{res['max_theorem_deviation']:.3e}, pure-sphere norm deviation "
              f"{res['max_pure_norm_deviation']:.3e}, sum p^2 deviation "
              f"{res['max_pure_sum_p2_deviation']:.3e} "
              f"[{'ok' if res['passed'] else 'FAILED'}]")
    if args.out:
        if args.format == "json":
            _write_json(results, args.out)
        else:
            rows = [{k: r[k] for k in VERIFY_CSV_COLUMNS} for r in results]
            _write_csv(VERIFY_CSV_COLUMNS, rows, args.out)
    return 0 if all(r["passed"] for r in results) else 1


def _read_state_file(obj: dict, ctx) -> np.ndarray:
    """Any of the four representations -> Bloch vector / simplex point."""
    if "rho" in obj:
        return bloch.to_bloch(bloch.state_from_json(obj), ctx.basis)
    if "bloch" in obj:
        r, _ = bloch.bloch_from_json(obj)
        return r
    if "probabilities" in obj:
        p = np.array(obj["probabilities"], dtype=float)
        return probabilities_to_point(p, ctx)
    if "point" in obj:
        s = np.array(obj["point"], dtype=float)
        if s.shape != (ctx.d ** 2 - 1,):
            raise ValueError(f"point length {s.shape} does not match d={ctx.d}")
        return s
    raise ValueError(
        "input file must contain one of: rho, bloch, probabilities, point")


def _cmd_convert(args) -> int:
    obj = _load_json(args.infile)
    d = int(obj["d"])
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    ctx = _context(d, args)
    s = _read_state_file(obj, ctx)
    if args.to == "rho":
        out = bloch.state_to_json(point_to_state(s, ctx))
    elif args.to == "bloch":
        out = bloch.bloch_to_json(s, d)
    elif args.to == "probabilities":
        p, inside = to_probabilities(s, ctx.frame)
        out = {"d": d, "probabilities": [float(x) for x in p], "inside": inside}
    else:
        out = {"d": d, "point": [float(x) for x in s]}
    _write_json(out, args.out)
    return 0


def _cmd_tomography(args) -> int:
    obj = _load_json(args.infile)
    d = int(obj["d"])
    ctx = _context(d, args)
    if "rho" in obj:
        rho = bloch.state_from_json(obj)
    elif "bloch" in obj:
        r, _ = bloch.bloch_from_json(obj)
        rho = point_to_state(r, ctx)
    else:
        raise ValueError("tomography input must contain rho or bloch")
    bloch.validate_density_matrix(rho)
    result = simulate_tomography(rho, ctx, shots=args.shots, seed=args.seed)
    row = {"shots": result.shots, "trace_distance": result.trace_distance,
           "seed": args.seed}
    _write_csv(TOMOGRAPHY_CSV_COLUMNS, [row], args.out)
    print(f"shots={args.shots} trace_distance={result.trace_distance:.6e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sic-simplex",
        description="SIC-POVM probability-simplex toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("geometry", help="radii and facet data for dimension d")
    p.add_argument("--d", type=_dim, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_geometry)

    p = sub.add_parser("find-sic", help="search for a SIC fiducial")
    p.add_argument("--d", type=_dim, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--max-iters", type=int, default=300)
    p.add_argument("--target-residual", type=float, default=1e-10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_find_sic)

    p = sub.add_parser("verify", help="check the point-vs-Bloch identity "
                                      "and pure-state laws numerically")
    p.add_argument("--d", type=_dim, default=None)
    p.add_argument("--all", action="store_true", help="sweep d = 2..5")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--fiducial", default=None,
                   help="fiducial catalog entry to use instead of the "
                        "builtin/catalog one")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("convert", help="convert between state representations")
    p.add_argument("--to", choices=["rho", "bloch", "probabilities", "point"],
                   required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fiducial", default=None)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("tomography", help="simulate SIC tomography of a state")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--shots", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fiducial", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_tomography)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
