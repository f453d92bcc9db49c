"""Command line front-end.

    elastocap field  [--config FILE] [--out DIR]
    elastocap verify [--config FILE] [--out DIR] [--only SUITE] [--tolerance-scale F]

Exit codes: 0 success, 1 failing criterion, 2 invalid configuration or
infeasible load, 3 numerical-domain error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import platform
import sys
from importlib import metadata
from pathlib import Path

import numpy as np

from . import config as cfgmod
from . import contact_line as cl
from . import kernels
from . import surface as sf
from . import suite
from .errors import DomainError, InconsistentLoadError, InfeasibleError
from .fields import scaled_field_arrays
from .problem import build_problem

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_DOMAIN = 0, 1, 2, 3


def _num(v) -> str:
    return format(float(v) + 0.0, ".17g")  # no "-0"


def _versions() -> dict:
    try:
        pkg = metadata.version("artifact")
    except metadata.PackageNotFoundError:
        pkg = "unknown"
    return {"package": pkg, "numpy": np.__version__, "python": platform.python_version(),
            "backend": kernels.BACKEND}


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, str) else _num(v) for v in row])


def _write_json(path: Path, data) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def _table_csv(path: Path, table: list) -> None:
    header = list(table[0])
    _write_csv(path, header, ([row[k] for k in header] for row in table))


def grid_points(g: cfgmod.GridBlock):
    """All grid points in y-major order and a mask of the kept ones."""
    xs = np.linspace(g.x[0], g.x[1], g.nx) if g.nx > 1 else np.array([g.x[0]])
    ys = np.linspace(g.y[0], g.y[1], g.ny) if g.ny > 1 else np.array([g.y[0]])
    z = (xs[None, :] + 1j * ys[:, None]).ravel()
    return z, np.abs(z) >= g.exclusion_radius


def cmd_field(cfg: cfgmod.RunConfig, out: Path) -> int:
    p = cfg.problem
    m, prob = build_problem(p.sigma_l, p.sigma_s, p.lam, p.mu, p.a_prime, p.b)
    z, keep = grid_points(cfg.grid)
    zk = z[keep]
    values = scaled_field_arrays(prob, m, zk)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for q in cfg.grid.quantities:
        path = out / f"{q}.csv"
        v = values[q]
        if np.iscomplexobj(v):
            rows = zip(zk.real, zk.imag, v.real, v.imag)
            _write_csv(path, ["x", "y", "re", "im"], rows)
        else:
            _write_csv(path, ["x", "y", "value"], zip(zk.real, zk.imag, v))
        files.append(path.name)
    _write_json(out / "manifest.json", {
        "command": "field",
        "inputs": cfg.as_dict(),
        "derived": {"k": m.k, "a_prime": prob.a_prime, "a": prob.a(m), "phi": prob.phi,
                    "rho": prob.rho},
        "versions": _versions(),
        "files": files,
        "rows_per_file": int(keep.sum()),
        "excluded_points": [[_num(w.real), _num(w.imag)] for w in z[~keep]],
    })
    print(f"wrote {len(files)} field files ({int(keep.sum())} rows each, "
          f"{int((~keep).sum())} points excluded) to {out}")
    return EXIT_OK


def suite_config(cfg: cfgmod.RunConfig, tolerance_scale: float) -> suite.SuiteConfig:
    p, q = cfg.problem, cfg.quadrature
    return suite.SuiteConfig(
        lam=p.lam, mu=p.mu, sigma_s=p.sigma_s, rho=p.sigma_l / (2.0 * p.sigma_s), b=p.b,
        r0=q.r0, eps_schedule=tuple(q.eps), radial_rule=q.radial_rule,
        angular_rule=q.angular_rule, angular_panels=q.angular_panels, ratio=q.ratio,
        tolerance_scale=tolerance_scale)


def _run_criterion(n: int, scfg: suite.SuiteConfig) -> suite.CriterionResult:
    try:
        return suite.run(scfg, only=str(n))[0]
    except (ArithmeticError, RuntimeError) as exc:
        return suite.CriterionResult(n, suite.NAMES[n], False, math.nan, math.nan,
                                     f"{type(exc).__name__}: {exc}")


def surface_checks(block: dict) -> list:
    if not block:
        return []
    patch = sf.make_patch(block.get("patch", "plane"), **block.get("params", {}))
    stress = block.get("stress", {"matrix": [[1.0, 0.0], [0.0, 1.0]]})
    if "isotropic" in stress:
        s = sf.SurfaceStressField.isotropic_field(patch, float(stress["isotropic"]))
    else:
        s = sf.SurfaceStressField.constant(stress["matrix"])
    env = sf.SurfaceEnvironment(pressure=float(block.get("pressure", 0.0)))
    rows = []
    for at in block.get("points", [[0.5, 0.5]]):
        d = sf.divergence_decomposition(patch, s, at)
        r = sf.surface_equilibrium_residual(patch, s, env, at)
        rows.append({"u": at[0], "v": at[1], "identity_residual": d.identity_residual,
                     "normal_part": float(np.linalg.norm(d.normal_part)),
                     "tangential_part": float(np.linalg.norm(d.tangential_part)),
                     "residual_normal": r.normal,
                     "residual_tangential": float(np.linalg.norm(r.tangential))})
    return rows


def line_checks(entries: list) -> list:
    rows = []
    for i, e in enumerate(entries):
        e = dict(e)
        c = cl.LineConfig.from_angles(e.pop("phi_f"), e.pop("phi_fp"), **e)
        row = {"index": i, "line_force": float(np.linalg.norm(cl.line_force_residual(c)))}
        for form in cl.FORMS:
            row[f"form_{form}"] = cl.modified_young_residual(c, form)
        row["classical_young"] = cl.classical_young_residual(c)
        rows.append(row)
    return rows


def cmd_verify(cfg: cfgmod.RunConfig, out: Path, only: str | None, tolerance_scale: float) -> int:
    p = cfg.problem
    build_problem(p.sigma_l, p.sigma_s, p.lam, p.mu, p.a_prime, p.b)
    scfg = suite_config(cfg, tolerance_scale)
    numbers = suite.select(only)
    extra_surface = surface_checks(cfg.surface)
    extra_line = line_checks(cfg.line)
    results = [_run_criterion(n, scfg) for n in numbers]
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "summary.csv", ["criterion", "name", "status", "value", "tolerance", "detail"],
               ([str(r.number), r.name, r.status, r.value, r.tolerance, r.detail] for r in results))
    tables = []
    for r in results:
        if r.table:
            name = f"criterion_{r.number:02d}.csv"
            _table_csv(out / name, r.table)
            tables.append(name)
    if extra_surface:
        _table_csv(out / "surface_checks.csv", extra_surface)
    if extra_line:
        _table_csv(out / "line_checks.csv", extra_line)
    _write_json(out / "manifest.json", {
        "command": "verify",
        "inputs": cfg.as_dict(),
        "only": only,
        "tolerance_scale": tolerance_scale,
        "versions": _versions(),
        "criteria": [{"number": r.number, "name": r.name, "status": r.status,
                      "value": _num(r.value), "tolerance": _num(r.tolerance)} for r in results],
        "tables": tables,
    })
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    for r in failed:
        print(f"failing criterion {r.number}: {r.name}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML run configuration")
    common.add_argument("--out", type=Path, help="output directory (overrides [output] dir)")
    parser = argparse.ArgumentParser(prog="elastocap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("field", parents=[common], help="evaluate displacement, strain and stress on a grid")
    v = sub.add_parser("verify", parents=[common], help="run the acceptance criteria")
    v.add_argument("--only", help=f"suite ({', '.join(suite.SUITES)}) or comma list of numbers")
    v.add_argument("--tolerance-scale", type=float, default=1.0,
                   help="multiply every numeric tolerance by this factor")
    sub.add_parser("default-config", help="print a commented default configuration")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "default-config":
        sys.stdout.write(cfgmod.DEFAULT_TOML)
        return EXIT_OK
    try:
        cfg = cfgmod.load(args.config) if args.config else cfgmod.RunConfig()
        out = args.out or Path(cfg.out_dir)
        if args.command == "field":
            return cmd_field(cfg, out)
        if not args.tolerance_scale > 0:
            raise cfgmod.ConfigError("--tolerance-scale must be positive")
        return cmd_verify(cfg, out, args.only, args.tolerance_scale)
    except (cfgmod.ConfigError, InfeasibleError, InconsistentLoadError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"numerical domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, TypeError) as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
