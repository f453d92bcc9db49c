"""Run configuration read from a TOML file.

Sections: problem, grid, quadrature, surface, line, output.  Every key is
optional; see ``DEFAULT_TOML`` for the full schema with defaults.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .fields import FIELD_IDS

DEFAULT_TOML = """\
[problem]
sigma_l = 1.0        # line force; rho = sigma_l / (2 sigma_s)
sigma_s = 1.0
lambda = 1.0
mu = 1.0
b = 1.0
# a_prime = ...      # optional; must satisfy line equilibrium

[grid]
x = [0.0, 2.0]
y = [-2.0, 2.0]
nx = 41
ny = 81
exclusion_radius = 1e-3
quantities = ["u", "eps_xx", "eps_yy", "eps_xy", "sig_xx", "sig_yy", "sig_xy", "sig_zz"]

[quadrature]
r0 = 1.0
eps = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
radial_rule = 8
angular_rule = 8
angular_panels = 8
ratio = 2.0

[surface]            # optional extra checks on one patch
# patch = "sphere"
# params = { R = 2.0 }
# stress = { isotropic = 3.0 }    # or { matrix = [[1, 0], [0, 2]] }
# points = [[0.7, 1.1]]
# pressure = -3.0

# [[line]]           # optional extra line configurations
# phi_f = 1.0
# phi_fp = 2.0
# gamma_bf = 1.0
# gamma_bfp = 1.5
# gamma_ffp = 1.0

[output]
dir = "out"
"""


class ConfigError(ValueError):
    pass


@dataclass
class ProblemBlock:
    sigma_l: float = 1.0
    sigma_s: float = 1.0
    lam: float = 1.0
    mu: float = 1.0
    b: float = 1.0
    a_prime: float | None = None


@dataclass
class GridBlock:
    x: tuple = (0.0, 2.0)
    y: tuple = (-2.0, 2.0)
    nx: int = 41
    ny: int = 81
    exclusion_radius: float = 1e-3
    quantities: tuple = ("u",) + FIELD_IDS


@dataclass
class QuadratureBlock:
    r0: float = 1.0
    eps: tuple = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
    radial_rule: int = 8
    angular_rule: int = 8
    angular_panels: int = 8
    ratio: float = 2.0


@dataclass
class RunConfig:
    problem: ProblemBlock = field(default_factory=ProblemBlock)
    grid: GridBlock = field(default_factory=GridBlock)
    quadrature: QuadratureBlock = field(default_factory=QuadratureBlock)
    surface: dict = field(default_factory=dict)
    line: list = field(default_factory=list)
    out_dir: str = "out"

    def as_dict(self) -> dict:
        return {
            "problem": vars(self.problem),
            "grid": {**vars(self.grid), "x": list(self.grid.x), "y": list(self.grid.y),
                     "quantities": list(self.grid.quantities)},
            "quadrature": {**vars(self.quadrature), "eps": list(self.quadrature.eps)},
            "surface": self.surface,
            "line": self.line,
            "output": {"dir": self.out_dir},
        }


def _take(block: dict, section: str, schema: dict) -> dict:
    unknown = set(block) - set(schema)
    if unknown:
        raise ConfigError(f"[{section}]: unknown keys {sorted(unknown)}")
    out = {}
    for key, (attr, kind) in schema.items():
        if key in block:
            try:
                out[attr] = kind(block[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"[{section}] {key}: {exc}") from None
    return out


def _pair(v):
    v = tuple(float(a) for a in v)
    if len(v) != 2 or not v[0] <= v[1]:
        raise ValueError("expected [low, high]")
    return v


def from_dict(data: dict) -> RunConfig:
    known = {"problem", "grid", "quadrature", "surface", "line", "output"}
    if set(data) - known:
        raise ConfigError(f"unknown sections {sorted(set(data) - known)}")
    problem = ProblemBlock(**_take(data.get("problem", {}), "problem", {
        "sigma_l": ("sigma_l", float), "sigma_s": ("sigma_s", float),
        "lambda": ("lam", float), "mu": ("mu", float), "b": ("b", float),
        "a_prime": ("a_prime", float)}))
    grid = GridBlock(**_take(data.get("grid", {}), "grid", {
        "x": ("x", _pair), "y": ("y", _pair), "nx": ("nx", int), "ny": ("ny", int),
        "exclusion_radius": ("exclusion_radius", float),
        "quantities": ("quantities", lambda v: tuple(str(q) for q in v))}))
    quad = QuadratureBlock(**_take(data.get("quadrature", {}), "quadrature", {
        "r0": ("r0", float), "eps": ("eps", lambda v: tuple(float(e) for e in v)),
        "radial_rule": ("radial_rule", int), "angular_rule": ("angular_rule", int),
        "angular_panels": ("angular_panels", int), "ratio": ("ratio", float)}))
    out = _take(data.get("output", {}), "output", {"dir": ("dir", str)})
    line = data.get("line", [])
    if isinstance(line, dict):
        line = [line]
    cfg = RunConfig(problem, grid, quad, dict(data.get("surface", {})), list(line),
                    out.get("dir", "out"))
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    g, q = cfg.grid, cfg.quadrature
    if not g.exclusion_radius > 0:
        raise ConfigError("grid.exclusion_radius must be positive (strain and stress are singular at 0)")
    if g.nx < 1 or g.ny < 1:
        raise ConfigError("grid.nx and grid.ny must be >= 1")
    if g.x[0] < 0:
        raise ConfigError("grid.x must lie in x >= 0 (the body)")
    bad = [qn for qn in g.quantities if qn != "u" and qn not in FIELD_IDS]
    if bad:
        raise ConfigError(f"unknown grid quantities {bad}")
    if not q.eps:
        raise ConfigError("quadrature.eps must list at least one radius")
    if any(b >= a for a, b in zip(q.eps, q.eps[1:])):
        raise ConfigError("quadrature.eps must be strictly decreasing")
    if not all(0 < e < q.r0 for e in q.eps):
        raise ConfigError("every quadrature.eps must lie in (0, r0)")
    if q.radial_rule < 4 or q.angular_rule < 4 or q.angular_panels < 1 or not q.ratio > 1:
        raise ConfigError("quadrature node counts must be >= 4 and ratio > 1")
    for v in vars(cfg.problem).values():
        if v is not None and not math.isfinite(v):
            raise ConfigError("problem values must be finite")


def load(path) -> RunConfig:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    return from_dict(data)


def loads(text: str) -> RunConfig:
    try:
        return from_dict(tomllib.loads(text))
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from None
