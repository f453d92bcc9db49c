"""The twelve acceptance checks, runnable individually or by suite."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import contact_line as cl
from . import surface as sf
from .fields import displacement_array, field_arrays, ray_limit
from .potentials import GUARD_RADIUS, Material, eval_F_chain, eval_F_closed
from .problem import build_problem
from .quadrature import QuadratureSpec
from .verification import (VariationField, elastic_energy, equilibrium_residual_fd,
                           green_residual, line_integral_decay, sobolev_diagnostics)

SUITES = {
    "potentials": (1, 2),
    "fields": (3, 4, 5),
    "energy": (6,),
    "green": (7, 8),
    "sobolev": (9,),
    "surface": (10, 11),
    "line": (12,),
}

NAMES = {
    1: "potential continuity",
    2: "dual-route equivalence",
    3: "boundary condition",
    4: "directional strain limits",
    5: "interior equilibrium",
    6: "finite energy",
    7: "Green exactness on V_eps",
    8: "line-integral vanishing",
    9: "Sobolev picture",
    10: "surface calculus",
    11: "transform work invariance",
    12: "line equations",
}


@dataclass
class SuiteConfig:
    lam: float = 1.0
    mu: float = 1.0
    sigma_s: float = 1.0
    rho: float = 0.5
    b: float = 1.0
    r0: float = 1.0
    eps_schedule: tuple = (1e-2, 1e-3, 1e-4, 1e-5, 1e-6)
    radial_rule: int = 8
    angular_rule: int = 8
    angular_panels: int = 8
    ratio: float = 2.0
    seed: int = 20130101
    tolerance_scale: float = 1.0

    @property
    def material(self) -> Material:
        return Material(self.lam, self.mu)

    def quadrature(self, eps: float | None = None) -> QuadratureSpec:
        return QuadratureSpec(r0=self.r0, eps=eps or min(self.eps_schedule),
                              radial_rule=self.radial_rule, angular_rule=self.angular_rule,
                              angular_panels=self.angular_panels, ratio=self.ratio)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""
    skipped: bool = False
    seconds: float = 0.0
    table: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")

    def line(self) -> str:
        return (f"[{self.status}] criterion {self.number:2d} {self.name}: "
                f"value={self.value:.3e} tol={self.tolerance:.3e} {self.detail}").rstrip()


def _result(n, passed, value, tol, detail="", table=None):
    return CriterionResult(n, NAMES[n], bool(passed), float(value), float(tol), detail,
                           table=table or [])


def _skip(n, why):
    return CriterionResult(n, NAMES[n], True, math.nan, math.nan, why, skipped=True)


def _rel(a, b):
    den = max(abs(a), abs(b))
    return 0.0 if den == 0 else abs(a - b) / den


# --------------------------------------------------------------------------


def criterion_1(cfg: SuiteConfig) -> CriterionResult:
    m = cfg.material
    tol = 1e-6 * cfg.tolerance_scale
    worst = 0.0
    for t in np.linspace(-0.5 * math.pi, 0.5 * math.pi, 5):
        z = 1e-8 * complex(math.cos(t), math.sin(t))
        worst = max(worst, abs(m.k * eval_F_chain(z, m).F[0] - 0.5))
    return _result(1, worst <= tol, worst, tol, "|kF - 1/2| at |z| = 1e-8, 5 rays")


def dual_route_grid(n: int = 1000) -> np.ndarray:
    x = np.geomspace(1e-4, 3.0, 25)
    y = np.linspace(-3.0, 3.0, 40)
    z = (x[:, None] + 1j * y[None, :]).ravel()
    keep = (np.abs(z - 1j) > GUARD_RADIUS) & (np.abs(z + 1j) > GUARD_RADIUS)
    z = z[keep]
    # top up to n points on a ring avoiding the guard discs
    extra = n - z.size
    if extra > 0:
        t = np.linspace(-1.4, 1.4, extra)
        z = np.concatenate([z, 2.0 * np.exp(1j * t)])
    return z[:n]


def criterion_2(cfg: SuiteConfig) -> CriterionResult:
    m = cfg.material
    tol = 1e-10 * cfg.tolerance_scale
    worst = 0.0
    for z in dual_route_grid():
        a = eval_F_closed(z, m).F
        b = eval_F_chain(z, m, fallback=False).F
        worst = max(worst, *(_rel(a[j], b[j]) for j in range(3)))
    return _result(2, worst <= tol, worst, tol, "max relative deviation of F, F', F''")


def criterion_3(cfg: SuiteConfig) -> CriterionResult:
    m, p = build_problem(2 * cfg.rho * cfg.sigma_s, cfg.sigma_s, cfg.lam, cfg.mu, b=cfg.b)
    a = p.a(m)
    y = np.geomspace(1e-6, 1e3, 500) * p.b
    y = np.concatenate([y, -y])
    u = p.a_prime * displacement_array(1j * y / p.b, m)
    scale = a / p.b
    dev = max(float(np.abs(u.imag).max()), float(np.abs(u.real + a / (np.abs(y) + p.b)).max()))
    tol = 1e-10 * cfg.tolerance_scale
    return _result(3, dev <= tol * scale, dev / scale, tol,
                   f"u(iy) = -a/(|y|+b) on 1000 points, a = {a:.6g}")


def criterion_4(cfg: SuiteConfig) -> CriterionResult:
    m = cfg.material
    tol = 1e-4 * cfg.tolerance_scale
    thetas = [0.0, math.pi / 4, -math.pi / 4, math.pi / 2 - 0.01, -(math.pi / 2 - 0.01)]
    worst = 0.0
    for t in thetas:
        f = field_arrays(np.array([1e-6 * complex(math.cos(t), math.sin(t))]), m)
        for key in ("eps_yy", "eps_xy", "sig_xy"):
            worst = max(worst, abs(float(f[key][0]) - ray_limit(t, m, key)))
    return _result(4, worst <= tol, worst, tol, "eps_yy, eps_xy, sig_xy at r = 1e-6")


def fd_points(n: int = 20) -> np.ndarray:
    r = np.geomspace(0.05, 3.0, n)
    t = np.linspace(-1.3, 1.3, n)[np.argsort(np.sin(np.arange(n)))]
    return r * np.exp(1j * t)


def criterion_5(cfg: SuiteConfig) -> CriterionResult:
    m = cfg.material
    tol = 1e-6 * cfg.tolerance_scale
    worst, min_order = 0.0, math.inf
    for z in fd_points():
        f = field_arrays(np.array([z]), m)
        # residual has units stress / length: step and scale follow |z|
        scale = max(abs(float(f[k][0])) for k in ("sig_xx", "sig_yy", "sig_xy")) / abs(z)
        res = np.linalg.norm(equilibrium_residual_fd(z, 1e-4 * abs(z), m))
        worst = max(worst, res / scale)
        h = 2e-3 * abs(z)
        r1 = np.linalg.norm(equilibrium_residual_fd(z, h, m))
        r2 = np.linalg.norm(equilibrium_residual_fd(z, 0.5 * h, m))
        min_order = min(min_order, math.log2(r1 / r2))
    ok = worst <= tol and min_order >= 1.9
    return _result(5, ok, worst, tol, f"20 points, min observed order {min_order:.3f} (>= 1.9)")


def criterion_6(cfg: SuiteConfig) -> CriterionResult:
    if len(cfg.eps_schedule) < 2:
        return _skip(6, "eps schedule has one entry")
    m = cfg.material
    vals = [elastic_energy(m, cfg.quadrature(e)).value for e in cfg.eps_schedule]
    diffs = np.abs(np.diff(vals))
    cauchy = bool(np.all(diffs[1:] <= diffs[:-1]))
    last = diffs[-1] / vals[-1]
    tol = 1e-3 * cfg.tolerance_scale
    table = [{"eps": e, "energy": v} for e, v in zip(cfg.eps_schedule, vals)]
    return _result(6, cauchy and last <= tol, last, tol,
                   f"E = {vals[-1]:.12g}, differences shrinking: {cauchy}", table)


def variation_fields(cfg: SuiteConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    c = rng.normal(size=(2, 6))
    return {
        "bump-polynomial": VariationField.bump_polynomial(c, cfg.r0),
        "bump-times-solution": VariationField.bump_times_solution(cfg.material, cfg.r0),
    }


def criterion_7(cfg: SuiteConfig) -> CriterionResult:
    m = cfg.material
    worst, table = 0.0, []
    for name, w in variation_fields(cfg).items():
        for eps in (1e-2, 1e-3):
            g = green_residual(m, w, cfg.quadrature(eps))
            worst = max(worst, abs(g.residual) / g.error_estimate)
            table.append({"family": name, **g.as_row()})
    tol = 3.0 * cfg.tolerance_scale
    return _result(7, worst <= tol, worst, tol, "max |residual| / error estimate", table)


def criterion_8(cfg: SuiteConfig) -> CriterionResult:
    if len(cfg.eps_schedule) < 2:
        return _skip(8, "eps schedule has one entry")
    m = cfg.material
    slack = 0.05 * cfg.tolerance_scale
    bound_ratio, fit_ratio, ok, table = 0.0, 0.0, True, []
    for name, w in variation_fields(cfg).items():
        d = line_integral_decay(m, w, cfg.eps_schedule, cfg.quadrature(), slack=math.inf)
        bound_ratio = max(bound_ratio, d.worst_ratio)
        fit_ratio = max(fit_ratio, d.stress_fit_ratio)
        ok &= d.decreasing
        table += [{"family": name, **row} for row in d.rows()]
    worst = max(bound_ratio, fit_ratio)
    passed = ok and worst <= 1.0 + slack
    return _result(8, passed, worst, 1.0 + slack,
                   f"integral/bound {bound_ratio:.3g}, stress envelope/fit {fit_ratio:.4g}, "
                   f"monotone decrease: {ok}", table)


def criterion_9(cfg: SuiteConfig) -> CriterionResult:
    if len(cfg.eps_schedule) < 2:
        return _skip(9, "eps schedule has one entry")
    m = cfg.material
    rep = sobolev_diagnostics(m, cfg.eps_schedule, cfg.quadrature(), require_divergence=False)
    conv = rep.l2_sigma_converging
    rel = rep.slope_rel_error
    tol = 0.2 * cfg.tolerance_scale
    ok = rep.slope > 0 and rel <= tol and all(conv.values()) and rep.l1_converging
    return _result(9, ok, rel, tol,
                   f"slope {rep.slope:.5f} vs oracle {rep.oracle_slope:.5f}; "
                   f"L2 convergent {all(conv.values())}, L1 convergent {rep.l1_converging}",
                   rep.rows())


def random_polynomial_stress(rng, degree: int = 2) -> sf.SurfaceStressField:
    c = rng.normal(size=(2, 2, degree + 1, degree + 1))
    c[1, 0] = c[0, 1]
    return sf.SurfaceStressField.polynomial(c)


def criterion_10(cfg: SuiteConfig) -> CriterionResult:
    rng = np.random.default_rng(cfg.seed + 10)
    patches = [
        (sf.graph(0.3 * rng.normal(size=(3, 3))), ((-0.9, 0.9), (-0.9, 0.9))),
        (sf.sphere(1.5), ((0.3, math.pi - 0.3), (0.0, 2 * math.pi))),
        (sf.cylinder(2.0), ((0.0, 2 * math.pi), (-1.0, 1.0))),
        (sf.plane(), ((-1.0, 1.0), (-1.0, 1.0))),
    ]
    worst_id = 0.0
    for i in range(50):
        patch, box = patches[i % len(patches)]
        at = [rng.uniform(*box[0]), rng.uniform(*box[1])]
        d = sf.divergence_decomposition(patch, random_polynomial_stress(rng), at, tol=math.inf)
        worst_id = max(worst_id, d.identity_residual)
    worst_lap = 0.0
    for R, sig in ((1.0, 1.0), (2.0, 3.0), (0.5, 0.7)):
        for patch, curv in ((sf.sphere(R), 2.0 / R), (sf.cylinder(R), 1.0 / R)):
            s = sf.SurfaceStressField.isotropic_field(patch, sig)
            env = sf.SurfaceEnvironment(pressure=-sig * curv)
            for at in ((0.7, 1.1), (2.0, 0.3)):
                r = sf.surface_equilibrium_residual(patch, s, env, at)
                worst_lap = max(worst_lap, float(np.abs(r.vector).max()))
    t_id, t_lap = 1e-8 * cfg.tolerance_scale, 1e-10 * cfg.tolerance_scale
    ok = worst_id <= t_id and worst_lap <= t_lap
    return _result(10, ok, worst_id, t_id,
                   f"Laplace residual {worst_lap:.2e} (tol {t_lap:.0e})")


def criterion_11(cfg: SuiteConfig) -> CriterionResult:
    rng = np.random.default_rng(cfg.seed + 11)
    worst = 0.0
    for _ in range(100):
        while True:
            phi = rng.normal(size=(2, 2)) + 2.0 * np.eye(2)
            if abs(np.linalg.det(phi)) > 0.1:
                break
        L = rng.normal(size=(2, 2))
        gp = L @ L.T + np.eye(2)
        L = rng.normal(size=(2, 2))
        gr = L @ L.T + np.eye(2)
        t = sf.TransformData(phi, gr, gp)
        s = rng.normal(size=(2, 2))
        s = s + s.T
        de = rng.normal(size=(2, 2))
        de = de + de.T
        lhs = sf.work_density(sf.stress_transform(t, s), sf.strain_transform(t, de)) / t.A
        rhs = sf.work_density(s, de)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    tol = 1e-12 * cfg.tolerance_scale
    return _result(11, worst <= tol, worst, tol, "100 random transforms")


def random_line_configs(rng, n: int = 50) -> list:
    out = []
    while len(out) < n:
        a = rng.uniform(0.1, math.pi - 0.1, 2)
        phi_b = 2 * math.pi - a.sum()
        if not 0.1 < phi_b < math.pi - 0.1:
            continue
        c = cl.LineConfig.from_angles(
            a[0], a[1], gamma_bf=rng.uniform(0.5, 2), gamma_bfp=rng.uniform(0.5, 2),
            gamma_ffp=rng.uniform(0.5, 2), sigma_bf_tn=rng.normal(),
            a_nn=rng.uniform(0.5, 2), a_tn=rng.normal())
        out.append(cl.equilibrium_stresses(c))
    return out


def criterion_12(cfg: SuiteConfig) -> CriterionResult:
    sym = cl.symmetric_config(cfg.sigma_s, 2 * cfg.rho * cfg.sigma_s)
    r_sym = float(np.linalg.norm(cl.line_force_residual(sym)))
    young = cl.LineConfig.from_angles(math.pi / 3, math.pi - math.pi / 3 + 1e-6,
                                      gamma_bf=1.0, gamma_bfp=1.5, gamma_ffp=1.0)
    r_young = abs(cl.modified_young_residual(young, "2c") - cl.classical_young_residual(young))
    worst = 0.0
    for c in random_line_configs(np.random.default_rng(cfg.seed + 12)):
        r = [cl.modified_young_residual(c, f) for f in cl.FORMS]
        worst = max(worst, abs(r[0] - r[1]), abs(r[1] - r[2]), abs(r[0] - r[2]))
    s = cfg.tolerance_scale
    ok = r_sym <= 1e-12 * s and r_young <= 1e-6 * s and worst <= 1e-10 * s
    return _result(12, ok, worst, 1e-10 * s,
                   f"symmetric {r_sym:.1e} (tol 1e-12), Young recovery {r_young:.1e} (tol 1e-6)")


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 13)}


def select(only: str | None) -> list:
    """Criterion numbers for a suite name, a comma list of numbers, or all."""
    if not only:
        return list(CRITERIA)
    out = []
    for part in only.split(","):
        part = part.strip()
        if part in SUITES:
            out += SUITES[part]
        elif part.isdigit() and int(part) in CRITERIA:
            out.append(int(part))
        else:
            raise KeyError(f"unknown suite {part!r}; choose from {sorted(SUITES)} or 1-12")
    return sorted(set(out))


def run(cfg: SuiteConfig | None = None, only: str | None = None) -> list:
    cfg = cfg or SuiteConfig()
    results = []
    for n in select(only):
        t0 = time.perf_counter()
        r = CRITERIA[n](cfg)
        r.seconds = time.perf_counter() - t0
        results.append(r)
    return results
