"""Quadrature checks of energy finiteness, Green's formula and regularity.

All integrals are per unit out-of-plane length times ``l0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import ConvergenceError, DomainError, FitError, SlopeSignError
from .fields import displacement_array, field_arrays, stress_gradient_arrays
from .potentials import Material
from .quadrature import QuadratureSpec

EPS_MACH = np.finfo(float).eps


def _roundoff(abs_integral: float, n: int) -> float:
    # pairwise summation plus per-node evaluation error
    return (4.0 + math.log2(max(n, 2))) * EPS_MACH * abs_integral


# --------------------------------------------------------------------------
# variation fields w with w = 0 on |z| = r0


class VariationField:
    """Admissible variation w = chi(r) p(x, y), chi = (1 - (r/r0)**2)**3.

    ``family`` is ``"bump-polynomial"`` (p quadratic, coefficients of
    1, x, y, x**2, xy, y**2 for each component) or ``"bump-times-solution"``
    (p = the displacement of the half-space solution).  Calling the field
    returns ``(w, Dw)`` with shapes (2, n) and (2, 2, n), Dw[i, j] = d_j w_i.
    """

    def __init__(self, family: str, r0: float = 1.0, coeffs=None,
                 material: Material | None = None):
        if family not in ("bump-polynomial", "bump-times-solution"):
            raise ValueError(f"unknown family {family!r}")
        self.family = family
        self.r0 = float(r0)
        if family == "bump-polynomial":
            c = np.zeros((2, 6)) if coeffs is None else np.asarray(coeffs, dtype=float)
            if c.shape != (2, 6):
                raise ValueError("polynomial coefficients must have shape (2, 6)")
            self.coeffs = c
        else:
            if material is None:
                raise ValueError("bump-times-solution needs a material")
            self.material = material

    @classmethod
    def bump_polynomial(cls, coeffs, r0=1.0):
        return cls("bump-polynomial", r0, coeffs=coeffs)

    @classmethod
    def bump_times_solution(cls, material, r0=1.0):
        return cls("bump-times-solution", r0, material=material)

    @classmethod
    def zero(cls, r0=1.0):
        return cls("bump-polynomial", r0)

    def _cutoff(self, z):
        x, y = z.real, z.imag
        s2 = (x * x + y * y) / self.r0**2
        inside = s2 < 1.0
        base = np.where(inside, 1.0 - s2, 0.0)
        chi = base**3
        dchi = -6.0 * base**2 / self.r0**2
        return chi, dchi * x, dchi * y

    def _profile(self, z):
        x, y = z.real, z.imag
        if self.family == "bump-polynomial":
            c = self.coeffs
            basis = np.stack([np.ones_like(x), x, y, x * x, x * y, y * y])
            p = c @ basis
            px = c[:, 1:2] + 2.0 * c[:, 3:4] * x + c[:, 4:5] * y
            py = c[:, 2:3] + c[:, 4:5] * x + 2.0 * c[:, 5:6] * y
            return p, px, py
        f = field_arrays(z, self.material)
        p = np.stack([f["u"].real, f["u"].imag])
        px = np.stack([f["dxux"], f["dxuy"]])
        py = np.stack([f["dyux"], f["dyuy"]])
        return p, px, py

    def __call__(self, z):
        z = np.asarray(z, dtype=complex).ravel()
        chi, cx, cy = self._cutoff(z)
        p, px, py = self._profile(z)
        w = chi * p
        Dw = np.empty((2, 2, z.size))
        Dw[:, 0] = cx * p + chi * px
        Dw[:, 1] = cy * p + chi * py
        return w, Dw

    def values(self, z):
        """w only; unlike __call__ this is also defined at z = 0."""
        z = np.asarray(z, dtype=complex).ravel()
        chi, _, _ = self._cutoff(z)
        if self.family == "bump-polynomial":
            return chi * self._profile(z)[0]
        u = displacement_array(z, self.material)
        return chi * np.stack([u.real, u.imag])

    def sup_norm(self, n: int = 201) -> float:
        """max_i sup |w_i| over the closed half-disc, sampled."""
        r = np.linspace(0.0, self.r0, n)
        t = np.linspace(-0.5 * math.pi, 0.5 * math.pi, n)
        z = (r[:, None] * np.exp(1j * t[None, :])).ravel()
        return float(np.abs(self.values(z)).max())


# --------------------------------------------------------------------------
# energy


@dataclass
class EnergyResult:
    value: float
    error_estimate: float
    eps: float


def energy_density(f: dict, m: Material) -> np.ndarray:
    exx, eyy, exy = f["eps_xx"], f["eps_yy"], f["eps_xy"]
    return 0.5 * m.lam * (exx + eyy) ** 2 + m.mu * (exx**2 + eyy**2 + 2.0 * exy**2)


def _energy_once(m: Material, q: QuadratureSpec):
    z, w = q.polar()
    return float(np.sum(w * energy_density(field_arrays(z, m), m))) * q.l0


def elastic_energy(m: Material, q: QuadratureSpec, tol: float = 1e-8) -> EnergyResult:
    """Elastic energy of the solution in V_eps with a panel-halving error estimate.

    Raises ConvergenceError when halving every panel moves the value by
    more than 10 * tol (relative).
    """
    coarse = _energy_once(m, q)
    fine = _energy_once(m, q.refined())
    err = abs(fine - coarse)
    if err > 10.0 * tol * abs(fine):
        raise ConvergenceError(
            f"energy at eps={q.eps}: refinement changed value by {err:.3e} (> 10 * {tol:g} relative)")
    return EnergyResult(fine, err, q.eps)


# --------------------------------------------------------------------------
# Green's formula on V_eps


@dataclass
class GreenTerms:
    """Terms of Green's formula on V_eps (normals pointing into V_eps).

    ``residual = volume + divergence + sides + arc`` vanishes exactly.
    """

    eps: float
    volume: float  # int tr(sigma . Dw)
    divergence: float  # int div(sigma) . w
    sides: float  # int over S_eps u S'_eps of (sigma . w) . n
    arc: float  # int over C_eps of (sigma . w) . n
    residual: float
    error_estimate: float

    def as_row(self) -> dict:
        return {k: getattr(self, k) for k in
                ("eps", "volume", "divergence", "sides", "arc", "residual", "error_estimate")}


def _traction_work(f: dict, w: np.ndarray, n: np.ndarray) -> np.ndarray:
    """(sigma . w) . n for unit normals given as complex numbers."""
    nx, ny = n.real, n.imag
    sx = f["sig_xx"] * w[0] + f["sig_xy"] * w[1]
    sy = f["sig_xy"] * w[0] + f["sig_yy"] * w[1]
    return sx * nx + sy * ny


def _green_terms(m: Material, wf: VariationField, q: QuadratureSpec):
    z, wt = q.polar()
    f = field_arrays(z, m)
    g = stress_gradient_arrays(z, m)
    w, Dw = wf(z)
    vol = (f["sig_xx"] * Dw[0, 0] + f["sig_xy"] * (Dw[0, 1] + Dw[1, 0])
           + f["sig_yy"] * Dw[1, 1])
    div = ((g["dx_sxx"] + g["dy_sxy"]) * w[0] + (g["dx_sxy"] + g["dy_syy"]) * w[1])

    zs, ws = q.sides()
    fs = field_arrays(zs, m)
    side = _traction_work(fs, wf.values(zs), np.ones_like(zs))

    za, wa, na = q.arc()
    fa = field_arrays(za, m)
    arc = _traction_work(fa, wf.values(za), na)

    terms = np.array([np.sum(wt * vol), np.sum(wt * div), np.sum(ws * side), np.sum(wa * arc)])
    absint = np.array([np.sum(np.abs(wt * vol)), np.sum(np.abs(wt * div)),
                       np.sum(np.abs(ws * side)), np.sum(np.abs(wa * arc))])
    sizes = np.array([z.size, z.size, zs.size, za.size])
    floor = sum(_roundoff(a, n) for a, n in zip(absint, sizes))
    return terms * q.l0, floor * q.l0


def green_residual(m: Material, w: VariationField, q: QuadratureSpec,
                   tol: float = 1e-8) -> GreenTerms:
    """All four terms of Green's formula on V_eps and their signed sum.

    ``div(sigma)`` uses the analytic F''/F''' forms.  The error estimate is
    the sum over terms of the panel-halving change plus a summation
    round-off floor.
    """
    coarse, _ = _green_terms(m, w, q)
    fine, floor = _green_terms(m, w, q.refined())
    delta = float(np.sum(np.abs(fine - coarse)))
    scale = float(np.sum(np.abs(fine)))
    if delta > 10.0 * tol * max(scale, 1e-300) and scale > 0:
        raise ConvergenceError(f"Green terms at eps={q.eps} not converged: change {delta:.3e}")
    return GreenTerms(q.eps, *map(float, fine), residual=float(np.sum(fine)),
                      error_estimate=delta + floor)


def green_schedule(m: Material, w: VariationField, q: QuadratureSpec, eps_schedule) -> list:
    return [green_residual(m, w, q.with_eps(e)) for e in eps_schedule]


# --------------------------------------------------------------------------
# fitted bounds


@dataclass
class BoundFit:
    c: float
    d: float
    worst_ratio: float  # max over samples of value / (c x + d)

    def __call__(self, x):
        return self.c * np.asarray(x) + self.d


def fit_bound(x, values) -> BoundFit:
    """Fit values <= c x + d (c, d > 0) by relative least squares.

    ``x`` is |log r| for logarithmic bounds or 1/r for inverse bounds.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(values, dtype=float)
    A = np.stack([x, np.ones_like(x)], axis=1) / v[:, None]
    (c, d), *_ = np.linalg.lstsq(A, np.ones_like(v), rcond=None)
    c, d = max(c, 0.0), max(d, 0.0)
    if c == 0.0 and d == 0.0:
        d = float(v.max())
    ratio = float(np.max(v / (c * x + d)))
    return BoundFit(float(c), float(d), ratio)


def annulus_envelope(func, r, n_theta: int = 181) -> np.ndarray:
    """max over theta in [-pi/2, pi/2] of func(z) at each radius."""
    t = np.linspace(-0.5 * math.pi, 0.5 * math.pi, n_theta)
    z = np.asarray(r)[:, None] * np.exp(1j * t)[None, :]
    return np.asarray(func(z.ravel())).reshape(z.shape).max(axis=1)


def stress_sum_envelope(m: Material, r) -> np.ndarray:
    """max_theta (|sig_xx| + 2 |sig_xy| + |sig_yy|) on circles of radius r."""
    def total(z):
        f = field_arrays(z, m)
        return np.abs(f["sig_xx"]) + 2.0 * np.abs(f["sig_xy"]) + np.abs(f["sig_yy"])
    return annulus_envelope(total, r)


# --------------------------------------------------------------------------
# vanishing of the line contribution


@dataclass
class DecayTable:
    eps: list
    integral: list  # |int over C_eps of (sigma . w) . n|
    bound: list
    c: float
    d: float
    e: float
    stress_fit_ratio: float
    worst_ratio: float  # max integral / bound

    @property
    def decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.integral, self.integral[1:]))

    def rows(self):
        return [{"eps": e, "arc_integral": i, "bound": b}
                for e, i, b in zip(self.eps, self.integral, self.bound)]


def arc_integral(m: Material, w: VariationField, eps: float, q: QuadratureSpec) -> float:
    za, wa, na = q.arc(eps)
    f = field_arrays(za, m)
    return float(np.sum(wa * _traction_work(f, w.values(za), na))) * q.l0


def line_integral_decay(m: Material, w: VariationField, eps_schedule,
                        q: QuadratureSpec | None = None, fit_range=(1e-6, 1e-1),
                        slack: float = 0.05) -> DecayTable:
    """|int_{C_eps}| against (c |log eps| + d) e pi eps l0.

    c, d bound max_theta sum_ij |sigma_ij| on circles (fitted on
    ``fit_range`` extended down to the smallest eps); e = max_i sup |w_i|.
    """
    eps_schedule = [float(e) for e in eps_schedule]
    if any(b >= a for a, b in zip(eps_schedule, eps_schedule[1:])):
        raise ValueError("eps schedule must be strictly decreasing")
    q = q or QuadratureSpec(r0=w.r0)
    if eps_schedule and max(eps_schedule) >= q.r0:
        raise ValueError("every eps must be smaller than r0")
    lo = min([fit_range[0]] + eps_schedule)
    r = np.geomspace(lo, fit_range[1], 41)
    fit = fit_bound(np.abs(np.log(r)), stress_sum_envelope(m, r))
    if fit.worst_ratio > 1.0 + slack:
        raise FitError(f"stress envelope exceeds its log fit by {fit.worst_ratio - 1:.1%}")
    e = w.sup_norm()
    vals = [abs(arc_integral(m, w, eps, q)) for eps in eps_schedule]
    bounds = [(fit.c * abs(math.log(eps)) + fit.d) * e * math.pi * eps * q.l0
              for eps in eps_schedule]
    ratios = [v / b if b > 0 else (0.0 if v == 0 else math.inf) for v, b in zip(vals, bounds)]
    worst = max(ratios, default=0.0)
    if worst > 1.0 + slack:
        raise FitError(f"line integral exceeds its bound by {worst - 1:.1%}")
    return DecayTable(eps_schedule, vals, bounds, fit.c, fit.d, e, fit.worst_ratio, worst)


# --------------------------------------------------------------------------
# Sobolev picture


def analytic_stress_field(m: Material):
    def field(z):
        f = field_arrays(z, m)
        g = stress_gradient_arrays(z, m)
        return {"sig_xx": f["sig_xx"], "sig_yy": f["sig_yy"], "sig_xy": f["sig_xy"],
                "sig_zz": f["sig_zz"], "dx_sxx": g["dx_sxx"]}
    return field


def leading_slope(k: float) -> float:
    """int_{-pi/2}^{pi/2} (k cos t - cos 3t)**2 dt / (k pi)**2 (numerical)."""
    val, _ = quad(lambda t: (k * math.cos(t) - math.cos(3.0 * t)) ** 2, -0.5 * math.pi, 0.5 * math.pi)
    return val / (k * math.pi) ** 2


@dataclass
class SobolevReport:
    eps: list
    l2_sigma: dict  # component -> list of int sigma_ij**2 over V_eps
    l1_dx_sxx: list
    l2_dx_sxx: list
    slope: float
    oracle_slope: float | None
    sigma_slopes: dict = field(default_factory=dict)

    @staticmethod
    def _shrinking(seq) -> bool:
        d = np.abs(np.diff(seq))
        return bool(np.all(d[1:] <= d[:-1]))

    @property
    def l2_sigma_converging(self) -> dict:
        return {key: self._shrinking(v) for key, v in self.l2_sigma.items()}

    @property
    def l1_converging(self) -> bool:
        return self._shrinking(self.l1_dx_sxx)

    @property
    def slope_rel_error(self) -> float | None:
        if self.oracle_slope is None:
            return None
        return abs(self.slope - self.oracle_slope) / self.oracle_slope

    def rows(self):
        out = []
        for i, e in enumerate(self.eps):
            row = {"eps": e}
            row.update({f"l2_{key}": v[i] for key, v in self.l2_sigma.items()})
            row["l1_dx_sxx"] = self.l1_dx_sxx[i]
            row["l2_dx_sxx"] = self.l2_dx_sxx[i]
            out.append(row)
        return out


def _log_slope(eps, values) -> float:
    x = np.log(1.0 / np.asarray(eps))
    return float(np.polyfit(x, np.asarray(values), 1)[0])


def sobolev_diagnostics(m: Material, eps_schedule, q: QuadratureSpec,
                        field=None, require_divergence: bool = True) -> SobolevReport:
    """Integrals of sigma_ij**2, |dx sigma_xx| and (dx sigma_xx)**2 over V_eps.

    The last grows like s log(1/eps); ``s`` is fitted and compared with the
    angular integral of the leading term.  ``field`` defaults to the
    analytic solution; a synthetic field must return the same keys.
    """
    analytic = field is None
    field = field or analytic_stress_field(m)
    keys = ("sig_xx", "sig_yy", "sig_xy", "sig_zz")
    l2 = {key: [] for key in keys}
    l1, l2d = [], []
    for eps in eps_schedule:
        z, w = q.with_eps(eps).polar()
        f = field(z)
        for key in keys:
            l2[key].append(float(np.sum(w * np.broadcast_to(f[key], z.shape) ** 2)) * q.l0)
        d = np.broadcast_to(f["dx_sxx"], z.shape)
        l1.append(float(np.sum(w * np.abs(d))) * q.l0)
        l2d.append(float(np.sum(w * d * d)) * q.l0)
    slope = _log_slope(eps_schedule, l2d) if len(eps_schedule) > 1 else float("nan")
    if require_divergence and not slope > 0:
        raise SlopeSignError(f"fitted L2 growth slope {slope} is not positive")
    sig_slopes = ({key: _log_slope(eps_schedule, v) for key, v in l2.items()}
                  if len(eps_schedule) > 1 else {})
    oracle = leading_slope(m.k) * q.l0 if analytic else None
    return SobolevReport(list(map(float, eps_schedule)), l2, l1, l2d, slope, oracle, sig_slopes)


# --------------------------------------------------------------------------
# bulk equilibrium by finite differences


def _analytic_stress(m):
    def stress(z):
        f = field_arrays(z, m)
        return f["sig_xx"], f["sig_yy"], f["sig_xy"]
    return stress


def equilibrium_residual_fd(z: complex, h: float, m: Material, stress=None) -> np.ndarray:
    """Central-difference (dx sxx + dy sxy, dx sxy + dy syy) at z.

    ``stress`` maps an array of points to (sxx, syy, sxy); defaults to the
    analytic solution.
    """
    z = complex(z)
    if not h > 0:
        raise ValueError("step must be positive")
    if abs(z) <= 10.0 * h or z.real - h < 0:
        raise DomainError(f"step h={h} too large for distance {abs(z):.3g} to the singular line")
    stress = stress or _analytic_stress(m)
    pts = np.array([z + h, z - h, z + 1j * h, z - 1j * h])
    sxx, syy, sxy = (np.broadcast_to(a, pts.shape) for a in stress(pts))
    dx_sxx = (sxx[0] - sxx[1]) / (2 * h)
    dx_sxy = (sxy[0] - sxy[1]) / (2 * h)
    dy_sxy = (sxy[2] - sxy[3]) / (2 * h)
    dy_syy = (syy[2] - syy[3]) / (2 * h)
    return np.array([dx_sxx + dy_sxy, dx_sxy + dy_syy])
