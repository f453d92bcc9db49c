"""Displacement, strain and stress of the half-space solution.

Dimensionless problem (b = 1, a' = 1): for re z >= 0,

    u = -(1/(2 mu)) (k (F + conj F) + (z + conj z) conj F')

and the Kolosov forms below.  ``apply_scaling`` maps to physical a', b.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, InfeasibleError
from .potentials import Divergent, Material

STRAIN_IDS = ("eps_xx", "eps_yy", "eps_xy")
STRESS_IDS = ("sig_xx", "sig_yy", "sig_xy", "sig_zz")
FIELD_IDS = STRAIN_IDS + STRESS_IDS
# components with limit +inf at the contact line; the rest are bounded but
# depend on the direction of approach
DIVERGENT_IDS = ("eps_xx", "sig_xx", "sig_yy", "sig_zz")


@dataclass(frozen=True)
class Directional:
    """Bounded component whose limit at z = 0 depends on arg z (see ray_limit)."""

    field: str


@dataclass
class FieldSample:
    z: complex
    u: complex
    grad_u: np.ndarray | None  # [[dx ux, dy ux], [dx uy, dy uy]]
    eps_xx: float | Divergent
    eps_yy: float | Directional
    eps_xy: float | Directional
    sig_xx: float | Divergent
    sig_yy: float | Divergent
    sig_xy: float | Directional
    sig_zz: float | Divergent

    @property
    def strain(self) -> np.ndarray:
        return np.array([[self.eps_xx, self.eps_xy], [self.eps_xy, self.eps_yy]])

    @property
    def stress(self) -> np.ndarray:
        return np.array([[self.sig_xx, self.sig_xy], [self.sig_xy, self.sig_yy]])


@dataclass(frozen=True)
class ScaledProblem:
    """Physical load scale a', length b and line data."""

    a_prime: float
    b: float
    sigma_l: float
    sigma_s: float

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError(f"length scale b must be positive, got {self.b}")
        if not self.sigma_s > 0:
            raise ValueError("surface stress sigma_s must be positive")
        if not 0 <= self.sigma_l < 2 * self.sigma_s:
            raise InfeasibleError(
                f"sigma_l = {self.sigma_l} outside [0, 2 sigma_s = {2 * self.sigma_s})")

    @property
    def rho(self) -> float:
        return self.sigma_l / (2.0 * self.sigma_s)

    @property
    def phi(self) -> float:
        return math.acos(self.rho)

    def a(self, m: Material) -> float:
        return self.a_prime * self.b / (2.0 * m.mu)


def _as_points(z):
    z = np.asarray(z, dtype=complex)
    if np.any(z.real < 0):
        raise DomainError("field evaluation requires re z >= 0")
    return z


def displacement_array(z, m: Material) -> np.ndarray:
    """Complex displacement u_x + i u_y, defined on the closed half-plane."""
    z = _as_points(z)
    k = m.k
    P = kernels.kpi_derivatives(z)
    origin = z == 0
    F1 = np.where(origin, 0.0, P[1]) / (k * math.pi)
    # (z + conj z) F' -> 0 at the origin although F' diverges
    return -(2.0 * P[0].real / math.pi + 2.0 * z.real * np.conj(F1)) / (2.0 * m.mu)


def field_arrays(z, m: Material) -> dict:
    """Vectorised displacement, gradient, strain and stress at z != 0.

    Keys: u, dxux, dyux, dxuy, dyuy, eps_xx, eps_yy, eps_xy, sig_xx, sig_yy,
    sig_xy, sig_zz.
    """
    z = _as_points(z)
    if np.any(z == 0):
        raise DomainError("strain and stress are singular at z = 0")
    k = m.k
    P = kernels.kpi_derivatives(z)
    kp = k * math.pi
    F1 = P[1] / kp
    xF2 = 2.0 * z.real * (P[2] / kp)
    h = 0.5 / m.mu
    out = {
        "u": -(2.0 * P[0].real / math.pi + 2.0 * z.real * np.conj(F1)) * h,
        "dxux": h * (-2.0 * (1.0 + k) * F1 - xF2).real,
        "dyux": h * (2.0 * k * F1 + xF2).imag,
        "dxuy": h * (2.0 * F1 + xF2).imag,
        "dyuy": h * xF2.real,
    }
    out["eps_xx"] = out["dxux"]
    out["eps_yy"] = out["dyuy"]
    out["eps_xy"] = h * ((1.0 + k) * F1 + xF2).imag
    out["sig_xx"] = ((1.0 - k) * F1 - xF2).real
    out["sig_yy"] = ((3.0 + k) * F1 + xF2).real
    out["sig_xy"] = ((1.0 + k) * F1 + xF2).imag
    out["sig_zz"] = (3.0 + k) * F1.real
    return out


def stress_gradient_arrays(z, m: Material) -> dict:
    """Analytic first derivatives of the in-plane stresses.

    Built on F'' and (z + conj z) F'''; keys dx_sxx, dy_sxx, dx_syy, dy_syy,
    dx_sxy, dy_sxy.
    """
    z = _as_points(z)
    if np.any(z == 0):
        raise DomainError("stress gradients are singular at z = 0")
    k = m.k
    P = kernels.kpi_derivatives(z)
    kp = k * math.pi
    F2 = P[2] / kp
    xF3 = 2.0 * z.real * (P[3] / kp)
    return {
        "dx_sxx": (-(1.0 + k) * F2 - xF3).real,
        "dy_sxx": -((1.0 - k) * F2 - xF3).imag,
        "dx_syy": ((5.0 + k) * F2 + xF3).real,
        "dy_syy": -((3.0 + k) * F2 + xF3).imag,
        "dx_sxy": ((3.0 + k) * F2 + xF3).imag,
        "dy_sxy": ((1.0 + k) * F2 + xF3).real,
    }


def eval_fields(z: complex, m: Material) -> FieldSample:
    z = complex(z)
    if z.real < 0:
        raise DomainError(f"z = {z} lies outside the body")
    if z == 0:
        u = complex(displacement_array(np.array([0j]), m)[0])
        div = Divergent(+1, "real")
        return FieldSample(
            z, u, None,
            eps_xx=div, eps_yy=Directional("eps_yy"), eps_xy=Directional("eps_xy"),
            sig_xx=div, sig_yy=div, sig_xy=Directional("sig_xy"), sig_zz=div,
        )
    f = {key: v[0] for key, v in field_arrays(np.array([z]), m).items()}
    grad = np.array([[f["dxux"], f["dyux"]], [f["dxuy"], f["dyuy"]]], dtype=float)
    return FieldSample(
        z, complex(f["u"]), grad,
        **{name: float(f[name]) for name in FIELD_IDS},
    )


def ray_limit(theta: float, m: Material, which: str):
    """Limit of a strain/stress component as z -> 0 along arg z = theta."""
    if which not in FIELD_IDS:
        raise KeyError(f"unknown field id {which!r}; expected one of {FIELD_IDS}")
    if not -math.pi / 2 < theta < math.pi / 2:
        raise DomainError("theta must lie in (-pi/2, pi/2)")
    if which in DIVERGENT_IDS:
        return Divergent(+1, "real")
    k = m.k
    kp = k * math.pi
    shear = ((1.0 + k) * theta - math.sin(2.0 * theta)) / kp
    if which == "eps_yy":
        return (1.0 + math.cos(2.0 * theta)) / kp / (2.0 * m.mu)
    if which == "eps_xy":
        return shear / (2.0 * m.mu)
    return shear  # sig_xy


def apply_scaling(p: ScaledProblem, m: Material, z: complex) -> FieldSample:
    """Physical fields: u~(z) = a' u(z/b), strain and stress times a'/b."""
    base = eval_fields(complex(z) / p.b, m)
    s = p.a_prime / p.b

    def scale(v):
        return v * s if isinstance(v, float) else v

    return FieldSample(
        complex(z), p.a_prime * base.u,
        None if base.grad_u is None else s * base.grad_u,
        **{name: scale(getattr(base, name)) for name in FIELD_IDS},
    )


def scaled_field_arrays(p: ScaledProblem, m: Material, z) -> dict:
    z = np.asarray(z, dtype=complex)
    f = field_arrays(z / p.b, m)
    s = p.a_prime / p.b
    return {key: (p.a_prime * v if key == "u" else s * v) for key, v in f.items()}


def contact_angle(sigma_l: float, sigma_s: float) -> tuple[float, float]:
    """Half-angle phi with sigma_l = 2 sigma_s cos phi, and a/b**2 = 1/tan phi."""
    if not sigma_s > 0:
        raise ValueError("sigma_s must be positive")
    if sigma_l < 0:
        raise InfeasibleError("sigma_l must be non-negative")
    if sigma_l >= 2.0 * sigma_s:
        raise InfeasibleError(
            f"sigma_l = {sigma_l} >= 2 sigma_s = {2 * sigma_s}: no contact angle balances the line")
    rho = sigma_l / (2.0 * sigma_s)
    return math.acos(rho), rho / math.sqrt(1.0 - rho * rho)
