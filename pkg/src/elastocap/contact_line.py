"""Residuals of the two triple-line equations.

Angles phi_f, phi_f', phi_b are measured in the fluids f, f' and in the body;
they sum to 2 pi.  In the plane normal to the line (tau = e3) the inward
conormals are placed at

    nu_bf  : pi - phi_f,    nu_ff' : pi,    nu_bf' : pi + phi_f'.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InfeasibleError

ANGLE_TOL = 1e-12
NEAR_PI = 1e-6
FORMS = ("2a", "2b", "2c")


def _unit(angle: float) -> np.ndarray:
    return np.array([math.cos(angle), math.sin(angle), 0.0])


@dataclass(frozen=True, eq=False)
class LineConfig:
    gamma_bf: float
    gamma_bfp: float
    gamma_ffp: float
    phi_f: float
    phi_fp: float
    phi_b: float
    sigma_bf_nn: float = 0.0
    sigma_bf_tn: float = 0.0
    sigma_bfp_nn: float = 0.0
    sigma_bfp_tn: float = 0.0
    a_nn: float = 1.0
    a_tn: float = 0.0
    nu_bf: np.ndarray = field(default=None, repr=False)
    nu_bfp: np.ndarray = field(default=None, repr=False)
    nu_ffp: np.ndarray = field(default=None, repr=False)
    tau: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        total = self.phi_f + self.phi_fp + self.phi_b
        if abs(total - 2.0 * math.pi) > ANGLE_TOL:
            raise ValueError(f"contact angles must sum to 2 pi (got {total!r})")
        for name in ("phi_f", "phi_fp", "phi_b"):
            if not 0.0 < getattr(self, name) < 2.0 * math.pi:
                raise ValueError(f"{name} must lie in (0, 2 pi)")
        if not self.a_nn > 0:
            raise ValueError("a_r,nunu must be positive")
        defaults = {
            "nu_bf": _unit(math.pi - self.phi_f),
            "nu_ffp": _unit(math.pi),
            "nu_bfp": _unit(math.pi + self.phi_fp),
            "tau": np.array([0.0, 0.0, 1.0]),
        }
        for name, v in defaults.items():
            given = getattr(self, name)
            vec = v if given is None else np.asarray(given, dtype=float)
            object.__setattr__(self, name, vec)
        tau = self.tau
        for name in ("nu_bf", "nu_bfp", "nu_ffp", "tau"):
            if abs(np.linalg.norm(getattr(self, name)) - 1.0) > 1e-12:
                raise ValueError(f"{name} must be a unit vector")
        for name in ("nu_bf", "nu_bfp", "nu_ffp"):
            if abs(float(getattr(self, name) @ tau)) > 1e-12:
                raise ValueError(f"{name} must be orthogonal to tau")

    @classmethod
    def from_angles(cls, phi_f: float, phi_fp: float, **kw) -> "LineConfig":
        """Frame built from phi_f and phi_f'; phi_b closes the sum to 2 pi."""
        return cls(phi_f=phi_f, phi_fp=phi_fp, phi_b=2.0 * math.pi - phi_f - phi_fp, **kw)

    def with_(self, **kw) -> "LineConfig":
        return replace(self, **kw)


def symmetric_config(sigma_s: float, sigma_l: float, gamma: float | None = None) -> LineConfig:
    """Isotropic sigma_s on both sides, gamma_ff' = sigma_l, phi = arccos(sigma_l / 2 sigma_s)."""
    if not sigma_s > 0:
        raise ValueError("sigma_s must be positive")
    if not 0 <= sigma_l < 2 * sigma_s:
        raise InfeasibleError(f"sigma_l = {sigma_l} outside [0, 2 sigma_s)")
    phi = math.acos(sigma_l / (2.0 * sigma_s))
    g = sigma_s if gamma is None else gamma
    return LineConfig.from_angles(
        math.pi - phi, math.pi - phi, gamma_bf=g, gamma_bfp=g, gamma_ffp=sigma_l,
        sigma_bf_nn=sigma_s, sigma_bfp_nn=sigma_s)


def neumann_angles(g_bf: float, g_bfp: float, g_ffp: float) -> tuple[float, float, float]:
    """(phi_f, phi_f', phi_b) closing the triangle of three tensions."""
    g = sorted((g_bf, g_bfp, g_ffp))
    if g[0] <= 0 or g[2] >= g[0] + g[1]:
        raise ValueError("tensions violate the triangle inequality")
    phi_b = math.acos((g_ffp**2 - g_bf**2 - g_bfp**2) / (2 * g_bf * g_bfp))
    phi_f = math.acos((g_bfp**2 - g_ffp**2 - g_bf**2) / (2 * g_ffp * g_bf))
    return phi_f, 2 * math.pi - phi_f - phi_b, phi_b


def fluid_config(g_bf: float, g_bfp: float, g_ffp: float) -> LineConfig:
    """Body that is itself a fluid: sigma_s = gamma I on both sides."""
    phi_f, phi_fp, _ = neumann_angles(g_bf, g_bfp, g_ffp)
    return LineConfig.from_angles(phi_f, phi_fp, gamma_bf=g_bf, gamma_bfp=g_bfp,
                                  gamma_ffp=g_ffp, sigma_bf_nn=g_bf, sigma_bfp_nn=g_bfp)


def line_force_residual(c: LineConfig) -> np.ndarray:
    """sigma_bf . nu_bf + sigma_bf' . nu_bf' + gamma_ff' nu_ff' (3-vector)."""
    return (c.sigma_bf_nn * c.nu_bf + c.sigma_bf_tn * c.tau
            + c.sigma_bfp_nn * c.nu_bfp + c.sigma_bfp_tn * c.tau
            + c.gamma_ffp * c.nu_ffp)


def phi_r(c: LineConfig, v) -> np.ndarray:
    """Relative deformation gradient on T(S_bf): tau -> tau, nu_bf -> -a_nn nu_bf' + a_tn tau."""
    v = np.asarray(v, dtype=float)
    image = -c.a_nn * c.nu_bfp + c.a_tn * c.tau
    return (v @ c.nu_bf) * image + (v @ c.tau) * c.tau


def phi_r_adjoint(c: LineConfig, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    image = -c.a_nn * c.nu_bfp + c.a_tn * c.tau
    return (v @ image) * c.nu_bf + (v @ c.tau) * c.tau


def free_line_residual(c: LineConfig) -> np.ndarray:
    """(sigma_bf - gamma_bf I) nu_bf + phi_r^* (sigma_bf' - gamma_bf' I') nu_bf'."""
    side = (c.sigma_bf_nn - c.gamma_bf) * c.nu_bf + c.sigma_bf_tn * c.tau
    other = (c.sigma_bfp_nn - c.gamma_bfp) * c.nu_bfp + c.sigma_bfp_tn * c.tau
    return side + phi_r_adjoint(c, other)


def _cot_half(phi_b: float) -> float:
    """(1 + cos phi_b) / sin phi_b, as a series in pi - phi_b close to pi."""
    d = math.pi - phi_b
    if abs(d) <= NEAR_PI:
        return 0.5 * d + d**3 / 24.0
    return 1.0 / math.tan(0.5 * phi_b)


def _ratio(c: LineConfig) -> float:
    """(cos phi_b + a_nn) / sin phi_b without cancellation."""
    a1 = c.a_nn - 1.0
    if a1 == 0.0:
        return _cot_half(c.phi_b)
    if c.phi_b == math.pi:
        raise ZeroDivisionError("sin phi_b = 0 with a_r,nunu != 1: singular configuration")
    return a1 / math.sin(c.phi_b) + _cot_half(c.phi_b)


def modified_young_residual(c: LineConfig, form: str = "2c") -> float:
    """Left-hand side of the free-line equation in one of its three forms.

    2a uses the surface-stress components; 2b and 2c use line equilibrium
    to trade them for the contact angles.
    """
    tail = c.sigma_bfp_tn * c.a_tn
    if form == "2a":
        return (c.sigma_bf_nn - c.gamma_bf - (c.sigma_bfp_nn - c.gamma_bfp) * c.a_nn + tail)
    base = -c.gamma_bf + c.gamma_bfp * c.a_nn
    if form == "2b":
        if abs(math.pi - c.phi_b) > NEAR_PI:
            frac = (math.sin(c.phi_fp) - c.a_nn * math.sin(c.phi_f)) / math.sin(c.phi_b)
        else:
            frac = -math.cos(c.phi_f) - math.sin(c.phi_f) * _ratio(c)
        return base + c.gamma_ffp * frac + tail
    if form == "2c":
        return (base - c.gamma_ffp * math.cos(c.phi_f)
                - c.gamma_ffp * math.sin(c.phi_f) * _ratio(c) + tail)
    raise ValueError(f"unknown form {form!r}; expected one of {FORMS}")


def classical_young_residual(c: LineConfig) -> float:
    return -c.gamma_bf + c.gamma_bfp - c.gamma_ffp * math.cos(c.phi_f)


def equilibrium_stresses(c: LineConfig) -> LineConfig:
    """Replace the normal stress components by the ones that balance the line.

    From the sine rule: sigma_bf,nunu = gamma sin phi_f' / sin phi_b and
    sigma_bf',nunu = gamma sin phi_f / sin phi_b; the tangential components
    are made opposite.
    """
    s = math.sin(c.phi_b)
    if s == 0.0:
        raise ZeroDivisionError("sin phi_b = 0")
    return c.with_(sigma_bf_nn=c.gamma_ffp * math.sin(c.phi_fp) / s,
                   sigma_bfp_nn=c.gamma_ffp * math.sin(c.phi_f) / s,
                   sigma_bfp_tn=-c.sigma_bf_tn)
