"""Analytic potentials of the line-loaded half-space.

Everything is expressed through the material-free quantities

    P_j(z) = k * pi * F^{(j)}(z),   j = 0..3,

with ``P_0 = (pi/2 + z log z) / (1 + z**2)``.  Two independent routes are
provided: the recursive ``g`` chain (``k pi F = z log z + g``) and the
explicit quotients.  Both are 0/0 at ``z = +-i``; inside a guard disc the
analytic factor ``pi/2 + z log z = (z - c) F1(z)`` is expanded in a Taylor
series about ``c``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, SingularDenominatorError

GUARD_RADIUS = 0.05
TAYLOR_ORDER = 16

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class Material:
    """Isotropic Lame parameters.

    ``k = -(lam + 3 mu) / (lam + mu)`` is the Kolosov constant, in (-3, -1).
    """

    lam: float
    mu: float

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"shear modulus must be positive, got mu={self.mu}")
        if not self.lam + self.mu > 0:
            raise ValueError(f"need lam + mu > 0, got lam={self.lam}, mu={self.mu}")

    @property
    def k(self) -> float:
        # same as -(lam + 3 mu) / (lam + mu), with fewer roundings
        return -1.0 - 2.0 * self.mu / (self.lam + self.mu)


@dataclass(frozen=True)
class Divergent:
    """Marker for a quantity that is infinite by theory.

    ``sign`` is +1 / -1 when a definite real limit exists (of the part named
    by ``part``) and 0 when only the modulus is known to blow up.
    """

    sign: int
    part: str = "modulus"

    def __repr__(self):
        s = {1: "+inf", -1: "-inf", 0: "inf"}[self.sign]
        return f"Divergent({self.part} -> {s})"


@dataclass(frozen=True)
class PotentialChain:
    z: complex
    k: float
    g: tuple  # g, g', g'', g''' (entry None when undefined)
    F: tuple  # F, F', F'', F''' (entries may be Divergent)
    route: str  # "chain" | "closed" | "series-fallback"

    @property
    def kpiF(self) -> tuple:
        kp = self.k * math.pi
        return tuple(v * kp if isinstance(v, complex) else v for v in self.F)


def principal_log(z: complex) -> complex:
    """Principal logarithm on C minus the closed negative real axis."""
    z = complex(z)
    if z == 0:
        raise DomainError("log is undefined at z = 0")
    if z.imag == 0.0 and z.real < 0.0:
        raise DomainError(f"z = {z} lies on the branch cut (negative real axis)")
    return cmath.log(z)


def _check_half_plane(z: complex):
    if z.real < 0.0:
        raise DomainError(f"z = {z} lies outside the body (re z < 0)")


def near_pole(z: complex, radius: float = GUARD_RADIUS) -> complex | None:
    """Return the centre (+i or -i) of the guard disc containing ``z``."""
    if abs(z - 1j) < radius:
        return 1j
    if abs(z + 1j) < radius:
        return -1j
    return None


def eval_g_chain(z: complex, guard: float = GUARD_RADIUS) -> tuple:
    """Values (g, g', g'', g''') of the regular part of k pi F.

    Each defining identity is solved for its highest derivative.  At the
    origin the continuous extensions are returned and g''' is ``None``.
    """
    z = complex(z)
    _check_half_plane(z)
    if z == 0:
        return (complex(HALF_PI), 0j, complex(-math.pi), None)
    if near_pole(z, guard) is not None:
        raise SingularDenominatorError(
            f"|z -+ i| < {guard} at z = {z}; use the series route")
    L = principal_log(z)
    d = 1.0 + z * z
    g0 = (HALF_PI - z**3 * L) / d
    g1 = (-3.0 * z * z * L - z * z - 2.0 * z * g0) / d
    g2 = (-6.0 * z * L - 5.0 * z - 2.0 * g0 - 4.0 * z * g1) / d
    g3 = (-6.0 * L - 11.0 - 6.0 * g1 - 6.0 * z * g2) / d
    return (g0, g1, g2, g3)


@lru_cache(maxsize=8)
def taylor_coefficients(center: complex, order: int = TAYLOR_ORDER) -> np.ndarray:
    """Taylor coefficients h_n of k pi F about ``center`` (= +i or -i).

    Uses pi/2 + z log z = (z - c) F1(z) and 1/(1 + z**2) = F1-free factor
    1/((z - c)(z + c)), so k pi F = F1(z) / (z + c).
    """
    c = complex(center)
    if abs(c * c + 1.0) > 1e-14:
        raise ValueError("expansion centre must be +i or -i")
    # derivatives of N(z) = pi/2 + z log z at c, divided by j!
    n = np.zeros(order + 2, dtype=complex)
    n[1] = cmath.log(c) + 1.0
    for j in range(2, order + 2):
        n[j] = (-1) ** j / (j * (j - 1) * c ** (j - 1))
    f1 = n[1:]
    q = np.array([(-1) ** m / (2.0 * c) ** (m + 1) for m in range(order + 1)])
    return np.array([np.dot(f1[: i + 1], q[i::-1]) for i in range(order + 1)])


@lru_cache(maxsize=8)
def derivative_series(center: complex, order: int = TAYLOR_ORDER) -> tuple:
    """Per-derivative coefficient arrays: P_j(c + t) = sum_m D_j[m] t**m."""
    h = taylor_coefficients(center, order)
    out = []
    for j in range(4):
        m = np.arange(order + 1 - j)
        fall = np.array([math.perm(int(mm) + j, j) for mm in m], dtype=float)
        out.append(h[j:] * fall)
    return tuple(out)


def series_kpi_derivatives(z: complex, center: complex, order: int = TAYLOR_ORDER) -> tuple:
    t = complex(z) - center
    vals = []
    for coeffs in derivative_series(complex(center), order):
        acc = 0j
        for c in coeffs[::-1]:
            acc = acc * t + c
        vals.append(acc)
    return tuple(vals)


def closed_kpi_derivatives(z: complex) -> tuple:
    """Explicit quotients for P_0..P_3 away from 0 and +-i."""
    L = principal_log(z)
    z2 = z * z
    d = 1.0 + z2
    pi = math.pi
    p0 = (HALF_PI + z * L) / d
    p1 = (1.0 - pi * z + z2 + (1.0 - z2) * L) / d**2
    p2 = (1.0 - pi * z - 2.0 * z2 + 3.0 * pi * z2 * z - 3.0 * z2 * z2
          + (-6.0 * z2 + 2.0 * z2 * z2) * L) / (z * d**3)
    p3 = (-1.0 - 15.0 * z2 + 12.0 * pi * z2 * z - 3.0 * z2 * z2
          - 12.0 * pi * z2 * z2 * z + 11.0 * z2**3
          + (-6.0 * z2 + 36.0 * z2 * z2 - 6.0 * z2**3) * L) / (z2 * d**4)
    return (p0, p1, p2, p3)


def _origin_chain(k: float) -> PotentialChain:
    g = eval_g_chain(0j)
    F = (complex(1.0 / (2.0 * k)), Divergent(+1, "real"), Divergent(0), Divergent(0))
    return PotentialChain(0j, k, g, F, "chain")


def eval_F_chain(z: complex, m: Material, fallback: bool = True,
                 guard: float = GUARD_RADIUS) -> PotentialChain:
    """F and its first three derivatives through the g chain.

    At z = 0, F = 1/(2k) and the derivatives are ``Divergent`` markers
    (Re F' -> +inf).  Inside the guard disc around +-i the series route is
    used when ``fallback`` is true, otherwise ``SingularDenominatorError``.
    """
    z = complex(z)
    _check_half_plane(z)
    k = m.k
    if z == 0:
        return _origin_chain(k)
    c = near_pole(z, guard)
    if c is not None:
        if not fallback:
            raise SingularDenominatorError(f"z = {z} is within {guard} of {c}")
        return _from_kpi(z, k, series_kpi_derivatives(z, c), "series-fallback")
    g = eval_g_chain(z, guard)
    L = principal_log(z)
    P = (z * L + g[0], L + 1.0 + g[1], 1.0 / z + g[2], -1.0 / (z * z) + g[3])
    kp = k * math.pi
    return PotentialChain(z, k, g, tuple(p / kp for p in P), "chain")


def _from_kpi(z: complex, k: float, P: tuple, route: str) -> PotentialChain:
    L = principal_log(z)
    g = (P[0] - z * L, P[1] - L - 1.0, P[2] - 1.0 / z, P[3] + 1.0 / (z * z))
    kp = k * math.pi
    return PotentialChain(z, k, g, tuple(p / kp for p in P), route)


def eval_F_closed(z: complex, m: Material, guard: float = GUARD_RADIUS,
                  order: int = TAYLOR_ORDER) -> PotentialChain:
    """F, F', F'', F''' from the explicit quotients (series inside the guard)."""
    z = complex(z)
    _check_half_plane(z)
    if z == 0:
        raise DomainError("closed route is undefined at z = 0; use eval_F_chain")
    c = near_pole(z, guard)
    if c is not None:
        return _from_kpi(z, m.k, series_kpi_derivatives(z, c, order), "series-fallback")
    return _from_kpi(z, m.k, closed_kpi_derivatives(z), "closed")


def omega(zeta: complex) -> complex:
    """Involutive map (1 - zeta)/(1 + zeta): unit disc onto re z > 0."""
    zeta = complex(zeta)
    if zeta == -1:
        raise DomainError("omega is undefined at zeta = -1")
    return (1.0 - zeta) / (1.0 + zeta)


def k_phi(zeta: complex) -> complex:
    """k Phi(zeta) on the unit disc, with the additive constant -1/4."""
    zeta = complex(zeta)
    if zeta == -1:
        raise DomainError("Phi is undefined at zeta = -1")
    z2 = zeta * zeta
    L = principal_log((1.0 - zeta) / (1.0 + zeta))
    return (1.0 + zeta + z2 + (1.0 - z2) / math.pi * L) / (2.0 * (1.0 + z2)) - 0.25


def conformal_check(zeta: complex, m: Material | None = None) -> float:
    """|k Phi(zeta) - k F(omega(zeta))| for |zeta| < 1."""
    zeta = complex(zeta)
    if abs(zeta) >= 1.0:
        raise DomainError(f"|zeta| = {abs(zeta)} is not inside the unit disc")
    z = omega(zeta)
    m = m or Material(1.0, 1.0)
    kF = eval_F_closed(z, m).F[0] * m.k
    return abs(k_phi(zeta) - kF)
