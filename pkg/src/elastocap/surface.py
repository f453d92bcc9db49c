"""Embedded-surface calculus: metric, Christoffel symbols, the vectorial
second fundamental form, the special divergence of a surface stress and the
Lagrangian/Eulerian surface transforms.

Orientation: the unit normal ``n`` points from the fluid into the body, and a
curvature is positive when its centre lies on the side of ``n``.  With this
convention a sphere of radius R containing the body has tr(l_n) = 2/R.
A patch carries ``orientation`` = +1 or -1, the sign relating ``n`` to the
chart normal x_1 x x_2 / |x_1 x x_2|.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DegenerateMetricError, DomainError, IdentityViolation

SYMMETRY_TOL = 1e-12


class OrientationWarning(UserWarning):
    pass


def _fd1(f, p, h, axis):
    e = np.zeros(2)
    e[axis] = h
    return (-f(p + 2 * e) + 8 * f(p + e) - 8 * f(p - e) + f(p - 2 * e)) / (12 * h)


def _fd2(f, p, h, a, b):
    if a == b:
        e = np.zeros(2)
        e[a] = h
        return (-f(p + 2 * e) + 16 * f(p + e) - 30 * f(p) + 16 * f(p - e)
                - f(p - 2 * e)) / (12 * h * h)
    return _fd1(lambda q: _fd1(f, q, h, b), p, h, a)


@dataclass(frozen=True)
class SurfacePatch:
    """Chart x(u) into R^3 on the rectangle ``domain`` = ((u0, u1), (v0, v1)).

    ``d1(u)`` returns the (3, 2) matrix of x_alpha, ``d2(u)`` the (3, 2, 2)
    array of x_alpha_beta.  Patches built with ``from_function`` use
    fourth-order central differences with step 1e-4 of the domain size.
    """

    name: str
    x: Callable
    d1: Callable
    d2: Callable
    domain: tuple
    orientation: int = 1
    numeric: bool = False

    @classmethod
    def from_function(cls, x, domain, orientation: int = 1, name: str = "user"):
        domain = tuple(tuple(map(float, d)) for d in domain)
        size = max(d[1] - d[0] for d in domain)
        h = 1e-4 * size

        def f(p):
            return np.asarray(x(p), dtype=float)

        def d1(p):
            return np.stack([_fd1(f, p, h, a) for a in range(2)], axis=1)

        def d2(p):
            out = np.empty((3, 2, 2))
            for a in range(2):
                for b in range(a, 2):
                    out[:, a, b] = out[:, b, a] = _fd2(f, p, h, a, b)
            return out

        return cls(name, f, d1, d2, domain, orientation, numeric=True)

    def check(self, at) -> np.ndarray:
        p = np.asarray(at, dtype=float)
        if p.shape != (2,):
            raise ValueError("surface coordinates must be a pair")
        for c, (lo, hi) in zip(p, self.domain):
            if not lo <= c <= hi:
                raise DomainError(f"{tuple(p)} lies outside the chart domain {self.domain}")
        return p


def plane(orientation: int = -1) -> SurfacePatch:
    """z = 0 with Cartesian parameters; default n = -e3 (body below)."""
    return SurfacePatch(
        "plane",
        lambda p: np.array([p[0], p[1], 0.0]),
        lambda p: np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]),
        lambda p: np.zeros((3, 2, 2)),
        ((-math.inf, math.inf), (-math.inf, math.inf)),
        orientation,
    )


def vertical_plane(orientation: int = 1) -> SurfacePatch:
    """x = 0 with parameters (y, z); default n = +e1 (body in x > 0)."""
    return SurfacePatch(
        "vertical_plane",
        lambda p: np.array([0.0, p[0], p[1]]),
        lambda p: np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
        lambda p: np.zeros((3, 2, 2)),
        ((-math.inf, math.inf), (-math.inf, math.inf)),
        orientation,
    )


def sphere(R: float, orientation: int = -1) -> SurfacePatch:
    """Colatitude-longitude chart; default n points inward (body inside)."""
    if not R > 0:
        raise ValueError("radius must be positive")

    def x(p):
        t, f = p
        return R * np.array([math.sin(t) * math.cos(f), math.sin(t) * math.sin(f), math.cos(t)])

    def d1(p):
        t, f = p
        st, ct, sf, cf = math.sin(t), math.cos(t), math.sin(f), math.cos(f)
        return R * np.array([[ct * cf, -st * sf], [ct * sf, st * cf], [-st, 0.0]])

    def d2(p):
        t, f = p
        st, ct, sf, cf = math.sin(t), math.cos(t), math.sin(f), math.cos(f)
        out = np.empty((3, 2, 2))
        out[:, 0, 0] = [-st * cf, -st * sf, -ct]
        out[:, 0, 1] = out[:, 1, 0] = [-ct * sf, ct * cf, 0.0]
        out[:, 1, 1] = [-st * cf, -st * sf, 0.0]
        return R * out

    return SurfacePatch(f"sphere(R={R:g})", x, d1, d2, ((0.0, math.pi), (0.0, 2 * math.pi)),
                        orientation)


def cylinder(R: float, orientation: int = -1) -> SurfacePatch:
    """Parameters (angle, height); default n points to the axis (body inside)."""
    if not R > 0:
        raise ValueError("radius must be positive")
    return SurfacePatch(
        f"cylinder(R={R:g})",
        lambda p: np.array([R * math.cos(p[0]), R * math.sin(p[0]), p[1]]),
        lambda p: np.array([[-R * math.sin(p[0]), 0.0], [R * math.cos(p[0]), 0.0], [0.0, 1.0]]),
        lambda p: np.array([[[-R * math.cos(p[0]), 0.0], [0.0, 0.0]],
                            [[-R * math.sin(p[0]), 0.0], [0.0, 0.0]],
                            [[0.0, 0.0], [0.0, 0.0]]]),
        ((0.0, 2 * math.pi), (-math.inf, math.inf)),
        orientation,
    )


def graph(coeffs, domain=((-1.0, 1.0), (-1.0, 1.0)), orientation: int = -1) -> SurfacePatch:
    """z = sum_ij c[i, j] x**i y**j; default n points down (body below)."""
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 2:
        raise ValueError("graph coefficients must form a matrix")
    cx = npoly.polyder(c, axis=0)
    cy = npoly.polyder(c, axis=1)
    cxx, cxy, cyy = npoly.polyder(cx, axis=0), npoly.polyder(cx, axis=1), npoly.polyder(cy, axis=1)

    def ev(a, p):
        return float(npoly.polyval2d(p[0], p[1], a))

    def d2(p):
        out = np.zeros((3, 2, 2))
        out[2] = [[ev(cxx, p), ev(cxy, p)], [ev(cxy, p), ev(cyy, p)]]
        return out

    return SurfacePatch(
        "graph",
        lambda p: np.array([p[0], p[1], ev(c, p)]),
        lambda p: np.array([[1.0, 0.0], [0.0, 1.0], [ev(cx, p), ev(cy, p)]]),
        d2,
        tuple(tuple(map(float, d)) for d in domain),
        orientation,
    )


CATALOG = {
    "plane": plane,
    "vertical_plane": vertical_plane,
    "sphere": sphere,
    "cylinder": cylinder,
    "graph": graph,
}


def make_patch(name: str, **params) -> SurfacePatch:
    try:
        ctor = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown patch {name!r}; built-ins: {sorted(CATALOG)}") from None
    return ctor(**params)


# --------------------------------------------------------------------------
# geometry


@dataclass(frozen=True)
class Geometry:
    x1: np.ndarray  # (3, 2) tangent vectors
    x2: np.ndarray  # (3, 2, 2) second derivatives
    g: np.ndarray  # (2, 2)
    ginv: np.ndarray
    dg: np.ndarray  # dg[a, b, c] = d_c g_ab
    gamma: np.ndarray  # gamma[a, b, c] = Gamma^a_bc
    normal: np.ndarray  # unit n, fluid -> body


def geometry(patch: SurfacePatch, at) -> Geometry:
    p = patch.check(at)
    x1 = np.asarray(patch.d1(p), dtype=float)
    x2 = np.asarray(patch.d2(p), dtype=float)
    g = x1.T @ x1
    det = float(np.linalg.det(g))
    scale = float(np.prod(np.sum(x1 * x1, axis=0)))
    if not det > 1e-14 * scale or scale == 0.0:
        raise DegenerateMetricError(f"metric of {patch.name} is degenerate at {tuple(p)} (det g = {det:.3g})")
    ginv = np.linalg.inv(g)
    # d_c g_ab = x_ac . x_b + x_a . x_bc
    t = np.einsum("iac,ib->abc", x2, x1)
    dg = t + t.transpose(1, 0, 2)
    low = 0.5 * (dg.transpose(0, 2, 1) + dg - dg.transpose(2, 0, 1))  # Gamma_{d, b c}
    gamma = np.einsum("ad,dbc->abc", ginv, low)
    c = np.cross(x1[:, 0], x1[:, 1])
    n = patch.orientation * c / np.linalg.norm(c)
    return Geometry(x1, x2, g, ginv, dg, gamma, n)


def metric_and_christoffel(patch: SurfacePatch, at) -> tuple[np.ndarray, np.ndarray]:
    """(g_ab, Gamma) with Gamma[a, b, c] = Gamma^a_bc."""
    geo = geometry(patch, at)
    return geo.g, geo.gamma


@dataclass(frozen=True)
class SecondForm:
    l: np.ndarray  # l[i, a, b], ambient vector components
    l_n: np.ndarray  # (2, 2) covariant normal part
    normal: np.ndarray
    principal_curvatures: np.ndarray  # ascending

    @property
    def mean_sum(self) -> float:
        """1/R1 + 1/R2."""
        return float(np.sum(self.principal_curvatures))


def second_fundamental_form(patch: SurfacePatch, at) -> SecondForm:
    geo = geometry(patch, at)
    l = geo.x2 - np.einsum("cab,ic->iab", geo.gamma, geo.x1)
    l_n = np.einsum("iab,i->ab", l, geo.normal)
    k = np.sort(np.linalg.eigvals(geo.ginv @ l_n).real)
    return SecondForm(l, l_n, geo.normal, k)


# --------------------------------------------------------------------------
# surface stress


def _check_symmetric(s, where=""):
    if abs(s[0, 1] - s[1, 0]) > SYMMETRY_TOL * max(1.0, float(np.abs(s).max())):
        raise ValueError(f"surface stress must be symmetric{where}: "
                         f"s12 - s21 = {s[0, 1] - s[1, 0]:.3g}")


@dataclass(frozen=True)
class SurfaceStressField:
    """Contravariant components sigma^{ab}(u) and their derivatives.

    ``derivative(u)`` returns ds[a, b, c] = d_c sigma^{ab}; when omitted it
    is obtained by fourth-order central differences with step ``h``.
    """

    components: Callable
    derivative: Callable | None = None
    isotropic_value: Callable | None = None
    h: float = 1e-4
    label: str = "field"

    @property
    def isotropic(self) -> bool:
        return self.isotropic_value is not None

    def sigma(self, at) -> np.ndarray:
        s = np.asarray(self.components(np.asarray(at, dtype=float)), dtype=float)
        _check_symmetric(s, f" at {tuple(at)}")
        return s

    def dsigma(self, at) -> np.ndarray:
        p = np.asarray(at, dtype=float)
        if self.derivative is not None:
            return np.asarray(self.derivative(p), dtype=float)
        f = lambda q: np.asarray(self.components(q), dtype=float)  # noqa: E731
        return np.stack([_fd1(f, p, self.h, c) for c in range(2)], axis=-1)

    @classmethod
    def constant(cls, matrix):
        s = np.array(matrix, dtype=float)
        if s.shape != (2, 2):
            raise ValueError("surface stress must be 2 x 2")
        _check_symmetric(s)
        return cls(lambda p: s, lambda p: np.zeros((2, 2, 2)), label="constant")

    @classmethod
    def polynomial(cls, coeffs):
        """sigma^{ab}(u, v) = sum_ij coeffs[a, b, i, j] u**i v**j."""
        c = np.array(coeffs, dtype=float)
        if c.ndim != 4 or c.shape[:2] != (2, 2):
            raise ValueError("coefficients must have shape (2, 2, n, m)")
        if np.abs(c[0, 1] - c[1, 0]).max() > SYMMETRY_TOL * max(1.0, float(np.abs(c).max())):
            raise ValueError("surface stress coefficients must be symmetric in (a, b)")
        cu = npoly.polyder(c, axis=2)
        cv = npoly.polyder(c, axis=3)

        def ev(a, p):
            return np.array([[npoly.polyval2d(p[0], p[1], a[i, j]) for j in range(2)]
                             for i in range(2)])

        return cls(lambda p: ev(c, p),
                   lambda p: np.stack([ev(cu, p), ev(cv, p)], axis=-1),
                   label="polynomial")

    @classmethod
    def isotropic_field(cls, patch: SurfacePatch, value, gradient=None):
        """sigma^{ab} = s(u) g^{ab}; ``value`` a number or a function of u."""
        if callable(value):
            sval = value
        else:
            v = float(value)
            sval = lambda p: v  # noqa: E731
            gradient = gradient or (lambda p: np.zeros(2))
        if gradient is None:
            h = 1e-4
            gradient = lambda p: np.array([_fd1(lambda q: np.array(sval(q)), p, h, c)  # noqa: E731
                                           for c in range(2)], dtype=float)

        def comps(p):
            return sval(p) * geometry(patch, p).ginv

        def deriv(p):
            geo = geometry(patch, p)
            # d_c g^{ab} = -g^{ad} d_c g_de g^{eb}
            dginv = -np.einsum("ad,dec,eb->abc", geo.ginv, geo.dg, geo.ginv)
            grad = np.asarray(gradient(p), dtype=float)
            return sval(p) * dginv + np.einsum("ab,c->abc", geo.ginv, grad)

        return cls(comps, deriv, isotropic_value=sval, label="isotropic")


# --------------------------------------------------------------------------
# divergences


def special_divergence(patch: SurfacePatch, s: SurfaceStressField, at) -> np.ndarray:
    """(div sigma_bar_s)^i = d_b(sigma^{ab} x_a^i) + Gamma^b_bc sigma^{ac} x_a^i."""
    geo = geometry(patch, at)
    sig, ds = s.sigma(at), s.dsigma(at)
    div_coeff = np.einsum("abb->a", ds) + np.einsum("bbc,ac->a", geo.gamma, sig)
    return geo.x1 @ div_coeff + np.einsum("ab,iab->i", sig, geo.x2)


@dataclass(frozen=True)
class Decomposition:
    normal_part: np.ndarray  # sigma^{ab} l^i_ab
    tangential_part: np.ndarray  # (div sigma_s)^a x_a^i
    tangential_divergence: np.ndarray  # (div sigma_s)^a
    identity_residual: float

    @property
    def total(self) -> np.ndarray:
        return self.normal_part + self.tangential_part


def divergence_decomposition(patch: SurfacePatch, s: SurfaceStressField, at,
                             tol: float | None = None) -> Decomposition:
    """Normal and tangential parts of the special divergence.

    Their sum is checked against ``special_divergence``; a mismatch beyond
    ``tol`` (relative; default 1e-8, or 1e-5 for differenced patches)
    raises IdentityViolation.
    """
    geo = geometry(patch, at)
    sig, ds = s.sigma(at), s.dsigma(at)
    l = geo.x2 - np.einsum("cab,ic->iab", geo.gamma, geo.x1)
    normal = np.einsum("ab,iab->i", sig, l)
    tdiv = (np.einsum("abb->a", ds) + np.einsum("abc,cb->a", geo.gamma, sig)
            + np.einsum("bbc,ac->a", geo.gamma, sig))
    tangential = geo.x1 @ tdiv
    full = special_divergence(patch, s, at)
    scale = max(1.0, float(np.abs(full).max()), float(np.abs(normal).max()),
                float(np.abs(tangential).max()))
    res = float(np.abs(normal + tangential - full).max()) / scale
    if tol is None:
        tol = 1e-5 if patch.numeric else 1e-8
    if res > tol:
        raise IdentityViolation(f"decomposition identity off by {res:.3e} (> {tol:g})")
    return Decomposition(normal, tangential, tdiv, res)


@dataclass(frozen=True)
class SurfaceEnvironment:
    """Source terms: surface mass density, gravity, fluid pressure and bulk traction."""

    rho_s: float = 0.0
    gravity: tuple = (0.0, 0.0, 0.0)
    pressure: float = 0.0
    traction: tuple = (0.0, 0.0, 0.0)  # sigma . n from the bulk
    normal: tuple | None = None  # optional check of the orientation convention


@dataclass(frozen=True)
class SurfaceResidual:
    vector: np.ndarray
    tangential: np.ndarray  # contravariant components on x_a
    normal: float


def surface_equilibrium_residual(patch: SurfacePatch, s: SurfaceStressField,
                                 env: SurfaceEnvironment, at) -> SurfaceResidual:
    """div sigma_bar_s + rho_s g + sigma.n + p n and its tangential/normal split."""
    geo = geometry(patch, at)
    n = geo.normal
    if env.normal is not None:
        supplied = np.asarray(env.normal, dtype=float)
        if float(supplied @ n) < 0.0:
            warnings.warn(
                f"supplied normal {tuple(supplied)} opposes the patch normal {tuple(n)} "
                "(n must point from the fluid into the body)", OrientationWarning, stacklevel=2)
    r = (special_divergence(patch, s, at) + env.rho_s * np.asarray(env.gravity, dtype=float)
         + np.asarray(env.traction, dtype=float) + env.pressure * n)
    tang = geo.ginv @ (geo.x1.T @ r)
    return SurfaceResidual(r, tang, float(r @ n))


# --------------------------------------------------------------------------
# Lagrangian / Eulerian transforms


@dataclass(frozen=True)
class TransformData:
    """Tangent map phi0 (present = phi0 . reference) and the two metrics."""

    phi0: np.ndarray
    g_reference: np.ndarray = field(default_factory=lambda: np.eye(2))
    g_present: np.ndarray = field(default_factory=lambda: np.eye(2))

    def __post_init__(self):
        phi = np.asarray(self.phi0, dtype=float)
        if phi.shape != (2, 2):
            raise ValueError("phi0 must be 2 x 2")
        d = abs(float(np.linalg.det(phi)))
        if not d > 1e-14 * max(1.0, float(np.abs(phi).max()) ** 2):
            raise DomainError("phi0 is singular")
        for name in ("g_reference", "g_present"):
            g = np.asarray(getattr(self, name), dtype=float)
            if g.shape != (2, 2) or not np.allclose(g, g.T) or np.linalg.det(g) <= 0:
                raise DegenerateMetricError(f"{name} must be symmetric positive-definite")

    @property
    def A(self) -> float:
        """Area ratio da / da0."""
        phi = np.asarray(self.phi0, dtype=float)
        num = np.linalg.det(phi.T @ np.asarray(self.g_present) @ phi)
        return math.sqrt(num / np.linalg.det(np.asarray(self.g_reference)))

    @property
    def phi_inv(self) -> np.ndarray:
        return np.linalg.inv(np.asarray(self.phi0, dtype=float))


def strain_transform(t: TransformData, d_eps) -> np.ndarray:
    """Eulerian covariant strain increment to Lagrangian: phi0^T d_eps phi0."""
    phi = np.asarray(t.phi0, dtype=float)
    return phi.T @ np.asarray(d_eps, dtype=float) @ phi


def strain_transform_inverse(t: TransformData, d_e) -> np.ndarray:
    pi = t.phi_inv
    return pi.T @ np.asarray(d_e, dtype=float) @ pi


def stress_transform(t: TransformData, sigma) -> np.ndarray:
    """Eulerian contravariant surface stress to Lagrangian: A phi0^-1 sigma phi0^-T."""
    pi = t.phi_inv
    return t.A * pi @ np.asarray(sigma, dtype=float) @ pi.T


def stress_transform_inverse(t: TransformData, pi_s) -> np.ndarray:
    phi = np.asarray(t.phi0, dtype=float)
    return phi @ np.asarray(pi_s, dtype=float) @ phi.T / t.A


def work_density(stress, strain) -> float:
    """sigma^{ab} d_eps_ab."""
    return float(np.einsum("ab,ab->", np.asarray(stress), np.asarray(strain)))
