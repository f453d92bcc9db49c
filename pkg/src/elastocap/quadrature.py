"""Polar Gauss-Legendre rules on V_eps = {re z > 0, eps < |z| < r0}.

Radial panels are geometrically graded away from r = eps so that integrands
behaving like log r, log**2 r or 1/r**2 are resolved with a fixed number of
nodes per panel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=32)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def panel_rule(breaks, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite n-point Gauss-Legendre rule over consecutive break points."""
    x, w = gauss_legendre(n)
    breaks = np.asarray(breaks, dtype=float)
    a, b = breaks[:-1, None], breaks[1:, None]
    half = 0.5 * (b - a)
    nodes = (a + b) * 0.5 + half * x
    weights = half * w
    return nodes.ravel(), weights.ravel()


def graded_breaks(lo: float, hi: float, ratio: float) -> np.ndarray:
    """lo, lo*ratio, lo*ratio**2, ..., hi (last panel ratio in (1, ratio])."""
    if not 0 < lo < hi:
        raise ValueError(f"need 0 < lo < hi, got {lo}, {hi}")
    if ratio <= 1:
        raise ValueError("grading ratio must exceed 1")
    npanel = max(1, math.ceil(math.log(hi / lo) / math.log(ratio) - 1e-9))
    return lo * (hi / lo) ** (np.arange(npanel + 1) / npanel)


@dataclass(frozen=True)
class QuadratureSpec:
    """Polar rule parameters.

    radial_rule / angular_rule are Gauss-Legendre nodes per panel; radial
    panels grow by ``ratio`` from ``eps``; ``angular_panels`` split
    (-pi/2, pi/2) evenly.  ``l0`` is the out-of-plane length.
    """

    r0: float = 1.0
    eps: float = 1e-3
    radial_rule: int = 8
    angular_rule: int = 8
    angular_panels: int = 8
    ratio: float = 2.0
    l0: float = 1.0

    def __post_init__(self):
        if not 0 < self.eps < self.r0:
            raise ValueError(f"need 0 < eps < r0, got eps={self.eps}, r0={self.r0}")
        if self.radial_rule < 4 or self.angular_rule < 4:
            raise ValueError("node counts must be >= 4")

    def refined(self) -> "QuadratureSpec":
        """Every radial and angular panel split in two."""
        return replace(self, ratio=math.sqrt(self.ratio),
                       angular_panels=2 * self.angular_panels)

    def with_eps(self, eps: float) -> "QuadratureSpec":
        return replace(self, eps=eps)

    def radial(self):
        return panel_rule(graded_breaks(self.eps, self.r0, self.ratio), self.radial_rule)

    def angular(self):
        breaks = np.linspace(-0.5 * math.pi, 0.5 * math.pi, self.angular_panels + 1)
        return panel_rule(breaks, self.angular_rule)

    def polar(self):
        """Nodes z and area weights (r dr dtheta) for V_eps, flattened."""
        r, wr = self.radial()
        t, wt = self.angular()
        z = (r[:, None] * np.exp(1j * t[None, :])).ravel()
        w = (wr[:, None] * r[:, None] * wt[None, :]).ravel()
        return z, w

    def sides(self):
        """Nodes and length weights on x = 0, eps < |y| < r0 (both sides)."""
        y, wy = self.radial()
        return np.concatenate([1j * y, -1j * y]), np.concatenate([wy, wy])

    def arc(self, radius: float | None = None):
        """Nodes, length weights and unit radial normals on |z| = radius."""
        radius = self.eps if radius is None else radius
        t, wt = self.angular()
        n = np.exp(1j * t)
        return radius * n, radius * wt, n
