"""Assembly of a consistent physical problem from line and material data."""
from __future__ import annotations

import math

from .errors import InconsistentLoadError
from .fields import ScaledProblem
from .potentials import Material

CONSISTENCY_TOL = 1e-10


def load_scale(sigma_l: float, sigma_s: float, mu: float, b: float = 1.0) -> float:
    """a' = 2 mu b rho / sqrt(1 - rho**2), rho = sigma_l / (2 sigma_s)."""
    rho = sigma_l / (2.0 * sigma_s)
    return 2.0 * mu * b * rho / math.sqrt(1.0 - rho * rho)


def build_problem(sigma_l: float, sigma_s: float, lam: float, mu: float,
                  a_prime: float | None = None, b: float = 1.0) -> tuple[Material, ScaledProblem]:
    """Material and scaled problem obeying the line constraint a / b**2 = rho / sqrt(1 - rho**2).

    When ``a_prime`` is given it must agree with the constraint to 1e-10
    (relative), otherwise InconsistentLoadError.
    """
    m = Material(lam, mu)
    # validates b, sigma_s and feasibility before the constraint is used
    ScaledProblem(0.0, b, sigma_l, sigma_s)
    derived = load_scale(sigma_l, sigma_s, mu, b)
    if a_prime is None:
        a_prime = derived
    elif abs(a_prime - derived) > CONSISTENCY_TOL * max(1.0, abs(derived)):
        raise InconsistentLoadError(
            f"a' = {a_prime!r} violates line equilibrium, which requires a' = {derived!r}")
    return m, ScaledProblem(float(a_prime), float(b), float(sigma_l), float(sigma_s))


def line_data(p: ScaledProblem) -> tuple[float, float]:
    """(sigma_l, sigma_s) read back from (phi, sigma_s)."""
    return 2.0 * p.sigma_s * math.cos(p.phi), p.sigma_s
