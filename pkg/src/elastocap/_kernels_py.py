"""Numpy implementation of the vectorised potential kernel."""
import numpy as np

from .potentials import GUARD_RADIUS, HALF_PI, TAYLOR_ORDER, derivative_series


def _horner(coeffs, t):
    acc = np.zeros_like(t)
    for c in coeffs[::-1]:
        acc = acc * t + c
    return acc


def kpi_derivatives(z, guard=GUARD_RADIUS, order=TAYLOR_ORDER):
    """Return an array ``P`` of shape (4,) + z.shape with P[j] = k pi F^{(j)}(z).

    At z == 0 entry 0 is pi/2 and entries 1..3 are NaN.
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty((4,) + z.shape, dtype=complex)
    zero = z == 0
    near = {c: np.abs(z - c) < guard for c in (1j, -1j)}
    reg = ~(zero | near[1j] | near[-1j])

    zr = z[reg]
    L = np.log(zr)
    z2 = zr * zr
    d = 1.0 + z2
    pi = np.pi
    out[0][reg] = (HALF_PI + zr * L) / d
    out[1][reg] = (1.0 - pi * zr + z2 + (1.0 - z2) * L) / d**2
    out[2][reg] = (1.0 - pi * zr - 2.0 * z2 + 3.0 * pi * z2 * zr - 3.0 * z2 * z2
                   + (-6.0 * z2 + 2.0 * z2 * z2) * L) / (zr * d**3)
    out[3][reg] = (-1.0 - 15.0 * z2 + 12.0 * pi * z2 * zr - 3.0 * z2 * z2
                   - 12.0 * pi * z2 * z2 * zr + 11.0 * z2**3
                   + (-6.0 * z2 + 36.0 * z2 * z2 - 6.0 * z2**3) * L) / (z2 * d**4)

    for c, mask in near.items():
        if mask.any():
            t = z[mask] - c
            for j, coeffs in enumerate(derivative_series(c, order)):
                out[j][mask] = _horner(coeffs, t)

    if zero.any():
        out[0][zero] = HALF_PI
        out[1:, zero] = np.nan
    return out
