# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled potential kernel; same contract as ``_kernels_py.kpi_derivatives``."""
import numpy as np
cimport numpy as cnp

from .potentials import GUARD_RADIUS, TAYLOR_ORDER, derivative_series

cdef extern from "complex.h" nogil:
    double complex clog(double complex)
    double cabs(double complex)

cdef double PI = 3.141592653589793
cdef double HALF_PI = 1.5707963267948966


cdef inline double complex horner(const double complex[:] c, double complex t) noexcept nogil:
    cdef Py_ssize_t m
    cdef double complex acc = 0
    for m in range(c.shape[0] - 1, -1, -1):
        acc = acc * t + c[m]
    return acc


def kpi_derivatives(z, double guard=GUARD_RADIUS, int order=TAYLOR_ORDER):
    zarr = np.asarray(z, dtype=np.complex128)
    shape = zarr.shape
    cdef const double complex[:] zs = np.ascontiguousarray(zarr).ravel()
    cdef Py_ssize_t n = zs.shape[0], i
    out = np.empty((4, n), dtype=np.complex128)
    cdef double complex[:, :] o = out

    sp = derivative_series(1j, order)
    sm = derivative_series(-1j, order)
    cdef const double complex[:] p0 = sp[0], p1 = sp[1], p2 = sp[2], p3 = sp[3]
    cdef const double complex[:] m0 = sm[0], m1 = sm[1], m2 = sm[2], m3 = sm[3]

    cdef double complex zz, L, z2, d, t, I = 1j
    cdef double nan = float("nan")
    with nogil:
        for i in range(n):
            zz = zs[i]
            if zz == 0:
                o[0, i] = HALF_PI
                o[1, i] = nan
                o[2, i] = nan
                o[3, i] = nan
            elif cabs(zz - I) < guard:
                t = zz - I
                o[0, i] = horner(p0, t)
                o[1, i] = horner(p1, t)
                o[2, i] = horner(p2, t)
                o[3, i] = horner(p3, t)
            elif cabs(zz + I) < guard:
                t = zz + I
                o[0, i] = horner(m0, t)
                o[1, i] = horner(m1, t)
                o[2, i] = horner(m2, t)
                o[3, i] = horner(m3, t)
            else:
                L = clog(zz)
                z2 = zz * zz
                d = 1.0 + z2
                o[0, i] = (HALF_PI + zz * L) / d
                o[1, i] = (1.0 - PI * zz + z2 + (1.0 - z2) * L) / (d * d)
                o[2, i] = (1.0 - PI * zz - 2.0 * z2 + 3.0 * PI * z2 * zz - 3.0 * z2 * z2
                           + (-6.0 * z2 + 2.0 * z2 * z2) * L) / (zz * d * d * d)
                o[3, i] = (-1.0 - 15.0 * z2 + 12.0 * PI * z2 * zz - 3.0 * z2 * z2
                           - 12.0 * PI * z2 * z2 * zz + 11.0 * z2 * z2 * z2
                           + (-6.0 * z2 + 36.0 * z2 * z2 - 6.0 * z2 * z2 * z2) * L) / (z2 * d * d * d * d)
    return out.reshape((4,) + shape)
