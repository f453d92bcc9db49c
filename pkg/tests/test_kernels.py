import math

import mpmath as mp
import numpy as np
import pytest

from elastocap import kernels
from elastocap.potentials import GUARD_RADIUS, closed_kpi_derivatives, series_kpi_derivatives

BACKENDS = [pytest.param(kernels.kpi_derivatives_python, id="numpy")]
if kernels.kpi_derivatives_cython is not None:
    BACKENDS.append(pytest.param(kernels.kpi_derivatives_cython, id="cython"))

# loss of accuracy grows with the derivative order near the guard rim
REL_TOL = (1e-13, 1e-12, 1e-10, 1e-9)


def points(n=400, seed=3):
    rng = np.random.default_rng(seed)
    z = rng.uniform(1e-4, 3, n) + 1j * rng.uniform(-3, 3, n)
    t = rng.uniform(0, 2 * math.pi, 60)
    rim = 1j + GUARD_RADIUS * rng.uniform(0.2, 1.5, 60) * np.exp(1j * t)
    rim.real = np.abs(rim.real)
    return np.concatenate([z, rim, [1j, -1j, 1.0, 2j]])


def reference(z):
    mp.mp.dps = 40
    f = lambda w: (mp.pi / 2 + w * mp.log(w)) / (1 + w * w)  # noqa: E731
    w = mp.mpc(z.real, z.imag)
    if abs(z * z + 1) < 1e-12:
        c = 1j if z.imag > 0 else -1j
        return series_kpi_derivatives(z, c)
    return [complex(mp.diff(f, w, j)) for j in range(4)]


@pytest.mark.parametrize("fn", BACKENDS)
def test_backend_against_high_precision(fn):
    z = points(120)
    P = fn(z)
    assert P.shape == (4,) + z.shape
    for i, zi in enumerate(z):
        ref = reference(complex(zi))
        for j in range(4):
            assert abs(P[j, i] - ref[j]) <= REL_TOL[j] * max(1.0, abs(ref[j])), (zi, j)


@pytest.mark.parametrize("fn", BACKENDS)
def test_backend_matches_scalar_closed_form(fn):
    z = points()
    z = z[(np.abs(z - 1j) > GUARD_RADIUS) & (np.abs(z + 1j) > GUARD_RADIUS)]
    P = fn(z)
    for i in range(0, z.size, 7):
        ref = closed_kpi_derivatives(complex(z[i]))
        for j in range(4):
            assert abs(P[j, i] - ref[j]) <= REL_TOL[j] * max(1.0, abs(ref[j]))


@pytest.mark.parametrize("fn", BACKENDS)
def test_origin_and_shape(fn):
    z = np.array([[0j, 1.0], [0.5j, 2.0 + 1j]])
    P = fn(z)
    assert P.shape == (4, 2, 2)
    assert P[0, 0, 0] == pytest.approx(math.pi / 2)
    assert np.all(np.isnan(P[1:, 0, 0]))
    assert np.all(np.isfinite(P[:, 1, 1]))


def test_backends_agree():
    if kernels.kpi_derivatives_cython is None:
        pytest.skip("compiled extension not built")
    z = points(2000)
    a, b = kernels.kpi_derivatives_python(z), kernels.kpi_derivatives_cython(z)
    for j in range(4):
        scale = np.maximum(1.0, np.abs(a[j]))
        assert np.max(np.abs(a[j] - b[j]) / scale) <= REL_TOL[j]


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
    assert (kernels.BACKEND == "cython") == (kernels.kpi_derivatives_cython is not None)
