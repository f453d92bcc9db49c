import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from elastocap.errors import InconsistentLoadError, InfeasibleError
from elastocap.fields import scaled_field_arrays
from elastocap.problem import build_problem, line_data, load_scale


def test_zero_line_force_is_flat():
    m, p = build_problem(0.0, 1.0, 1.0, 1.0)
    assert p.a_prime == 0.0
    z = np.array([0.5 + 0.5j, 1.0, 2.0 - 1.0j, 1j])
    assert np.all(scaled_field_arrays(p, m, z)["u"] == 0)


def test_load_scale_value():
    m, p = build_problem(1.0, 1.0, 1.0, 1.0)
    assert p.rho == 0.5
    assert p.a_prime == pytest.approx(2 * 0.5 / math.sqrt(0.75), rel=1e-15)
    assert p.a_prime == pytest.approx(1.1547, abs=1e-4)
    assert p.a(m) * p.b**-2 == pytest.approx(p.rho / math.sqrt(1 - p.rho**2), rel=1e-15)


def test_kolosov_constant():
    m, _ = build_problem(1.0, 1.0, 1.0, 1.0)
    assert m.k == -2.0


def test_consistent_a_prime_accepted():
    a = load_scale(1.0, 1.0, 2.0, 3.0)
    _, p = build_problem(1.0, 1.0, 1.0, 2.0, a_prime=a * (1 + 1e-12), b=3.0)
    assert p.a_prime == pytest.approx(a)


def test_inconsistent_a_prime_rejected():
    with pytest.raises(InconsistentLoadError):
        build_problem(1.0, 1.0, 1.0, 1.0, a_prime=1.2)


@pytest.mark.parametrize("args", [(2.0, 1.0), (3.0, 1.0), (-0.5, 1.0)])
def test_infeasible(args):
    with pytest.raises(InfeasibleError):
        build_problem(*args, 1.0, 1.0)


@pytest.mark.parametrize("kw", [{"b": 0.0}, {"b": -1.0}])
def test_bad_length_scale(kw):
    with pytest.raises(ValueError):
        build_problem(1.0, 1.0, 1.0, 1.0, **kw)


def test_bad_shear_modulus():
    with pytest.raises(ValueError):
        build_problem(1.0, 1.0, 1.0, 0.0)


@given(st.floats(0.1, 10.0), st.floats(0.0, 0.999), st.floats(0.1, 5.0), st.floats(0.1, 5.0))
def test_round_trip(sigma_s, rho, mu, b):
    sigma_l = 2 * rho * sigma_s
    _, p = build_problem(sigma_l, sigma_s, 1.0, mu, b=b)
    sl, ss = line_data(p)
    assert ss == sigma_s
    assert sl == pytest.approx(sigma_l, rel=1e-12, abs=1e-12 * sigma_s)
