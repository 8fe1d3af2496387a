import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import trapezoid

from rydcp.errors import GeometryError, ValidationError
from rydcp.excitation import probability_scaling, scaling_constant
from rydcp.gas import (
    Gaussian,
    GasProfile,
    Parabolic,
    TabulatedProfile,
    density,
    excited_count_closed_form,
    excited_count_quadrature,
    load_profile,
    shape_factor,
)

A = 2e-4
T = 5e-7
N_Q = 75

# Gauss-Legendre in the reduced variable u = (z - zc)/R, independent of scipy
_U, _WU = np.polynomial.legendre.leggauss(400)


def parabolic_oracle(n_atoms, zc, r, n, a, t):
    z = zc + r * _U
    rho = 3 * n_atoms / (4 * r**3) * (r * r - (z - zc) ** 2)
    return r * np.sum(_WU * rho * probability_scaling(n, z, a, t))


def reference_gas(n_atoms=1e3):
    return GasProfile(n_atoms, Parabolic(2e-3, 1e-3), 5e-2)


def test_parabolic_density_values():
    p = reference_gas()
    assert density(p, 2e-3) == pytest.approx(3e3 / (4 * 1e-3), rel=1e-14)
    assert density(p, 1e-3) == 0.0
    assert density(p, 3e-3) == 0.0
    assert density(p, 4e-3) == 0.0


@pytest.mark.parametrize(
    "shape",
    [Parabolic(2e-3, 1e-3), Gaussian(5e-3, 4e-4), TabulatedProfile([1e-3, 2e-3, 3e-3], [0.0, 1e6, 0.0])],
)
def test_normalisation(shape):
    p = GasProfile(1e3, shape)
    lo, hi = p.support
    z = np.linspace(lo, hi, 400_001)
    rho = density(p, z)
    assert np.all(rho >= 0)
    assert trapezoid(rho, z) == pytest.approx(1e3, rel=1e-9)


def test_density_rejects_nonpositive():
    with pytest.raises(GeometryError):
        density(reference_gas(), 0.0)


def test_geometry_errors():
    with pytest.raises(GeometryError, match="gas geometry"):
        Parabolic(1e-3, 1e-3)
    with pytest.raises(GeometryError, match="gas geometry"):
        Gaussian(1e-3, 1e-3)
    with pytest.raises(ValidationError):
        GasProfile(0, Parabolic(2e-3, 1e-3))
    with pytest.raises(GeometryError):
        excited_count_quadrature(GasProfile(1e3, Parabolic(2e-3, 1.9e-3)), N_Q, A, T)


def test_tabulated_profile_warns_when_renormalised():
    with pytest.warns(UserWarning, match="renormalising"):
        GasProfile(10.0, TabulatedProfile([1e-3, 2e-3, 3e-3], [0.0, 2e3, 0.0]))


def test_load_profile(tmp_path):
    path = tmp_path / "rho.txt"
    path.write_text("# z rho\n1e-3 0\n2e-3 2e6\n3e-3 0\n")
    p = load_profile(path, 2e3)
    assert p.support == (1e-3, 3e-3)
    assert density(p, 2e-3) == pytest.approx(2e6)


def test_shape_factor_value():
    assert shape_factor(2.0) == pytest.approx(731 / 729, rel=1e-15)


def test_reference_gas_count():
    ne_c = excited_count_closed_form(reference_gas(), N_Q, A, T)
    ne_q = excited_count_quadrature(reference_gas(), N_Q, A, T)
    assert ne_c == pytest.approx(94.6087, rel=1e-5)
    assert ne_q == pytest.approx(ne_c, rel=1e-10)
    assert 90 <= ne_c <= 110


@pytest.mark.parametrize("zc_bar", [1.05, 1.5, 2.0, 3.0, 5.0, 10.0])
def test_closed_form_against_independent_oracle(zc_bar):
    r = 1e-3
    p = GasProfile(1e3, Parabolic(zc_bar * r, r))
    ne = excited_count_closed_form(p, N_Q, 1e-5, T)
    assert ne == pytest.approx(parabolic_oracle(1e3, zc_bar * r, r, N_Q, 1e-5, T), rel=1e-10)
    assert excited_count_quadrature(p, N_Q, 1e-5, T) == pytest.approx(ne, rel=1e-10)


def test_zero_time_and_linearity():
    assert excited_count_quadrature(reference_gas(), N_Q, A, 0.0) == 0.0
    assert excited_count_closed_form(reference_gas(), N_Q, A, 0.0) == 0.0
    one = excited_count_closed_form(reference_gas(1e3), N_Q, A, T)
    two = excited_count_closed_form(reference_gas(2e3), N_Q, A, T)
    assert two == 2 * one
    assert excited_count_quadrature(reference_gas(2e3), N_Q, A, T) == pytest.approx(
        2 * excited_count_quadrature(reference_gas(1e3), N_Q, A, T), rel=1e-13
    )


def test_closed_form_needs_parabolic():
    with pytest.raises(ValidationError):
        excited_count_closed_form(GasProfile(1e3, Gaussian(5e-3, 4e-4)), N_Q, A, T)


@pytest.mark.parametrize("zc_bar", [5.0, 20.0, 100.0])
def test_point_sample_limit(zc_bar):
    r = 1e-4
    p = GasProfile(1e3, Parabolic(zc_bar * r, r))
    ne = excited_count_closed_form(p, N_Q, 1e-5, T)
    point = 1e3 * probability_scaling(N_Q, zc_bar * r, 1e-5, T)
    assert abs(ne / point - 1) < 45 / zc_bar**2


def test_gaussian_narrow_limit():
    p = GasProfile(1e3, Gaussian(3e-3, 1e-7))
    point = 1e3 * probability_scaling(N_Q, 3e-3, A, T)
    assert excited_count_quadrature(p, N_Q, A, T) == pytest.approx(point, rel=1e-6)


def test_tabulated_matches_parabolic():
    z = np.linspace(1e-3, 3e-3, 2001)
    rho = 3e3 / (4 * 1e-9) * (1e-6 - (z - 2e-3) ** 2)
    tab = excited_count_quadrature(GasProfile(1e3, TabulatedProfile(z, rho)), N_Q, A, T)
    assert tab == pytest.approx(excited_count_closed_form(reference_gas(), N_Q, A, T), rel=1e-5)


@settings(max_examples=40, deadline=None)
@given(st.floats(1.02, 50.0), st.floats(1e-5, 1e-2), st.floats(1e-9, 1e-5))
def test_closed_form_matches_quadrature_property(zc_bar, r, t):
    p = GasProfile(1e3, Parabolic(zc_bar * r, r))
    a = 0.5 * (zc_bar - 1) * r
    ne = excited_count_closed_form(p, N_Q, a, t)
    assert ne > 0
    assert excited_count_quadrature(p, N_Q, a, t) == pytest.approx(ne, rel=1e-8)
    assert ne == pytest.approx(scaling_constant() / 35 * shape_factor(zc_bar) * 1e3 * a * a * N_Q**8 * t * t / r**8, rel=1e-14)
