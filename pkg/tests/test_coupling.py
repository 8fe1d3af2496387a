import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rydcp.atom import dipole_sq_scale
from rydcp.coupling import (
    SIGMA,
    DipoleExpectation,
    image_field,
    image_interaction_energy,
    interaction_coefficient,
    interaction_energy,
    inverse_cube_exact,
    inverse_cube_linear,
    perturbation_coefficient,
    static_cp_potential,
)
from rydcp.errors import GeometryError, ValidationError

S75 = dipole_sq_scale(75)


def test_sigma_fixed():
    assert np.trace(SIGMA) == 4.0
    with pytest.raises(ValueError):
        SIGMA[0, 0] = 3.0


def test_potential_examples():
    assert static_cp_potential(DipoleExpectation(0, 0, 1), 1.0) == -0.125
    v = static_cp_potential(DipoleExpectation.isotropic(S75), 2e-3)
    assert v == pytest.approx(-(4 / 3) * S75 / (16 * 8e-9), rel=1e-14)
    assert v == pytest.approx(-2.13e-21, rel=2e-3)


def test_potential_cubic_law():
    d = DipoleExpectation(1.0, 2.0, 3.0)
    assert static_cp_potential(d, 2.0) / static_cp_potential(d, 1.0) == 1 / 8


def test_potential_rejects():
    with pytest.raises(GeometryError):
        static_cp_potential(DipoleExpectation(1, 1, 1), 0.0)
    with pytest.raises(ValidationError):
        DipoleExpectation(-1, 0, 0)


def test_image_field():
    assert np.array_equal(image_field([0, 0, 1], 1.0), [0, 0, 0.25])
    assert np.array_equal(image_field([1, 0, 0], 1.0), [0.125, 0, 0])
    with pytest.raises(ValidationError):
        image_field([1, 0], 1.0)


def test_image_field_consistency():
    d = DipoleExpectation.isotropic(S75)
    assert image_interaction_energy(d, 2e-3) == pytest.approx(static_cp_potential(d, 2e-3), rel=1e-12)


def test_interaction_coefficient():
    assert np.array_equal(np.diag(interaction_coefficient(1.0)), [1 / 16, 1 / 16, 2 / 16])
    ratio = np.diag(interaction_coefficient(2e-3)) / np.diag(interaction_coefficient(1.0))
    assert np.allclose(ratio, 1 / 8e-9, rtol=1e-12)
    d = DipoleExpectation(0.3, 1.1, 2.5)
    assert interaction_energy(d, 0.7) == pytest.approx(static_cp_potential(d, 0.7), rel=1e-15)


def test_perturbation_coefficient():
    k, lin = perturbation_coefficient(2e-3, 2e-4)
    assert k == pytest.approx(2.34375e6, rel=1e-12)
    assert lin == pytest.approx(0.3, rel=1e-12)
    assert perturbation_coefficient(2e-3, 0.0)[0] == 0.0
    assert perturbation_coefficient(1e-3, 1e-4)[0] / perturbation_coefficient(2e-3, 1e-4)[0] == pytest.approx(16.0, rel=1e-14)
    with pytest.raises(GeometryError):
        perturbation_coefficient(1e-3, 1e-3)


def _linearisation_error(r, f):
    # relative to the static 1/z0^3 term
    return np.abs(inverse_cube_exact(1.0, r, f) - inverse_cube_linear(1.0, r, f))


def test_linearisation_bound_on_grid():
    f = np.linspace(-1, 1, 401)
    for r in np.linspace(0.0, 0.3, 301):
        err = _linearisation_error(r, f)
        # Lagrange remainder: 6 r^2 f^2 / (1 - xi)^5 with |xi| <= r
        assert np.max(err) <= 6.0 * r * r / (1.0 - r) ** 5 * (1 + 1e-12) + 1e-300


@pytest.mark.parametrize("r", [1e-4, 1e-3, 1e-2])
def test_linearisation_leading_coefficient_is_6(r):
    assert np.max(_linearisation_error(r, np.array([-1.0, 1.0]))) / (6 * r * r) == pytest.approx(1.0, rel=3 * r)


def test_plain_6r2_is_only_leading_order():
    # at f = 1 the cubic term 10 r^3 pushes the error past 6 r^2
    assert _linearisation_error(0.3, np.array([1.0]))[0] > 6 * 0.09
    assert _linearisation_error(0.3, np.array([-1.0]))[0] < 6 * 0.09


@given(
    st.floats(1e-3, 1e3),
    st.floats(1e-3, 1e3).filter(lambda s: abs(s - 1) > 1e-3),
    st.floats(1e-6, 1e3),
    st.floats(0, 1e3),
    st.floats(0, 1e3),
)
def test_potential_inverse_cube_property(z, scale, dxx, dyy, dzz):
    d = DipoleExpectation(dxx, dyy, dzz)
    v1 = static_cp_potential(d, z)
    v2 = static_cp_potential(d, z * scale)
    assert v1 < 0
    assert math.log(v2 / v1) / math.log(scale) == pytest.approx(-3.0, abs=1e-10)
