"""Near-zone atom-mirror coupling from the image-dipole picture.

The image of a dipole ``d`` in a perfect conductor is ``(-dx, -dy, dz)``,
located at distance ``2z``.  Weighting the dipole components by
``SIGMA = diag(1, 1, 2)`` gives

    V(z)   = -sigma_ij <d_i d_j> / (16 z^3)      static potential
    E_i    =  sigma_ij d_j / (8 z^3)             effective image field
    H_I    = -(sigma_ij / (16 z^3)) d_i d_j      = -d.E/2

When the mirror moves, ``1/z(t)^3`` is linearised about ``z0``:
``1/z^3 ~ (1/z0^3)(1 + 3 (a/z0) f(t))`` so the driving term is
``V_I(t) = -K sigma_ij d_i d_j f(t)`` with ``K = 3a / (16 z0^4)``.  The sign
of ``K`` never reaches an observable; only ``|c_e|^2`` does.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, ValidationError

SIGMA = np.diag([1.0, 1.0, 2.0])
SIGMA.flags.writeable = False


def _check_z(z):
    if not np.all(np.asarray(z) > 0):
        raise GeometryError(f"distance must be positive, got {z!r}")


@dataclass(frozen=True)
class DipoleExpectation:
    """Diagonal second moments <d_x^2>, <d_y^2>, <d_z^2> in statC^2 cm^2."""

    dxx: float
    dyy: float
    dzz: float

    def __post_init__(self):
        if min(self.dxx, self.dyy, self.dzz) < 0:
            raise ValidationError("dipole second moments must be nonnegative")

    @classmethod
    def isotropic(cls, total: float) -> "DipoleExpectation":
        """Equal components summing to ``total`` = <d^2>."""
        return cls(total / 3.0, total / 3.0, total / 3.0)

    def as_matrix(self) -> np.ndarray:
        return np.diag([self.dxx, self.dyy, self.dzz])

    def sigma_weighted(self) -> float:
        return self.dxx + self.dyy + 2.0 * self.dzz


def static_cp_potential(d: DipoleExpectation, z):
    """Nonretarded Casimir-Polder energy (erg) at distance ``z`` (cm)."""
    _check_z(z)
    v = -d.sigma_weighted() / (16.0 * np.asarray(z, dtype=float) ** 3)
    return float(v) if v.ndim == 0 else v


def image_field(dipole_vector, z: float) -> np.ndarray:
    """Field of the image dipole at the atom, E = sigma.d / (8 z^3)."""
    _check_z(z)
    d = np.asarray(dipole_vector, dtype=float)
    if d.shape != (3,):
        raise ValidationError("dipole_vector must be a 3-vector")
    return SIGMA @ d / (8.0 * z**3)


def interaction_coefficient(z: float) -> np.ndarray:
    """Matrix sigma/(16 z^3) such that H_I = -coef_ij d_i d_j."""
    _check_z(z)
    return SIGMA / (16.0 * z**3)


def interaction_energy(d: DipoleExpectation, z: float) -> float:
    """<H_I> from the coefficient matrix; equals :func:`static_cp_potential`."""
    return -float(np.sum(interaction_coefficient(z) * d.as_matrix()))


def image_interaction_energy(d: DipoleExpectation, z: float) -> float:
    """-<d.E>/2 with E the image field, averaged over diagonal moments."""
    # <d_i E_i> = sum_i sigma_ii <d_i^2> / (8 z^3) for diagonal moments
    e_over_d = image_field(np.ones(3), z)  # sigma_ii / (8 z^3)
    return -0.5 * float(e_over_d @ np.array([d.dxx, d.dyy, d.dzz]))


def perturbation_coefficient(z0: float, a: float) -> tuple[float, float]:
    """Drive coefficient ``K = 3a/(16 z0^4)`` and the linearisation scale ``3a/z0``.

    ``V_I(t) = -K sigma_ij d_i d_j f(t)``.
    """
    _check_z(z0)
    if not 0.0 <= a < z0:
        raise GeometryError(f"amplitude must satisfy 0 <= a < z0 (a={a!r}, z0={z0!r})")
    return 3.0 * a / (16.0 * z0**4), 3.0 * a / z0


def inverse_cube_exact(z0: float, a: float, f):
    """1/z^3 - 1/z0^3 for z = z0 - a f, without linearising."""
    f = np.asarray(f, dtype=float)
    return (1.0 / (1.0 - (a / z0) * f) ** 3 - 1.0) / z0**3


def inverse_cube_linear(z0: float, a: float, f):
    return 3.0 * (a / z0) * np.asarray(f, dtype=float) / z0**3
