"""Excited-atom count for a trapped gas in front of the mirror.

Atoms are independent, so the count is the single-atom probability averaged
over the linear density along the mirror normal:

    N_e(t) = int rho(z) P_e(z, t) dz.

For the parabolic (Thomas-Fermi-like) profile the integral of ``z^-8`` over
the inverted parabola has the closed form used in
:func:`excited_count_closed_form`; :func:`excited_count_quadrature` does the
same integral numerically for any profile.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import integrate, special

from .errors import ConvergenceError, GeometryError, ValidationError
from .excitation import probability_scaling, scaling_constant


@dataclass(frozen=True)
class Parabolic:
    z_center: float  # cm
    half_width: float  # cm

    def __post_init__(self):
        if not (self.z_center > 0 and self.half_width > 0):
            raise GeometryError("parabolic profile lengths must be positive")
        if not self.z_center - self.half_width > 0:
            raise GeometryError(
                f"gas geometry: support touches the wall (z_center={self.z_center!r} "
                f"<= half_width={self.half_width!r})"
            )

    @property
    def support(self) -> tuple[float, float]:
        return self.z_center - self.half_width, self.z_center + self.half_width

    @property
    def reduced_center(self) -> float:
        return self.z_center / self.half_width


@dataclass(frozen=True)
class Gaussian:
    """Gaussian truncated at ``cutoff`` standard deviations and renormalised."""

    z_center: float
    sigma_z: float
    cutoff: float = 6.0

    def __post_init__(self):
        if not (self.z_center > 0 and self.sigma_z > 0 and self.cutoff > 0):
            raise GeometryError("gaussian profile lengths must be positive")
        if not self.support[0] > 0:
            raise GeometryError("gas geometry: truncated gaussian reaches the wall")

    @property
    def support(self) -> tuple[float, float]:
        w = self.cutoff * self.sigma_z
        return self.z_center - w, self.z_center + w


@dataclass(frozen=True, eq=False)
class TabulatedProfile:
    """Linear density samples (z in cm, rho in cm^-1), linearly interpolated.

    ``rho`` is kept as given; :class:`GasProfile` rescales it to the atom count.
    """

    z: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        z = np.array(self.z, dtype=float)
        rho = np.array(self.rho, dtype=float)
        if z.ndim != 1 or z.shape != rho.shape or z.size < 2:
            raise ValidationError("tabulated profile needs matching 1-D z/rho arrays")
        if not z[0] > 0:
            raise GeometryError("tabulated profile must lie at z > 0")
        if not np.all(np.diff(z) > 0):
            raise ValidationError("tabulated profile z must be strictly increasing")
        if np.any(rho < 0) or not np.all(np.isfinite(rho)):
            raise ValidationError("tabulated density must be finite and nonnegative")
        if not integrate.trapezoid(rho, z) > 0:
            raise ValidationError("tabulated density integrates to zero")
        z.flags.writeable = False
        rho.flags.writeable = False
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "rho", rho)

    @property
    def support(self) -> tuple[float, float]:
        return float(self.z[0]), float(self.z[-1])


ProfileShape = Union[Parabolic, Gaussian, TabulatedProfile]

RENORMALISE_WARN = 0.01


@dataclass(frozen=True)
class GasProfile:
    n_atoms: float
    shape: ProfileShape
    transverse_extent: Optional[float] = None  # cm

    def __post_init__(self):
        if not self.n_atoms > 0:
            raise ValidationError("gas n_atoms must be positive")
        if self.transverse_extent is not None and not self.transverse_extent > 0:
            raise GeometryError("transverse_extent must be positive")
        if isinstance(self.shape, TabulatedProfile):
            raw = float(integrate.trapezoid(self.shape.rho, self.shape.z))
            if abs(raw / self.n_atoms - 1.0) > RENORMALISE_WARN:
                warnings.warn(
                    f"tabulated profile integrates to {raw:.6g}, renormalising to N={self.n_atoms:.6g}",
                    stacklevel=2,
                )
        elif not isinstance(self.shape, (Parabolic, Gaussian)):
            raise ValidationError(f"unknown gas profile {self.shape!r}")

    @property
    def support(self) -> tuple[float, float]:
        return self.shape.support


def load_profile(path, n_atoms: float, transverse_extent: float | None = None) -> GasProfile:
    """Read a two-column ``z_cm rho_per_cm`` file ('#' comments)."""
    data = np.loadtxt(path, comments="#", ndmin=2)
    if data.shape[1] != 2:
        raise ValidationError(f"{path}: expected 2 columns, got {data.shape[1]}")
    return GasProfile(n_atoms, TabulatedProfile(data[:, 0], data[:, 1]), transverse_extent)


def density(p: GasProfile, z):
    """Linear density rho(z) in atoms/cm; zero outside the support."""
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr <= 0):
        raise GeometryError("density evaluated at nonpositive z")
    shape = p.shape
    n = p.n_atoms
    if isinstance(shape, Parabolic):
        r = shape.half_width
        out = 3.0 * n / (4.0 * r**3) * (r**2 - (z_arr - shape.z_center) ** 2)
        out = np.where(np.abs(z_arr - shape.z_center) < r, out, 0.0)
    elif isinstance(shape, Gaussian):
        c = shape.cutoff
        norm = n / (shape.sigma_z * math.sqrt(2.0 * math.pi) * special.erf(c / math.sqrt(2.0)))
        u = (z_arr - shape.z_center) / shape.sigma_z
        out = np.where(np.abs(u) <= c, norm * np.exp(-0.5 * u * u), 0.0)
    else:
        scale = n / float(integrate.trapezoid(shape.rho, shape.z))
        out = scale * np.interp(z_arr, shape.z, shape.rho, left=0.0, right=0.0)
    return float(out) if out.ndim == 0 else out


def _check_wall(p: GasProfile, a: float):
    lo, _ = p.support
    if not lo > a:
        raise GeometryError(
            f"gas support starts at {lo!r} cm, not beyond the mirror amplitude {a!r} cm"
        )


_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


def excited_count_quadrature(p: GasProfile, n: int, a: float, t: float, rtol: float = 1e-12) -> float:
    """N_e by numerical integration of rho(z) P_e(z, t) over the support."""
    _check_wall(p, a)
    if t == 0 or a == 0:
        probability_scaling(n, p.support[0], a, t)  # precondition checks
        return 0.0
    shape = p.shape
    if isinstance(shape, TabulatedProfile):
        # 16-point Gauss-Legendre per table segment; the density is linear there
        lo, hi = shape.z[:-1], shape.z[1:]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
        vals = density(p, nodes) * probability_scaling(n, nodes, a, t)
        return float(np.sum(half * (vals @ _GL_W)))

    lo, hi = shape.support
    func = lambda z: density(p, z) * probability_scaling(n, z, a, t)  # noqa: E731
    points = None
    if isinstance(shape, Gaussian):
        points = [shape.z_center + k * shape.sigma_z for k in (-2.0, -1.0, 0.0, 1.0, 2.0)]
        points = [x for x in points if lo < x < hi]
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(func, lo, hi, epsabs=0.0, epsrel=rtol, limit=400, points=points)
        except integrate.IntegrationWarning as exc:
            raise ConvergenceError(f"gas quadrature failed: {exc}", support=(lo, hi)) from None
    return float(val)


def shape_factor(zc_bar: float) -> float:
    """(3 + 42 x^2 + 35 x^4) / (x^2 - 1)^6 for the reduced trap centre x."""
    x2 = zc_bar * zc_bar
    return (3.0 + 42.0 * x2 + 35.0 * x2 * x2) / (x2 - 1.0) ** 6


def excited_count_closed_form(p: GasProfile, n: int, a: float, t: float) -> float:
    """N_e for the parabolic profile in closed form.

    N_e = (C/35) shape_factor(z_c/R_z) N a^2 n^8 t^2 / R_z^8 with ``C`` the
    constant of :func:`~rydcp.excitation.scaling_constant`.
    """
    shape = p.shape
    if not isinstance(shape, Parabolic):
        raise ValidationError("closed form exists only for the parabolic profile")
    if not shape.reduced_center > 1:
        raise GeometryError("gas geometry: closed form needs z_center > half_width")
    _check_wall(p, a)
    probability_scaling(n, shape.support[0], a, t)  # precondition checks
    return (
        scaling_constant() / 35.0
        * shape_factor(shape.reduced_center)
        * p.n_atoms * a**2 * float(n) ** 8 * t**2
        / shape.half_width**8
    )
