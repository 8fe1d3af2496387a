"""Regime checks for a scenario.

Each check maps a dimensionless ratio to ``ok`` / ``marginal`` / ``invalid``.
The underlying requirements are order-of-magnitude inequalities, so the
thresholds are conventions, chosen so that the shipped reference scenarios
grade as documented in their presets.

=====================  =================  ==============  ============
check                  ratio              ok              marginal
=====================  =================  ==============  ============
near zone              z_max / lambda0    < 0.05          < 0.2
amplitude              a / z0             <= 0.1          <= 0.3
perturbative           max P_e            < 0.1           < 0.5
atom-atom hierarchy    E_wall / E_aa      >= 10           >= 1
=====================  =================  ==============  ============

Linearising ``1/z^3`` costs a relative error of ``6 (a/z0)^2`` at leading
order; the exact bound is ``6 (a/z0)^2 / (1 - a/z0)^5``.
Quadrupolar terms are not estimated: for atoms ~1e-5 cm across at tens of
micrometres from the wall they are orders of magnitude below the dipolar
coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

from .atom import RydbergTransition
from .coupling import DipoleExpectation, static_cp_potential
from .errors import GeometryError, ValidationError
from .excitation import probability_scaling
from .gas import GasProfile
from .mirror import MirrorMotion
from .quantities import constants


class Flag(str, Enum):
    OK = "ok"
    MARGINAL = "marginal"
    INVALID = "invalid"

    @property
    def severity(self) -> int:
        return ("ok", "marginal", "invalid").index(self.value)


def worst(flags) -> Flag:
    return max(flags, key=lambda f: f.severity, default=Flag.OK)


class Check(NamedTuple):
    ratio: float
    flag: Flag


def _grade(ratio: float, ok_below: float, marginal_below: float, inclusive: bool = False) -> Flag:
    if inclusive:
        if ratio <= ok_below:
            return Flag.OK
        return Flag.MARGINAL if ratio <= marginal_below else Flag.INVALID
    if ratio < ok_below:
        return Flag.OK
    return Flag.MARGINAL if ratio < marginal_below else Flag.INVALID


def check_near_zone(z_max: float, omega0: float) -> Check:
    if not (z_max > 0 and omega0 > 0):
        raise ValidationError("near-zone check needs positive distance and frequency")
    wavelength = 2.0 * math.pi * constants().light_speed / omega0
    ratio = z_max / wavelength
    return Check(ratio, _grade(ratio, 0.05, 0.2))


def linearization_error_scale(a: float, z0: float) -> float:
    """Leading-order relative error ``6 (a/z0)^2`` of the linear coupling."""
    return 6.0 * (a / z0) ** 2


def check_amplitude(a: float, z0: float) -> Check:
    if not z0 > 0 or not 0 <= a < z0:
        raise GeometryError(f"amplitude check needs 0 <= a < z0 (a={a!r}, z0={z0!r})")
    ratio = a / z0
    return Check(ratio, _grade(ratio, 0.1, 0.3, inclusive=True))


def check_perturbative(max_probability: float) -> Flag:
    if not max_probability >= 0:
        raise ValidationError("probability must be nonnegative")
    return _grade(max_probability, 0.1, 0.5)


def photon_excitation_bound(photon_areal_density: float, front_area: float) -> float:
    """Upper bound on excitation by real far-field photons: density x front area."""
    if photon_areal_density < 0 or front_area < 0:
        raise ValidationError("photon density and front area must be nonnegative")
    return photon_areal_density * front_area


def london_c6(tr: RydbergTransition) -> float:
    """Order-of-magnitude C6 = (3/4) d^4 / (hbar w0) with d^2 = S / tr(sigma)."""
    d2 = tr.dipole_sq / 4.0
    return 0.75 * d2 * d2 / (constants().hbar * tr.omega0)


def interaction_hierarchy(tr: RydbergTransition, z0: float, nearest_neighbor: float) -> float:
    """|atom-wall energy| / |nearest-neighbour van der Waals energy|."""
    if not (z0 > 0 and nearest_neighbor > 0):
        raise ValidationError("distances must be positive")
    wall = abs(static_cp_potential(DipoleExpectation.isotropic(tr.dipole_sq), z0))
    pair = london_c6(tr) / nearest_neighbor**6
    return wall / pair


def check_hierarchy(ratio: float) -> Flag:
    if ratio >= 10.0:
        return Flag.OK
    return Flag.MARGINAL if ratio >= 1.0 else Flag.INVALID


@dataclass(frozen=True)
class Scenario:
    transition: RydbergTransition
    mirror: MirrorMotion
    time: float
    gas: Optional[GasProfile] = None
    photon_areal_density: Optional[float] = None  # cm^-2
    front_area: Optional[float] = None  # cm^2
    nearest_neighbor: Optional[float] = None  # cm


@dataclass(frozen=True)
class ValidityReport:
    near_zone_ratio: float
    amplitude_ratio: float
    max_probability: float
    linearization_error: float
    photon_excitation_bound: Optional[float] = None
    near_far_contrast: Optional[float] = None
    hierarchy_ratio: Optional[float] = None
    flags: dict = field(default_factory=dict)

    @property
    def overall(self) -> Flag:
        return worst(self.flags.values())

    def as_dict(self) -> dict:
        out = {
            "near_zone_ratio": self.near_zone_ratio,
            "amplitude_ratio": self.amplitude_ratio,
            "max_probability": self.max_probability,
            "linearization_error": self.linearization_error,
            "photon_excitation_bound": self.photon_excitation_bound,
            "near_far_contrast": self.near_far_contrast,
            "hierarchy_ratio": self.hierarchy_ratio,
            "flags": {k: v.value for k, v in self.flags.items()},
            "overall": self.overall.value,
        }
        return out


def full_report(s: Scenario) -> ValidityReport:
    """Run every applicable check; ``overall`` is the worst flag."""
    tr, m = s.transition, s.mirror
    a = m.amplitude
    if s.gas is None:
        z_near, z_far = m.z0, m.z0
    else:
        z_near, z_far = s.gas.support
        if not z_near > a:
            raise GeometryError("gas support reaches the mirror excursion")
    near = check_near_zone(z_far + a, tr.omega0)
    amp = check_amplitude(a, m.z0)
    p_max = probability_scaling(tr.n_initial, z_near, a, s.time)
    flags = {
        "near_zone": near.flag,
        "amplitude": amp.flag,
        "perturbative": check_perturbative(p_max),
    }
    bound = contrast = None
    if s.photon_areal_density is not None and s.front_area is not None:
        bound = photon_excitation_bound(s.photon_areal_density, s.front_area)
        contrast = p_max / bound if bound > 0 else math.inf
    hier = None
    if s.nearest_neighbor is not None:
        hier = interaction_hierarchy(tr, m.z0, s.nearest_neighbor)
        flags["hierarchy"] = check_hierarchy(hier)
    return ValidityReport(
        near_zone_ratio=near.ratio,
        amplitude_ratio=amp.ratio,
        max_probability=p_max,
        linearization_error=linearization_error_scale(a, m.z0),
        photon_excitation_bound=bound,
        near_far_contrast=contrast,
        hierarchy_ratio=hier,
        flags=flags,
    )
