"""Gaussian cgs constants and the handful of unit conversions the package needs.

Every formula downstream is evaluated in cgs.  Inputs given with SI-style
prefixes (``"20 um"``, ``"30 GHz"``, ``"0.5 us"``) are converted once, at the
boundary, through :func:`parse_quantity` / :func:`to_cgs`.

Constant table (CODATA 2018, converted to cgs)::

    electron_charge   4.803204712570263e-10  statC   (1.602176634e-19 C * c/10)
    bohr_radius       0.529177210903e-8      cm
    hbar              1.054571817e-27        erg s
    light_speed       2.99792458e10          cm/s
    rydberg_energy    2.1798723611035e-11    erg     (13.605693122994 eV)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import IncompatibleUnitsError, ValidationError


@dataclass(frozen=True)
class PhysicalConstants:
    electron_charge: float  # statC
    bohr_radius: float  # cm
    hbar: float  # erg s
    light_speed: float  # cm/s
    rydberg_energy: float  # erg

    def __post_init__(self):
        for name in ("electron_charge", "bohr_radius", "hbar", "light_speed", "rydberg_energy"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"constant {name} must be positive")

    @property
    def rydberg_angular_frequency(self) -> float:
        """Ry/hbar in rad/s."""
        return self.rydberg_energy / self.hbar


_CODATA_2018 = PhysicalConstants(
    electron_charge=1.602176634e-19 * 2.99792458e9,
    bohr_radius=0.529177210903e-8,
    hbar=1.054571817e-27,
    light_speed=2.99792458e10,
    rydberg_energy=2.1798723611035e-11,
)


def constants() -> PhysicalConstants:
    """Return the fixed cgs constant set (always the same object)."""
    return _CODATA_2018


# unit -> (dimension, factor to the cgs base unit of that dimension)
UNITS: dict[str, tuple[str, float]] = {
    "cm": ("length", 1.0),
    "m": ("length", 1e2),
    "mm": ("length", 1e-1),
    "um": ("length", 1e-4),
    "nm": ("length", 1e-7),
    "s": ("time", 1.0),
    "ms": ("time", 1e-3),
    "us": ("time", 1e-6),
    "ns": ("time", 1e-9),
    "ps": ("time", 1e-12),
    "rad/s": ("angular_frequency", 1.0),
    "Hz": ("angular_frequency", 2.0 * math.pi),
    "kHz": ("angular_frequency", 2.0 * math.pi * 1e3),
    "MHz": ("angular_frequency", 2.0 * math.pi * 1e6),
    "GHz": ("angular_frequency", 2.0 * math.pi * 1e9),
    "erg": ("energy", 1.0),
    "eV": ("energy", 1.602176634e-12),
    "statC": ("charge", 1.0),
    "statC2cm2": ("dipole_sq", 1.0),
    "cm-2": ("areal_density", 1.0),
    "cm2": ("area", 1.0),
    "": ("dimensionless", 1.0),
}

_ALIASES = {
    "μm": "um",
    "µm": "um",
    "μs": "us",
    "µs": "us",
    "micron": "um",
    "rad s^-1": "rad/s",
    "statC^2 cm^2": "statC2cm2",
    "statC²·cm²": "statC2cm2",
    "cm^-2": "cm-2",
    "cm^2": "cm2",
    "dimensionless": "",
}

BASE_UNIT = {
    "length": "cm",
    "time": "s",
    "angular_frequency": "rad/s",
    "energy": "erg",
    "charge": "statC",
    "dipole_sq": "statC2cm2",
    "areal_density": "cm-2",
    "area": "cm2",
    "dimensionless": "",
}


def _canonical(unit: str) -> str:
    unit = unit.strip()
    unit = _ALIASES.get(unit, unit)
    if unit not in UNITS:
        raise IncompatibleUnitsError(f"unknown unit {unit!r}")
    return unit


@dataclass(frozen=True)
class Quantity:
    value: float
    unit: str = ""

    def __post_init__(self):
        object.__setattr__(self, "unit", _canonical(self.unit))

    @property
    def dimension(self) -> str:
        return UNITS[self.unit][0]

    def to(self, target: str) -> "Quantity":
        return convert(self, target)

    def cgs(self) -> float:
        """Value expressed in the cgs base unit of its dimension."""
        return self.value * UNITS[self.unit][1]


def convert(q: Quantity, target_unit: str) -> Quantity:
    """Rescale *q* to *target_unit*; raises on a dimension mismatch."""
    target_unit = _canonical(target_unit)
    dim_src, f_src = UNITS[q.unit]
    dim_dst, f_dst = UNITS[target_unit]
    if dim_src != dim_dst:
        raise IncompatibleUnitsError(
            f"cannot convert {q.unit or 'dimensionless'} ({dim_src}) "
            f"to {target_unit or 'dimensionless'} ({dim_dst})"
        )
    if f_src == f_dst:
        return Quantity(q.value, target_unit)
    return Quantity(q.value * f_src / f_dst, target_unit)


_QTY_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(.*?)\s*$")


def parse_quantity(text: str) -> Quantity:
    """Parse strings such as ``"20 um"`` or ``"3e10 Hz"``."""
    m = _QTY_RE.match(text)
    if m is None:
        raise ValidationError(f"cannot parse quantity {text!r}")
    return Quantity(float(m.group(1)), m.group(2))


def to_cgs(value, dimension: str) -> float:
    """Coerce a config value (bare number or unit-suffixed string) to cgs.

    Bare numbers are taken to be in the cgs base unit already.
    """
    if isinstance(value, bool):
        raise ValidationError(f"expected a {dimension} value, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, Quantity):
        q = value
    elif isinstance(value, str):
        q = parse_quantity(value)
    else:
        raise ValidationError(f"expected a {dimension} value, got {value!r}")
    if q.dimension != dimension:
        raise IncompatibleUnitsError(
            f"{value!r} is a {q.dimension} quantity, expected {dimension}"
        )
    return q.cgs()
