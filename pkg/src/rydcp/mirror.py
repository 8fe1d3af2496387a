"""Mirror motion z(t) = z0 - a f(t) and the spectrum of its shape function.

``f`` is a dimensionless, zero-mean-ish shape with |f| <= 1.  Three shapes
are supported:

* :class:`Harmonic` -- ``sin(omega t + phase)``.
* :class:`SquareTrain` -- an ideal pulse train: the mirror sits at one
  position for a fraction ``duty`` of each period and jumps by ``a`` for the
  rest.  The raw 0/1 train is shifted by its mean so that ``z0`` stays the
  time-averaged distance; it is not rescaled, so ``a`` is the full jump.
* :class:`Tabulated` -- samples, linearly interpolated.

Spectra use the symmetric convention

    g(w) = (2 pi)^(-1/2) int_0^T f(t) e^{i w t} dt
    f(t) = (2 pi)^(-1/2) int g(w) e^{-i w t} dw

discretised on the periodic grid of the window (odd number of samples,
frequencies ``2 pi j / T`` symmetric about zero).  On that grid the inverse
sum reproduces the trigonometric interpolant of the samples, so shapes that
are band-limited and periodic over the window are represented exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .errors import GeometryError, OutOfSpanError, UndersamplingError, ValidationError

SAMPLES_PER_PERIOD = 32


@dataclass(frozen=True)
class Harmonic:
    omega: float  # rad/s
    phase: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.omega) or not np.isfinite(self.phase):
            raise ValidationError("harmonic omega and phase must be finite")

    @property
    def characteristic_frequency(self) -> float:
        return abs(self.omega)


@dataclass(frozen=True)
class SquareTrain:
    rep_rate: float  # rad/s
    duty: float = 0.5

    def __post_init__(self):
        if not self.rep_rate > 0:
            raise ValidationError("square train rep_rate must be positive")
        if not 0.0 < self.duty < 1.0:
            raise ValidationError(f"square train duty must lie in (0, 1), got {self.duty!r}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.rep_rate

    @property
    def characteristic_frequency(self) -> float:
        return self.rep_rate

    @property
    def levels(self) -> tuple[float, float]:
        """(on, off) values of f."""
        return 1.0 - self.duty, -self.duty


@dataclass(frozen=True, eq=False)
class Tabulated:
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        values = np.array(self.values, dtype=float)
        if times.ndim != 1 or times.shape != values.shape or times.size < 2:
            raise ValidationError("tabulated shape needs matching 1-D times/values, at least 2 samples")
        if times[0] != 0.0:
            raise ValidationError(f"tabulated times must start at 0, got {times[0]!r}")
        if not np.all(np.diff(times) > 0):
            raise ValidationError("tabulated times must be strictly increasing")
        if not np.all(np.isfinite(values)) or np.max(np.abs(values)) > 1.0:
            raise ValidationError("tabulated values must satisfy |f| <= 1")
        times.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @property
    def span(self) -> float:
        return float(self.times[-1])

    @property
    def characteristic_frequency(self) -> float:
        return 0.0

    @classmethod
    def from_function(cls, func, t_end: float, n_samples: int) -> "Tabulated":
        t = np.linspace(0.0, t_end, n_samples)
        return cls(t, func(t))


Shape = Union[Harmonic, SquareTrain, Tabulated]


@dataclass(frozen=True)
class MirrorMotion:
    z0: float  # cm
    amplitude: float  # cm
    shape: Shape

    def __post_init__(self):
        if not self.z0 > 0:
            raise GeometryError(f"mirror z0 must be positive, got {self.z0!r}")
        if not 0.0 <= self.amplitude < self.z0:
            raise GeometryError(
                f"mirror amplitude must satisfy 0 <= a < z0 (a={self.amplitude!r}, z0={self.z0!r})"
            )
        if not isinstance(self.shape, (Harmonic, SquareTrain, Tabulated)):
            raise ValidationError(f"unknown shape {self.shape!r}")


def load_tabulated(path) -> Tabulated:
    """Read a two-column ``time_s f`` text file ('#' comments)."""
    data = np.loadtxt(Path(path), comments="#", ndmin=2)
    if data.shape[1] != 2:
        raise ValidationError(f"{path}: expected 2 columns, got {data.shape[1]}")
    return Tabulated(data[:, 0], data[:, 1])


def evaluate_shape(m: MirrorMotion, t):
    """f(t); scalar in, scalar out, array in, array out."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValidationError("shape evaluated at negative time")
    shape = m.shape
    if isinstance(shape, Harmonic):
        out = np.sin(shape.omega * t_arr + shape.phase)
    elif isinstance(shape, SquareTrain):
        frac = np.mod(t_arr / shape.period, 1.0)
        out = np.where(frac < shape.duty, 1.0, 0.0) - shape.duty
    else:
        if np.any(t_arr > shape.span):
            raise OutOfSpanError(f"t beyond tabulated span {shape.span!r} s")
        out = np.interp(t_arr, shape.times, shape.values)
    return float(out) if out.ndim == 0 else out


def distance(m: MirrorMotion, t):
    """Atom-mirror distance z(t) = z0 - a f(t)."""
    return m.z0 - m.amplitude * evaluate_shape(m, t)


@dataclass(frozen=True, eq=False)
class MotionSpectrum:
    omegas: np.ndarray  # rad/s, symmetric uniform grid
    g: np.ndarray  # complex
    window: float  # s
    motion: MirrorMotion = field(repr=False)

    @property
    def domega(self) -> float:
        return 2.0 * math.pi / self.window

    @property
    def n_samples(self) -> int:
        return self.omegas.size


def min_samples(m: MirrorMotion, window: float, max_frequency: float = 0.0) -> int:
    f_max = max(m.shape.characteristic_frequency, abs(max_frequency))
    return int(math.ceil(SAMPLES_PER_PERIOD * window * f_max / (2.0 * math.pi)))


def spectrum(m: MirrorMotion, window: float, n_samples: int, max_frequency: float = 0.0) -> MotionSpectrum:
    """Windowed transform of the shape over ``[0, window]``.

    ``n_samples`` is bumped to the next odd number so that the frequency grid
    is symmetric.  ``max_frequency`` (rad/s) widens the sampling guard, e.g.
    to the transition frequency the spectrum will be probed at.
    """
    if not window > 0:
        raise ValidationError("spectrum window must be positive")
    n_samples = int(n_samples)
    need = min_samples(m, window, max_frequency)
    if n_samples < max(need, 3):
        raise UndersamplingError(
            f"{n_samples} samples over {window!r} s is below the guard of {need} "
            f"({SAMPLES_PER_PERIOD} per period of the fastest relevant frequency)"
        )
    if n_samples % 2 == 0:
        n_samples += 1
    dt = window / n_samples
    f = np.asarray(evaluate_shape(m, np.arange(n_samples) * dt), dtype=float)
    # rfft uses e^{-i...}; the +i convention is its conjugate
    pos = np.conj(np.fft.rfft(f)) * (dt / math.sqrt(2.0 * math.pi))
    g = np.concatenate([np.conj(pos[:0:-1]), pos])
    half = (n_samples - 1) // 2
    omegas = (2.0 * math.pi / window) * np.arange(-half, half + 1)
    return MotionSpectrum(omegas=omegas, g=g, window=float(window), motion=m)
