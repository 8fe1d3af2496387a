"""First-order excitation amplitude of the Rydberg transition.

With the drive ``V_I(t) = -K S f(t)`` (see :mod:`rydcp.coupling`) the
amplitude of the upper level after time ``t`` is

    c_e(t) = (i/hbar) K S int_0^t e^{i w0 t'} f(t') dt',   K = 3a/(16 z0^4).

Four routes are provided:

* :func:`amplitude_time_domain` -- the integral above, closed form for the
  harmonic and square-train shapes (counter-rotating term kept), exact
  piecewise-linear integration for tabulated shapes, or adaptive quadrature.
* :func:`probability_resonant` -- the rotating-wave result on resonance,
  ``P = 9/(2^10 hbar^2) (a/z0)^2 S^2/z0^6 t^2``.
* :func:`probability_scaling` -- the same with ``S = e^2 a0^2 n^4`` folded
  into one constant, ``P = C a^2 n^8 t^2 / z0^8``.
* :func:`amplitude_spectral` -- the frequency-domain form, summing the
  shape spectrum against ``(e^{-i(w - w0)t} - 1)/(w - w0)``.

Probabilities are returned as computed; values above 1 only mean the
first-order treatment has broken down, which :mod:`rydcp.validity` reports.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate

from . import kernels
from .atom import RydbergTransition, _check_n
from .coupling import inverse_cube_exact, inverse_cube_linear, perturbation_coefficient
from .errors import (
    ConvergenceError,
    DetunedInputError,
    GeometryError,
    OutOfSpanError,
    UndersamplingError,
    ValidationError,
    WindowMismatchError,
)
from .mirror import Harmonic, MirrorMotion, MotionSpectrum, SquareTrain, Tabulated, evaluate_shape
from .quantities import constants

RESONANCE_TOLERANCE = 0.1  # max |w - w0| t accepted by the rotating-wave formula


class Method(str, Enum):
    TIME_DOMAIN = "time_domain"
    RESONANT_RWA = "resonant_rwa"
    SCALING_LAW = "scaling_law"
    SPECTRAL = "spectral"


@dataclass(frozen=True)
class ExcitationResult:
    amplitude: complex | None
    probability: float
    method: Method


def _sinc(u: float) -> float:
    if abs(u) < 1e-4:
        return 1.0 - u * u / 6.0 + u**4 / 120.0
    return math.sin(u) / u


def phase_integral(omega: float, t: float) -> complex:
    """int_0^t e^{i omega s} ds = t e^{i omega t/2} sinc(omega t/2)."""
    half = 0.5 * omega * t
    return t * cmath.exp(1j * half) * _sinc(half)


def harmonic_integral(omega0: float, shape: Harmonic, t: float) -> complex:
    """int_0^t e^{i w0 s} sin(w s + phase) ds, both rotating terms."""
    up = cmath.exp(1j * shape.phase) * phase_integral(omega0 + shape.omega, t)
    down = cmath.exp(-1j * shape.phase) * phase_integral(omega0 - shape.omega, t)
    return (up - down) / 2j


def pulse_integral(omega0: float, shape: SquareTrain, t: float) -> complex:
    """int_0^t e^{i w0 s} p(s) ds for the raw 0/1 pulse train p.

    Pulses start at multiples of the period.  The sum over whole pulses is a
    geometric series, evaluated as a Dirichlet kernel after reducing the
    per-period phase to [-pi, pi] so it stays well conditioned on resonance.
    """
    period = shape.period
    width = shape.duty * period
    k = math.floor(t / period)
    if t - k * period >= width:
        n_full, partial = k + 1, 0.0
    else:
        n_full, partial = k, t - k * period
    theta = omega0 * period
    theta -= 2.0 * math.pi * round(theta / (2.0 * math.pi))
    total = 0j
    if n_full:
        dirichlet = n_full * _sinc(0.5 * n_full * theta) / _sinc(0.5 * theta)
        total += phase_integral(omega0, width) * cmath.exp(0.5j * (n_full - 1) * theta) * dirichlet
    if partial > 0:
        total += cmath.exp(1j * n_full * theta) * phase_integral(omega0, partial)
    return total


def square_integral(omega0: float, shape: SquareTrain, t: float) -> complex:
    """int_0^t e^{i w0 s} f(s) ds for the mean-subtracted train f = p - duty."""
    return pulse_integral(omega0, shape, t) - shape.duty * phase_integral(omega0, t)


def _harmonic_fourier(r: float, tol: float = 1e-15) -> np.ndarray:
    """Fourier coefficients h_k of (1 - r sin x)^-3 - 1, k = -N/2 .. N/2 - 1.

    Doubles N until the outermost coefficients reach the FFT roundoff floor.
    """
    n = 64
    while True:
        x = 2.0 * math.pi * np.arange(n) / n
        h = (1.0 - r * np.sin(x)) ** -3 - 1.0
        coef = np.fft.fftshift(np.fft.fft(h)) / n
        tail = max(abs(coef[1]), abs(coef[-1]))
        if tail <= tol * max(np.max(np.abs(coef)), 1e-300) or n >= 1 << 20:
            return coef
        n *= 2


def _exact_coupling_integral(omega0: float, m: MirrorMotion, t: float) -> complex:
    """int_0^t e^{i w0 s} (1/z(s)^3 - 1/z0^3) ds for periodic shapes."""
    r = m.amplitude / m.z0
    shape = m.shape
    if isinstance(shape, Harmonic):
        coef = _harmonic_fourier(r)
        ks = np.arange(coef.size) - coef.size // 2
        keep = np.abs(coef) > 0
        total = 0j
        for k, h in zip(ks[keep], coef[keep]):
            total += h * cmath.exp(1j * k * shape.phase) * phase_integral(omega0 + k * shape.omega, t)
        return total / m.z0**3
    on, off = shape.levels
    h_on = (1.0 - r * on) ** -3 - 1.0
    h_off = (1.0 - r * off) ** -3 - 1.0
    return (h_off * phase_integral(omega0, t) + (h_on - h_off) * pulse_integral(omega0, shape, t)) / m.z0**3


def _breakpoints(m: MirrorMotion, omega0: float, t: float) -> np.ndarray:
    shape = m.shape
    if isinstance(shape, Tabulated):
        inner = shape.times[(shape.times > 0) & (shape.times < t)]
    elif isinstance(shape, SquareTrain):
        starts = np.arange(0.0, t, shape.period)
        inner = np.concatenate([starts, starts + shape.duty * shape.period])
        inner = inner[(inner > 0) & (inner < t)]
    else:
        step = 4.0 * 2.0 * math.pi / max(abs(shape.omega), abs(omega0), 1e-300)
        inner = np.arange(step, t, step)
    return np.unique(np.concatenate([[0.0], inner, [t]]))


def _oscillatory_quad(func, omega0: float, edges: np.ndarray, rtol: float) -> complex:
    """int e^{i w0 s} func(s) ds over consecutive intervals of ``edges``.

    QUADPACK's roundoff heuristics misfire on raw cgs magnitudes, so time is
    measured in units of 1/w0 and the integrand is scaled to O(1).
    """
    unit = 1.0 / omega0 if omega0 > 0 else 1.0
    wvar = omega0 * unit
    probe = np.abs(func(np.linspace(edges[0], edges[-1], 4 * edges.size + 9)))
    scale = float(np.max(probe)) or 1.0
    g = lambda u: func(u * unit) / scale  # noqa: E731
    total_re = []
    total_im = []
    for lo, hi in zip(edges[:-1] / unit, edges[1:] / unit):
        epsabs = max(rtol * (hi - lo), 1e-300)
        parts = []
        for weight in ("cos", "sin"):
            with warnings.catch_warnings():
                warnings.simplefilter("error", integrate.IntegrationWarning)
                try:
                    val, err = integrate.quad(
                        g, lo, hi, weight=weight, wvar=wvar,
                        epsabs=epsabs, epsrel=rtol, limit=500,
                    )
                except integrate.IntegrationWarning as exc:
                    raise ConvergenceError(
                        f"quadrature failed on [{lo * unit!r}, {hi * unit!r}] s ({weight} weight): {exc}",
                        interval=(lo * unit, hi * unit), weight=weight,
                    ) from None
            parts.append(val)
        total_re.append(parts[0])
        total_im.append(parts[1])
    return complex(math.fsum(total_re), math.fsum(total_im)) * unit * scale


def _check_time(m: MirrorMotion, t: float):
    if not t >= 0:
        raise ValidationError(f"time must be nonnegative, got {t!r}")
    if isinstance(m.shape, Tabulated) and t > m.shape.span:
        raise OutOfSpanError(f"t={t!r} s beyond tabulated span {m.shape.span!r} s")


def amplitude_time_domain(
    tr: RydbergTransition,
    m: MirrorMotion,
    t: float,
    *,
    linearized: bool = True,
    method: str = "exact",
    rtol: float = 1e-10,
) -> ExcitationResult:
    """Amplitude from the time integral of the drive.

    ``linearized=False`` keeps the full ``1/z(t)^3`` instead of its first-order
    expansion.  ``method="quadrature"`` forces adaptive oscillatory
    quadrature (QUADPACK QAWO) instead of the closed forms.
    """
    if method not in ("exact", "quadrature"):
        raise ValidationError(f"unknown method {method!r}")
    t = float(t)
    _check_time(m, t)
    hbar = constants().hbar
    omega0 = tr.omega0
    prefactor = 1j * tr.dipole_sq / (16.0 * hbar)
    if t == 0.0 or m.amplitude == 0.0:
        return ExcitationResult(0j, 0.0, Method.TIME_DOMAIN)

    shape = m.shape
    use_quad = method == "quadrature" or (not linearized and isinstance(shape, Tabulated))
    if use_quad:
        coupling = inverse_cube_linear if linearized else inverse_cube_exact
        integrand = lambda s: coupling(m.z0, m.amplitude, evaluate_shape(m, s))  # noqa: E731
        integral = _oscillatory_quad(integrand, omega0, _breakpoints(m, omega0, t), rtol)
    elif not linearized:
        integral = _exact_coupling_integral(omega0, m, t)
    else:
        if isinstance(shape, Harmonic):
            base = harmonic_integral(omega0, shape, t)
        elif isinstance(shape, SquareTrain):
            base = square_integral(omega0, shape, t)
        else:
            base = kernels.linear_phase_integral(shape.times, shape.values, omega0, t)
        integral = 3.0 * m.amplitude / m.z0**4 * base
    amp = complex(prefactor * integral)
    return ExcitationResult(amp, abs(amp) ** 2, Method.TIME_DOMAIN)


def probability_resonant(tr: RydbergTransition, m: MirrorMotion, t: float) -> ExcitationResult:
    """Rotating-wave probability for harmonic motion tuned to the transition."""
    if not isinstance(m.shape, Harmonic):
        raise ValidationError("the resonant formula needs harmonic mirror motion")
    if not t >= 0:
        raise ValidationError(f"time must be nonnegative, got {t!r}")
    detuning = abs(abs(m.shape.omega) - tr.omega0) * t
    if detuning >= RESONANCE_TOLERANCE:
        raise DetunedInputError(
            f"|w - w0| t = {detuning:.3g} >= {RESONANCE_TOLERANCE}; "
            "use amplitude_time_domain for detuned drives"
        )
    hbar = constants().hbar
    p = 9.0 / (1024.0 * hbar**2) * (m.amplitude / m.z0) ** 2 * tr.dipole_sq**2 / m.z0**6 * t**2
    return ExcitationResult(None, p, Method.RESONANT_RWA)


def scaling_constant() -> float:
    """C in P = C a^2 n^8 t^2 / z0^8, i.e. 9 e^4 a0^4 / (1024 hbar^2) in cm^6 s^-2."""
    c = constants()
    return 9.0 * (c.electron_charge * c.bohr_radius) ** 4 / (1024.0 * c.hbar**2)


def probability_scaling(n: int, z0, a: float, t):
    """Resonant probability with S = e^2 a0^2 n^4; ``z0`` and ``t`` may be arrays."""
    n = _check_n(n)
    z0 = np.asarray(z0, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(z0 <= 0) or not a >= 0 or np.any(a >= z0):
        raise GeometryError(f"need 0 <= a < z0 (a={a!r})")
    if np.any(t < 0):
        raise ValidationError("time must be nonnegative")
    p = scaling_constant() * a**2 * float(n) ** 8 * t**2 / z0**8
    return float(p) if p.ndim == 0 else p


def amplitude_spectral(
    tr: RydbergTransition, m: MirrorMotion, spec: MotionSpectrum, t: float
) -> ExcitationResult:
    """Amplitude from the motion spectrum.

    c_e = -(K S / (sqrt(2 pi) hbar)) sum_j g_j (e^{-i(w_j - w0)t} - 1)/(w_j - w0) dw

    which is the time-domain integral of the spectrum's trigonometric
    interpolant of f; the sign follows the time-domain definition.
    """
    t = float(t)
    if spec.motion is not m and spec.motion != m:
        raise WindowMismatchError("spectrum was built from a different mirror motion")
    if not 0.0 <= t <= spec.window:
        raise WindowMismatchError(f"t={t!r} s outside the spectrum window [0, {spec.window!r}]")
    if tr.omega0 > spec.omegas[-1]:
        raise UndersamplingError(
            f"transition frequency {tr.omega0:.6g} rad/s above the spectrum band "
            f"{spec.omegas[-1]:.6g} rad/s; sample more finely"
        )
    k_coef, _ = perturbation_coefficient(m.z0, m.amplitude)
    total = kernels.spectral_kernel_sum(spec.omegas, spec.g, tr.omega0, t) * spec.domega
    amp = complex(-k_coef * tr.dipole_sq / (math.sqrt(2.0 * math.pi) * constants().hbar) * total)
    return ExcitationResult(amp, abs(amp) ** 2, Method.SPECTRAL)
