"""Pure numpy implementations of the hot loops.

These are the reference versions; ``_kernels.pyx`` mirrors them one to one.
Sums go through ``np.sum`` (pairwise), so results do not depend on how a
caller chunks its input.
"""

import numpy as np

SERIES_CUTOFF = 0.5
_SERIES_TERMS = 18
_FACT = np.cumprod(np.r_[1.0, np.arange(1.0, _SERIES_TERMS + 2)])  # k! for k = 0..TERMS+1
# A(x) = int_0^1 e^{ixu} du, W1(x) = int_0^1 u e^{ixu} du as power series in (ix)
_A_COEF = 1.0 / _FACT[1:_SERIES_TERMS + 1]
_W1_COEF = 1.0 / (_FACT[:_SERIES_TERMS] * np.arange(2.0, _SERIES_TERMS + 2))


def _horner(coef, z):
    out = np.full_like(z, coef[-1])
    for c in coef[-2::-1]:
        out = out * z + c
    return out


def segment_weights(x):
    """Filon weights for a linear segment: int_0^1 e^{ixu} ((1-u) fa + u fb) du.

    Returns ``(w0, w1)`` such that the integral is ``fa*w0 + fb*w1``.
    """
    x = np.asarray(x, dtype=float)
    a = np.empty(x.shape, dtype=complex)
    w1 = np.empty(x.shape, dtype=complex)
    small = np.abs(x) < SERIES_CUTOFF
    if np.any(small):
        ix = 1j * x[small]
        a[small] = _horner(_A_COEF, ix)
        w1[small] = _horner(_W1_COEF, ix)
    big = ~small
    if np.any(big):
        xb = x[big]
        c, s = np.cos(xb), np.sin(xb)
        a[big] = (s + 1j * (1.0 - c)) / xb
        w1[big] = (s / xb + (c - 1.0) / xb**2) + 1j * (s / xb**2 - c / xb)
    return a - w1, w1


def linear_phase_integral(times, values, omega, t_end):
    """int_{times[0]}^{t_end} e^{i omega t} f(t) dt for piecewise-linear f.

    ``times`` strictly increasing, ``times[0] <= t_end <= times[-1]``.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    k = int(np.searchsorted(times, t_end, side="right")) - 1
    k = min(k, len(times) - 1)
    ta = times[:k]
    tb = times[1:k + 1]
    fa = values[:k]
    fb = values[1:k + 1]
    if k < len(times) - 1 and t_end > times[k]:
        frac = (t_end - times[k]) / (times[k + 1] - times[k])
        ta = np.r_[ta, times[k]]
        tb = np.r_[tb, t_end]
        fa = np.r_[fa, values[k]]
        fb = np.r_[fb, values[k] + frac * (values[k + 1] - values[k])]
    if ta.size == 0:
        return 0j
    h = tb - ta
    w0, w1 = segment_weights(omega * h)
    phase = omega * ta
    terms = h * (np.cos(phase) + 1j * np.sin(phase)) * (fa * w0 + fb * w1)
    return complex(np.sum(terms.real) + 1j * np.sum(terms.imag))


def sinc(u):
    """sin(u)/u with the removable singularity filled in."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    small = np.abs(u) < 1e-4
    us = u[small]
    out[small] = 1.0 - us * us / 6.0 + us**4 / 120.0
    ub = u[~small]
    out[~small] = np.sin(ub) / ub
    return out


def spectral_kernel_sum(omegas, g, omega0, t):
    """sum_j g_j (e^{-i(w_j - w0) t} - 1)/(w_j - w0), singularity-free form."""
    omegas = np.asarray(omegas, dtype=float)
    g = np.asarray(g, dtype=complex)
    x = omegas - omega0
    half = 0.5 * x * t
    kern = -1j * t * (np.cos(half) - 1j * np.sin(half)) * sinc(half)
    terms = g * kern
    return complex(np.sum(terms.real) + 1j * np.sum(terms.imag))
