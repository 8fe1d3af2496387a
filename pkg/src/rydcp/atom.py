"""Hydrogenic Rydberg transitions.

Selection rules for the quadratic coupling allow Delta l = 0, +-2; the
circular-state n -> n+2 transition (Delta l = 2) is the natural target since
both ends are long-lived.  None of that bookkeeping is modelled here: a
transition is just a frequency and a squared-dipole magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import QuantumNumberError
from .quantities import constants


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise QuantumNumberError(f"principal quantum number must be an integer >= 1, got {n!r}")
    return int(n)


def transition_frequency(n: int, n_prime: int) -> float:
    """Angular frequency (rad/s) of the hydrogenic n -> n_prime transition.

    No quantum defects: omega0 = (Ry/hbar) (1/n^2 - 1/n_prime^2).
    """
    n, n_prime = _check_n(n), _check_n(n_prime)
    if n_prime <= n:
        raise QuantumNumberError(f"need n < n_prime, got n={n}, n_prime={n_prime}")
    return constants().rydberg_angular_frequency * (1.0 / n**2 - 1.0 / n_prime**2)


def dipole_sq_scale(n: int) -> float:
    """Squared-dipole magnitude S(n) = e^2 a0^2 n^4 in statC^2 cm^2.

    The proportionality constant is taken as exactly 1, which makes the
    results order-of-magnitude calibrated rather than state-specific.
    """
    n = _check_n(n)
    c = constants()
    return (c.electron_charge * c.bohr_radius) ** 2 * float(n) ** 4


@dataclass(frozen=True)
class RydbergTransition:
    n_initial: int
    n_final: int
    omega0: float  # rad/s
    dipole_sq: float  # statC^2 cm^2, the sigma-weighted |sigma_ij (d_i d_j)^eg|

    def __post_init__(self):
        expected = transition_frequency(self.n_initial, self.n_final)
        if not abs(self.omega0 - expected) <= 1e-12 * expected:
            raise QuantumNumberError(
                f"omega0={self.omega0!r} inconsistent with n={self.n_initial}"
                f"->{self.n_final} (expected {expected!r})"
            )
        if not self.dipole_sq > 0:
            raise QuantumNumberError("dipole_sq must be positive")

    @property
    def frequency_hz(self) -> float:
        return self.omega0 / (2.0 * math.pi)


def make_transition(n: int, n_prime: int | None = None) -> RydbergTransition:
    """Build the n -> n_prime transition (n_prime defaults to n + 2)."""
    if n_prime is None:
        n_prime = _check_n(n) + 2
    return RydbergTransition(
        n_initial=int(n),
        n_final=int(n_prime),
        omega0=transition_frequency(n, n_prime),
        dipole_sq=dipole_sq_scale(n),
    )
