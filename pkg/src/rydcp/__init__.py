"""Rydberg-atom excitation through the dynamic Casimir-Polder coupling.

A two-level Rydberg atom sits in the near zone of a perfectly reflecting
mirror whose position is modulated in time.  The oscillating image-dipole
interaction drives transitions between Rydberg levels; this package
computes the amplitude and probability of that excitation for a single atom
and for a trapped gas, and flags when a scenario leaves the regime where
the first-order, near-zone treatment holds.

All internal arithmetic is Gaussian cgs.
"""

from .quantities import PhysicalConstants, Quantity, constants, convert, parse_quantity
from .atom import RydbergTransition, dipole_sq_scale, make_transition, transition_frequency
from .mirror import (
    Harmonic,
    MirrorMotion,
    MotionSpectrum,
    SquareTrain,
    Tabulated,
    distance,
    evaluate_shape,
    spectrum,
)
from .coupling import (
    DipoleExpectation,
    SIGMA,
    image_field,
    interaction_coefficient,
    perturbation_coefficient,
    static_cp_potential,
)
from .excitation import (
    ExcitationResult,
    Method,
    amplitude_spectral,
    amplitude_time_domain,
    probability_resonant,
    probability_scaling,
    scaling_constant,
)
from .gas import (
    GasProfile,
    Gaussian,
    Parabolic,
    TabulatedProfile,
    density,
    excited_count_closed_form,
    excited_count_quadrature,
)
from .validity import Scenario, ValidityReport, full_report
from .errors import (
    RydcpError,
    ValidationError,
    ConvergenceError,
)

__version__ = "0.1.0"
