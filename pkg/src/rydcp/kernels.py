"""Backend selection for the inner loops.

The compiled extension is preferred when it was built; otherwise the numpy
implementation is used.  Both expose the same three functions and agree to
rounding.
"""

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

_active = _compiled if _compiled is not None else _kernels_py
BACKEND = "compiled" if _compiled is not None else "python"


def use_backend(name):
    """Switch the process-wide backend; returns the previous name."""
    global _active, BACKEND
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} not available (have {sorted(BACKENDS)})")
    previous = BACKEND
    _active = BACKENDS[name]
    BACKEND = name
    return previous


def segment_weights(x):
    return _active.segment_weights(x)


def linear_phase_integral(times, values, omega, t_end):
    return _active.linear_phase_integral(times, values, omega, t_end)


def spectral_kernel_sum(omegas, g, omega0, t):
    return _active.spectral_kernel_sum(omegas, g, omega0, t)
