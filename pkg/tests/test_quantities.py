import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rydcp.errors import IncompatibleUnitsError
from rydcp.quantities import UNITS, Quantity, constants, convert, parse_quantity, to_cgs


def test_constants_values():
    c = constants()
    # CODATA-2010 statC figure; 2018 exact value differs by 1e-7
    assert c.electron_charge == pytest.approx(4.80320425e-10, rel=1e-6)
    assert c.hbar == 1.054571817e-27
    assert c.rydberg_energy / (c.electron_charge**2 / (2 * c.bohr_radius)) == pytest.approx(1.0, abs=1e-3)


def test_constants_positive_and_stable():
    c = constants()
    assert all(v > 0 for v in (c.electron_charge, c.bohr_radius, c.hbar, c.light_speed, c.rydberg_energy))
    assert constants() is c
    assert constants() == c


@pytest.mark.parametrize(
    "text, target, expected",
    [
        ("20 um", "cm", 2e-3),
        ("30 GHz", "rad/s", 2 * math.pi * 3.0e10),
        ("0.5 us", "s", 5e-7),
        ("1 eV", "erg", 1.602176634e-12),
    ],
)
def test_convert_examples(text, target, expected):
    assert convert(parse_quantity(text), target).value == pytest.approx(expected, rel=1e-12)


def test_30ghz_angular():
    assert convert(Quantity(30, "GHz"), "rad/s").value == pytest.approx(1.884956e11, rel=1e-6)


def test_incompatible_units():
    with pytest.raises(IncompatibleUnitsError):
        convert(Quantity(1.0, "cm"), "s")
    with pytest.raises(IncompatibleUnitsError):
        to_cgs("3 us", "length")


def test_to_cgs_bare_number_is_cgs():
    assert to_cgs(2e-3, "length") == 2e-3
    assert to_cgs("20 μm", "length") == pytest.approx(2e-3)


_groups = {}
for _u, (_dim, _) in UNITS.items():
    _groups.setdefault(_dim, []).append(_u)
_pairs = [(a, b) for units in _groups.values() for a in units for b in units]


@given(
    st.floats(min_value=-1e30, max_value=1e30, allow_nan=False).filter(lambda x: x == 0 or abs(x) > 1e-30),
    st.sampled_from(_pairs),
)
def test_round_trip(value, pair):
    src, dst = pair
    q = Quantity(value, src)
    back = convert(convert(q, dst), src)
    assert back.unit == q.unit
    assert back.value == pytest.approx(value, rel=1e-12, abs=0)
