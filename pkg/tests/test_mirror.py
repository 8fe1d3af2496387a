import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rydcp.errors import GeometryError, OutOfSpanError, UndersamplingError, ValidationError
from rydcp.mirror import (
    Harmonic,
    MirrorMotion,
    SquareTrain,
    Tabulated,
    distance,
    evaluate_shape,
    load_tabulated,
    min_samples,
    spectrum,
)

W = 2 * math.pi * 3e10


def motion(shape, z0=2e-3, a=2e-4):
    return MirrorMotion(z0, a, shape)


def test_harmonic_values():
    m = motion(Harmonic(W))
    assert evaluate_shape(m, 0.0) == 0.0
    assert evaluate_shape(m, math.pi / (2 * W)) == pytest.approx(1.0, abs=1e-15)


def test_square_train_zero_mean():
    s = SquareTrain(W, 0.5)
    m = motion(s)
    t = (np.arange(100_000) + 0.5) * s.period / 100_000
    assert abs(np.mean(evaluate_shape(m, t))) < 1e-12
    assert s.levels == (0.5, -0.5)


@pytest.mark.parametrize("duty", [0.1, 0.3, 0.77])
def test_square_train_zero_mean_any_duty(duty):
    s = SquareTrain(W, duty)
    t = (np.arange(200_000) + 0.5) * s.period / 200_000
    assert abs(np.mean(evaluate_shape(motion(s), t))) < 1e-12


def test_distance_values():
    m = motion(Harmonic(W))
    assert distance(m, 0.0) == pytest.approx(2e-3)
    assert distance(m, math.pi / (2 * W)) == pytest.approx(1.8e-3, rel=1e-12)
    t = np.linspace(0, 5 * 2 * math.pi / W, 100_001)
    assert np.min(distance(m, t)) == pytest.approx(1.8e-3, rel=1e-9)


def test_vectorised_shapes():
    m = motion(Harmonic(W, 0.3))
    t = np.linspace(0, 1e-9, 7)
    assert np.allclose(evaluate_shape(m, t), [evaluate_shape(m, x) for x in t], rtol=0, atol=1e-15)


@pytest.mark.parametrize("z0, a", [(2e-3, 2e-3), (2e-3, 3e-3), (0.0, 0.0), (2e-3, -1e-4)])
def test_geometry_rejected(z0, a):
    with pytest.raises(GeometryError):
        MirrorMotion(z0, a, Harmonic(W))


def test_static_mirror_allowed():
    assert distance(MirrorMotion(2e-3, 0.0, Harmonic(W)), 1e-9) == 2e-3


@pytest.mark.parametrize(
    "times, values",
    [([0, 1], [0, 1.5]), ([0.1, 1], [0, 0]), ([0, 1, 1], [0, 0, 0]), ([0], [0]), ([0, 1], [0, np.nan])],
)
def test_tabulated_rejects(times, values):
    with pytest.raises(ValidationError):
        Tabulated(times, values)


def test_square_rejects():
    with pytest.raises(ValidationError):
        SquareTrain(W, 1.0)
    with pytest.raises(ValidationError):
        SquareTrain(-W, 0.5)


def test_tabulated_interpolates_and_span():
    m = motion(Tabulated([0, 1, 2], [0, 1, -1]))
    assert evaluate_shape(m, 0.5) == 0.5
    assert evaluate_shape(m, 1.5) == 0.0
    with pytest.raises(OutOfSpanError):
        evaluate_shape(m, 2.5)
    with pytest.raises(ValidationError):
        evaluate_shape(m, -1.0)


def test_tabulated_is_read_only():
    tab = Tabulated([0, 1], [0, 1])
    with pytest.raises(ValueError):
        tab.values[0] = 0.5


def test_load_tabulated(tmp_path):
    path = tmp_path / "shape.txt"
    path.write_text("# t f\n0 0\n1e-9 0.5\n2e-9 -0.25\n")
    tab = load_tabulated(path)
    assert tab.span == 2e-9
    assert list(tab.values) == [0, 0.5, -0.25]
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0 0\n1 1 1\n")
    with pytest.raises(ValidationError):
        load_tabulated(bad)


# spectrum


def _window(omega, periods):
    return periods * 2 * math.pi / omega


def test_spectrum_peaks_at_drive_frequency():
    m = motion(Harmonic(W))
    T = _window(W, 50)
    spec = spectrum(m, T, min_samples(m, T))
    mag = np.abs(spec.g)
    peak = np.argmax(mag)
    assert abs(abs(spec.omegas[peak]) - W) < spec.domega / 2
    background = np.median(mag)
    assert mag[peak] / max(background, 1e-300) > 1e2


def test_spectrum_of_zero_is_zero():
    tab = Tabulated(np.linspace(0, 1e-9, 50), np.zeros(50))
    spec = spectrum(motion(tab), 1e-9, 301)
    assert np.all(spec.g == 0)


def test_spectrum_grid_symmetric_and_odd():
    m = motion(Harmonic(W))
    T = _window(W, 10)
    spec = spectrum(m, T, 400)
    assert spec.n_samples % 2 == 1
    assert np.allclose(spec.omegas, -spec.omegas[::-1], rtol=0, atol=1e-6 * spec.domega)
    assert spec.domega == pytest.approx(2 * math.pi / T)


def test_spectrum_hermitian_and_parseval():
    rng = np.random.default_rng(4)
    t = np.linspace(0, 1e-9, 40)
    tab = Tabulated(t, rng.uniform(-1, 1, t.size))
    m = motion(tab)
    spec = spectrum(m, 1e-9, 4001)
    g = spec.g
    assert np.allclose(g, np.conj(g[::-1]), rtol=1e-9, atol=0)
    dt = spec.window / spec.n_samples
    f = evaluate_shape(m, np.arange(spec.n_samples) * dt)
    lhs = np.sum(np.abs(g) ** 2) * spec.domega
    rhs = np.sum(f**2) * dt
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_square_train_fundamental_is_2_over_pi():
    s = SquareTrain(W, 0.5)
    T = _window(W, 40)
    m_sq = motion(s)
    m_h = motion(Harmonic(W))
    n = 40 * 2000 + 1
    g_sq = spectrum(m_sq, T, n).g
    g_h = spectrum(m_h, T, n).g
    k = np.argmax(np.abs(g_h))
    # half the peak-to-peak of the square is 1/2; its fundamental is (4/pi)(1/2)
    assert abs(g_sq[k]) / abs(g_h[k]) == pytest.approx(2 / math.pi, rel=1e-3)


def test_spectrum_undersampling_guard():
    m = motion(Harmonic(W))
    T = _window(W, 10)
    need = min_samples(m, T)
    assert need == 320
    with pytest.raises(UndersamplingError):
        spectrum(m, T, need - 1)
    with pytest.raises(UndersamplingError):
        spectrum(m, T, need, max_frequency=4 * W)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 2 * math.pi), st.floats(0.01, 0.99), st.floats(1e-6, 1 - 1e-6))
def test_shapes_bounded(phase, duty, ratio):
    h = MirrorMotion(1.0, ratio, Harmonic(W, phase))
    s = MirrorMotion(1.0, ratio, SquareTrain(W, duty))
    t = np.linspace(0, 3 * 2 * math.pi / W, 997)
    for m in (h, s):
        f = evaluate_shape(m, t)
        assert np.all(np.abs(f) <= 1.0)
        assert np.all(distance(m, t) > 0)
