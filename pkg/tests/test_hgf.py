import cmath
import math

import numpy as np
import pytest

from hgtf.hermite import hermite_eval
from hgtf.hgf import (
    TFPoint,
    WindowSpec,
    adequate_grid,
    freq_envelope,
    integral_In,
    phi,
    phi_ft,
    sampling_problems,
    support_halfwidth,
    window_moments,
)
from hgtf.signal import Signal, forward_ft, ft_on_axis, uniform_axis


def test_window_spec_derives_delta_omega():
    spec = WindowSpec(3, 0.5)
    assert spec.delta_omega == 1.0
    assert spec.delta_t * spec.delta_omega == 0.5
    assert spec.sigma_t == pytest.approx(math.sqrt(7) * 0.5)
    assert spec.sigma_omega == pytest.approx(math.sqrt(7))
    assert spec.sigma_t * spec.sigma_omega == pytest.approx(3.5)
    assert spec.with_order(0) == WindowSpec(0, 0.5)


@pytest.mark.parametrize("n, dt", [(-1, 1.0), (1.5, 1.0), (0, 0.0), (0, -2.0), (0, math.inf)])
def test_window_spec_rejects(n, dt):
    with pytest.raises(ValueError):
        WindowSpec(n, dt)


def test_tfpoint_must_be_finite():
    with pytest.raises(ValueError):
        TFPoint(math.nan, 0.0)
    with pytest.raises(ValueError):
        TFPoint(0.0, math.inf)


def test_phi_at_centre():
    spec = WindowSpec(0, 0.7)
    point = TFPoint(1.3, 2.5)
    v = phi(spec, point, 1.3)
    assert abs(v) == pytest.approx(1 / math.sqrt(math.sqrt(2 * math.pi) * 0.7), rel=1e-14)
    assert cmath.phase(v) == pytest.approx(cmath.phase(cmath.exp(1j * 2.5 * 1.3)), abs=1e-14)
    assert phi(WindowSpec(1, 0.7), point, 1.3) == 0


def test_phi_order_two_root():
    # H_2(1/sqrt 2) = 0, so phi_2 vanishes at t = 1 for delta_t = 1
    assert abs(phi(WindowSpec(2, 1.0), TFPoint(), 1.0)) < 1e-15


def test_phi_explicit_formula():
    # direct substitution of the raw Hermite polynomial and normalizer
    n, d, T, W = 4, 0.8, -0.5, 1.5
    t = np.linspace(-4, 3, 41)
    x = (t - T) / (math.sqrt(2) * d)
    norm = math.sqrt(2**n * math.factorial(n) * math.sqrt(2 * math.pi) * d)
    expected = hermite_eval(n, x) * np.exp(-(((t - T) / (2 * d)) ** 2)) / norm * np.exp(1j * W * t)
    np.testing.assert_allclose(phi(WindowSpec(n, d), TFPoint(T, W), t), expected, rtol=1e-12, atol=1e-15)


def test_phi_ft_at_centre():
    spec = WindowSpec(0, 0.7)
    point = TFPoint(1.3, 2.5)
    v = phi_ft(spec, point, 2.5)
    assert abs(v) == pytest.approx(1 / math.sqrt(math.sqrt(2 * math.pi) * spec.delta_omega), rel=1e-14)
    assert abs(cmath.phase(v)) < 1e-15
    assert phi_ft(WindowSpec(1, 0.7), point, 2.5) == 0


@pytest.mark.parametrize("n", range(9))
def test_phi_ft_matches_numerical_transform(n):
    spec = WindowSpec(n, 1.0)
    point = TFPoint(0.4, 3.0)
    t0, dt = -30.0, 1 / 32
    t = uniform_axis(t0, dt, 1920)
    sig = Signal(phi(spec, point, t), t0, dt)
    spec_num = forward_ft(sig)
    closed = phi_ft(spec, point, spec_num.omegas)
    rms = np.sqrt(np.mean(np.abs(spec_num.values - closed) ** 2))
    assert rms / np.max(np.abs(closed)) <= 1e-6


@pytest.mark.parametrize("n", [0, 1, 2, 3, 6, 9])
def test_phase_factor(n):
    # after removing the shift phase, phi_ft is (-1j)**n times a real envelope;
    # check the phase where that envelope is clearly positive
    spec = WindowSpec(n, 1.0)
    point = TFPoint(2.0, -1.0)
    w = np.linspace(-5, 3, 801)
    env = freq_envelope(spec, w - point.Omega)
    pos = w[env > 0.5 * env.max()]
    v = phi_ft(spec, point, pos) * np.exp(1j * point.T * (pos - point.Omega))
    ref = np.angle((-1j) ** n)
    assert np.max(np.abs(np.angle(v * np.exp(-1j * ref)))) <= 1e-9


def test_phi_ft_norm():
    spec = WindowSpec(5, 0.3)
    w = uniform_axis(-60, 0.01, 12001)
    assert np.sum(np.abs(phi_ft(spec, TFPoint(0, 1), w)) ** 2) * 0.01 == pytest.approx(1.0, abs=1e-10)


def test_integral_In_examples():
    assert integral_In(0.5, 0.0, 0) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-15)
    assert abs(integral_In(0.5, 0.0, 1)) < 1e-15


@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("b", [0.0, 0.5, 1.0, 2.0])
def test_integral_In_against_quadrature(n, b):
    x = uniform_axis(-12, 1e-3, 24001)
    quad = np.sum(hermite_eval(n, x) * np.exp(-(0.5 * x * x + 1j * b * x))) * 1e-3
    assert abs(integral_In(0.5, b, n) - quad) <= 1e-8


def test_integral_In_other_a():
    x = uniform_axis(-15, 1e-3, 30001)
    a, b, n = 0.3, 0.7, 4
    quad = np.sum(hermite_eval(n, x) * np.exp(-(a * x * x + 1j * b * x))) * 1e-3
    assert integral_In(a, b, n) == pytest.approx(quad, rel=1e-9)


@pytest.mark.parametrize("a", [0.0, -1.0, 1.0, 2.0])
def test_integral_In_domain(a):
    with pytest.raises(ValueError):
        integral_In(a, 0.0, 2)


def test_window_moments_examples():
    m = window_moments(WindowSpec(0, 1.0), TFPoint())
    assert m.energy == pytest.approx(1.0, abs=1e-12)
    assert m.sigma_t == pytest.approx(1.0, abs=1e-9)
    assert m.sigma_omega == pytest.approx(0.5, abs=1e-9)
    assert m.uncertainty_product == pytest.approx(0.5, abs=1e-9)
    m = window_moments(WindowSpec(3, 0.5), TFPoint())
    assert m.sigma_t == pytest.approx(math.sqrt(7) * 0.5, abs=1e-9)
    assert m.sigma_omega == pytest.approx(math.sqrt(7), abs=1e-9)


@pytest.mark.parametrize("n", [0, 2, 5])
def test_window_moments_translation(n):
    m = window_moments(WindowSpec(n, 0.8), TFPoint(5.0, -2.0))
    assert m.mu_t == pytest.approx(5.0, abs=1e-9)
    assert m.mu_omega == pytest.approx(-2.0, abs=1e-9)


def test_sampling_rule():
    spec = WindowSpec(2, 1.0)
    assert sampling_problems(spec, 1 / 8) == []
    assert len(sampling_problems(spec, 0.2)) == 1
    hw = support_halfwidth(spec)
    assert hw == pytest.approx((math.sqrt(5) + 8) * math.sqrt(2))
    assert sampling_problems(spec, 0.1, (-hw - 1, hw + 1)) == []
    assert len(sampling_problems(spec, 0.2, (-hw + 1, hw))) == 2


def test_adequate_grid_satisfies_rule():
    spec = WindowSpec(4, 0.3)
    point = TFPoint(2.0, 0.0)
    t0, dt, count = adequate_grid(spec, point)
    assert sampling_problems(spec, dt, (t0, t0 + (count - 1) * dt), point.T) == []


def test_gram_matrix_is_identity():
    t0, dt = -20.0, 1 / 64
    t = uniform_axis(t0, dt, 2561)
    basis = np.array([phi(WindowSpec(n, 1.0), TFPoint(0.0, 3.0), t) for n in range(9)])
    gram = np.conj(basis) @ basis.T * dt
    np.testing.assert_allclose(gram, np.eye(9), rtol=0, atol=1e-7)


def test_ft_on_axis_matches_forward_ft_off_grid():
    spec, point = WindowSpec(1, 0.5), TFPoint(0.3, 1.0)
    t = uniform_axis(-10, 1 / 32, 640)
    w = uniform_axis(-3.3, 0.0731, 100)
    vals = ft_on_axis(phi(spec, point, t), -10, 1 / 32, w)
    np.testing.assert_allclose(vals, phi_ft(spec, point, w), rtol=0, atol=1e-10)
