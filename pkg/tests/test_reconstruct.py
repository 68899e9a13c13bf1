import math
import warnings

import numpy as np
import pytest

from conftest import GRID, corpus_signal
from hgtf.diagnostics import CoverageWarning
from hgtf.hgf import TFPoint, WindowSpec, phi
from hgtf.reconstruct import (
    N_MAX_CAP,
    coefficients_at,
    default_n_max,
    order_energies,
    reconstruct_integral,
    reconstruct_series,
    relative_l2_error,
)
from hgtf.signal import Signal, generate, moments, uniform_axis
from hgtf.transform import analyze

# chirp used for the series route: converges well inside 64 orders at delta_t = 0.5
SERIES_CHIRP = ("linear_chirp", {"rate": 1.5, "sigma": 1.0})


def series_chirp():
    return generate(*SERIES_CHIRP, GRID)


def centre(s):
    m = moments(s)
    return TFPoint(m.mu_t, m.mu_omega)


def test_basis_element_coefficients():
    point = TFPoint(0.5, 2.0)
    t = uniform_axis(*GRID)
    s = Signal(phi(WindowSpec(0, 0.5), point, t), GRID[0], GRID[1])
    c = coefficients_at(s, point, 0.5, 10)
    assert c[0] == pytest.approx(1.0, abs=1e-8)
    assert np.max(np.abs(c[1:])) <= 1e-8


def test_default_n_max_rule():
    c = np.array([1.0, 0.0, 0.5, 0.0, 1e-9, 0.0, 1e-10, 0.0, 0.0])
    # n=1 is small but n=2 is not: a parity zero alone must not stop the sweep
    assert default_n_max(c) == 3
    assert default_n_max(np.array([1.0, 0.0, 0.5, 0.0, 0.1, 0, 0, 0])) == 5
    assert default_n_max(np.zeros(5)) == 0
    assert default_n_max(np.ones(300)) == N_MAX_CAP


def test_default_truncation_on_gaussian():
    s = generate("gaussian_pulse", {"sigma": 1.0}, GRID)
    c = coefficients_at(s, TFPoint(), 1.0)
    # the pulse is phi_0 at delta_t = 1
    assert c.size <= 3
    assert abs(c[0]) == pytest.approx(1.0, abs=1e-10)


def test_offset_pulse_coefficients_decay():
    s = generate("gaussian_pulse", {"sigma": 0.5, "center": 1.0, "omega": 1.0}, GRID)
    c = coefficients_at(s, TFPoint(), 0.5, 80)
    mag = np.abs(c)
    first_small = int(np.argmax(mag < 1e-6))
    assert 0 < first_small < 60
    assert np.all(mag[first_small + 8 :] < 1e-6)
    assert np.sum(mag**2) == pytest.approx(1.0, abs=1e-9)


def test_series_energy_converges():
    s = series_chirp()
    c = coefficients_at(s, centre(s), 0.5)
    assert np.sum(order_energies(c)) == pytest.approx(s.energy, abs=1e-4)


def test_bessel_inequality():
    s = corpus_signal("tones")
    c = coefficients_at(s, centre(s), 0.5, 64)
    partial = np.cumsum(order_energies(c))
    assert np.all(partial <= s.energy + 1e-9)


def test_coefficients_match_grid():
    s = corpus_signal("chirp")
    spec = WindowSpec(3, 0.5)
    g = analyze(s, spec)
    i, j = 256, 256
    c = coefficients_at(s, TFPoint(g.T_axis[i], g.Omega_axis[j]), 0.5, 3)
    assert abs(c[3] - math.sqrt(2 * math.pi) * g.values[i, j]) <= 1e-9


def test_inadequate_sampling_for_high_orders():
    s = generate("gaussian", {}, (-16, 1 / 16, 512))
    with pytest.raises(ValueError, match="inadequate sampling"):
        coefficients_at(s, TFPoint(), 0.5, 1000)
    with pytest.raises(ValueError):
        coefficients_at(s, TFPoint(), 0.5, -1)


def test_single_coefficient_series_is_phi0():
    point = TFPoint(0.3, -1.0)
    rec = reconstruct_series([1.0], point, 0.7, GRID)
    np.testing.assert_allclose(rec.samples, phi(WindowSpec(0, 0.7), point, rec.times), rtol=0, atol=1e-15)


def test_empty_series():
    assert np.all(reconstruct_series([], TFPoint(), 1.0, GRID).samples == 0)


def test_series_reconstruction_of_chirp():
    s = series_chirp()
    point = centre(s)
    c = coefficients_at(s, point, 0.5, 64)
    err = relative_l2_error(reconstruct_series(c, point, 0.5, s.grid()), s)
    assert err <= 1e-3


def test_series_error_non_increasing():
    s = series_chirp()
    point = centre(s)
    c = coefficients_at(s, point, 0.5, 64)
    errs = [relative_l2_error(reconstruct_series(c[: k + 1], point, 0.5, s.grid()), s) for k in range(0, 65, 4)]
    assert all(b <= a + 1e-12 for a, b in zip(errs, errs[1:]))


def test_two_tones_truncation():
    s = corpus_signal("tones")
    point = centre(s)
    c = coefficients_at(s, point, 0.5, 32)
    e0 = relative_l2_error(reconstruct_series(c[:1], point, 0.5, s.grid()), s)
    e32 = relative_l2_error(reconstruct_series(c, point, 0.5, s.grid()), s)
    assert e0 > e32


def test_integral_reconstruction_phi0():
    t = uniform_axis(*GRID)
    s = Signal(phi(WindowSpec(0, 1.0), TFPoint(0.5, 1.0), t), GRID[0], GRID[1])
    rec = reconstruct_integral(analyze(s, WindowSpec(0, 1.0)))
    assert relative_l2_error(rec, s) <= 1e-4


@pytest.mark.parametrize("n", [0, 3])
def test_integral_reconstruction_chirp(n):
    s = corpus_signal("chirp")
    rec = reconstruct_integral(analyze(s, WindowSpec(n, 0.5)))
    assert relative_l2_error(rec, s) <= 1e-3


def test_integral_reconstruction_linear():
    lam = 0.3 - 1.7j
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CoverageWarning)
        g = analyze(corpus_signal("tones"), WindowSpec(1, 0.5), uniform_axis(-8, 0.125, 129), uniform_axis(-4, 0.25, 57))
        a = reconstruct_integral(g * lam).samples
        b = lam * reconstruct_integral(g).samples
    assert np.max(np.abs(a - b)) <= 1e-12


def test_integral_reconstruction_zero_grid():
    g = analyze(Signal(np.zeros(256), -4, 1 / 32), WindowSpec(0, 0.5))
    assert np.all(reconstruct_integral(g).samples == 0)


def test_integral_reconstruction_other_time_grid():
    s = corpus_signal("gauss")
    g = analyze(s, WindowSpec(0, 0.5))
    rec = reconstruct_integral(g, (-5.0, 0.1, 101))
    ref = generate("gaussian_pulse", {"sigma": 1.0}, (-5.0, 0.1, 101))
    assert relative_l2_error(rec, ref) <= 1e-6


def test_integral_reconstruction_coverage_warning():
    s = corpus_signal("chirp")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CoverageWarning)
        g = analyze(s, WindowSpec(0, 0.5), uniform_axis(-2, 0.1, 41), uniform_axis(-2, 0.1, 41))
    with pytest.warns(CoverageWarning):
        reconstruct_integral(g)


def test_integral_reconstruction_rejects_density():
    from hgtf.transform import energy_density

    g = energy_density(analyze(corpus_signal("gauss"), WindowSpec(0, 0.5)))
    with pytest.raises(ValueError):
        reconstruct_integral(g)


def test_relative_l2_error():
    assert relative_l2_error(np.array([1.0, 1.0]), np.array([1.0, 0.0])) == 1.0
    assert relative_l2_error(np.array([3.0, 4.0]), np.zeros(2)) == 5.0
