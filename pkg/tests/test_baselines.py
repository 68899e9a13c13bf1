import math

import numpy as np
import pytest

from conftest import GRID, corpus_signal
from hgtf.baselines import GABOR_DELTA_T, gabor_transform, gabor_window, stft, wigner_ville, window_energy
from hgtf.hgf import TFPoint, WindowSpec, phi
from hgtf.signal import Signal, generate, uniform_axis
from hgtf.transform import analyze, energy_of_grid


def test_wigner_properties(corpus):
    _, s = corpus
    w, residue = wigner_ville(s, return_residue=True)
    assert w.kind == "wigner" and w.spec is None
    assert residue <= 1e-10
    assert np.max(np.abs(w.values)) <= s.energy / math.pi + 1e-6
    plane = np.sum(w.values) * w.dT * w.dOmega
    assert plane == pytest.approx(s.energy, rel=1e-3)


def test_wigner_two_tones_negative():
    w = wigner_ville(corpus_signal("tones"))
    assert w.values.min() < -1e-3 * w.values.max()


def test_wigner_gaussian_closed_form():
    # W of a unit Gaussian with |psi|^2 variance s**2 is
    # exp(-t**2/(2 s**2) - 2 s**2 omega**2) / pi
    sig = 1.0
    s = generate("gaussian_pulse", {"sigma": sig}, GRID)
    T = uniform_axis(-4, 0.25, 33)
    W = uniform_axis(-3, 0.125, 49)
    w = wigner_ville(s, T, W)
    expected = np.exp(-T[:, None] ** 2 / (2 * sig**2) - 2 * sig**2 * W[None, :] ** 2) / math.pi
    assert np.max(np.abs(w.values - expected)) <= 1e-10


def test_wigner_time_marginal():
    s = corpus_signal("chirp")
    # the full centred frequency grid: summing over it isolates lag zero
    n = len(s)
    dw = 2 * math.pi / (n * s.dt)
    w = wigner_ville(s, s.times[::2], uniform_axis(-(n // 2) * dw, dw, n))
    marginal = w.values.sum(axis=1) * w.dOmega
    np.testing.assert_allclose(marginal, np.abs(s.samples[::2]) ** 2, rtol=0, atol=1e-10)


def test_wigner_rejects_off_grid_times():
    s = corpus_signal("gauss")
    with pytest.raises(ValueError):
        wigner_ville(s, uniform_axis(0.01, 0.5, 5), None)


def test_gabor_window_normalized():
    assert window_energy(gabor_window, 1 / 32, 2.0) == pytest.approx(1.0, abs=1e-12)
    assert gabor_window(0.0) == pytest.approx(2**0.25)


def test_gabor_window_is_order_zero_hgf():
    t = np.linspace(-2, 2, 41)
    np.testing.assert_allclose(gabor_window(t), phi(WindowSpec(0, GABOR_DELTA_T), TFPoint(), t).real, rtol=1e-14)


def test_gabor_equals_order_zero_transform(rng, quiet):
    s = Signal(rng.normal(size=512) + 1j * rng.normal(size=512), -8, 1 / 32)
    T = uniform_axis(-6, 0.0625, 193)
    W = uniform_axis(-20, 0.2, 201)
    g = gabor_transform(s, T, W)
    a = analyze(s, WindowSpec(0, GABOR_DELTA_T), T, W)
    assert g.kind == "gabor"
    assert np.max(np.abs(g.values - a.values)) <= 1e-10


def test_stft_energy_identity(corpus):
    _, s = corpus
    assert energy_of_grid(gabor_transform(s)) == pytest.approx(s.energy, rel=1e-3)


def test_stft_other_normalized_window():
    def box_smooth(t):
        # unit-norm Gaussian of a different width
        return (2 / math.pi) ** 0.25 * np.exp(-t * t)

    s = corpus_signal("chirp")
    assert energy_of_grid(stft(s, box_smooth)) == pytest.approx(s.energy, rel=1e-3)


def test_stft_rejects_unnormalized_window():
    with pytest.raises(ValueError):
        stft(corpus_signal("gauss"), lambda t: np.exp(-t * t))


def test_gabor_zero_signal():
    g = gabor_transform(Signal(np.zeros(128), -2, 1 / 32))
    assert np.all(g.values == 0)


def test_gabor_gaussian_blob():
    s = generate("gaussian_pulse", {"sigma": 1.0, "center": 1.5}, GRID)
    g = gabor_transform(s)
    i, j = np.unravel_index(np.argmax(np.abs(g.values)), g.values.shape)
    assert g.T_axis[i] == pytest.approx(1.5, abs=g.dT / 2)
    assert g.Omega_axis[j] == 0.0


def test_gabor_linearity():
    a, b = corpus_signal("chirp"), corpus_signal("tones")
    combo = a.with_samples(2 * a.samples - 1j * b.samples)
    expected = 2 * gabor_transform(a).values - 1j * gabor_transform(b).values
    assert np.max(np.abs(gabor_transform(combo).values - expected)) <= 1e-12
