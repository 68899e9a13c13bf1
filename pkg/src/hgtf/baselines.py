"""Reference distributions: Wigner-Ville and windowed (Gabor) Fourier transforms."""

import math
import warnings

import numpy as np
from scipy.signal import resample

from .diagnostics import HGTFWarning
from .hgf import WindowSpec
from .signal import as_uniform_axis, chirp_dft, default_freq_axis, default_time_axis, ft_on_axis
from .transform import TFGrid

__all__ = [
    "wigner_ville",
    "stft",
    "gabor_window",
    "gabor_transform",
    "window_energy",
    "GABOR_DELTA_T",
]

GABOR_DELTA_T = 1.0 / (2.0 * math.sqrt(math.pi))
REALNESS_TOL = 1e-10
NORM_TOL = 1e-8
_CHUNK = 32


def _axes(signal, T_axis, Omega_axis):
    T = default_time_axis(signal) if T_axis is None else T_axis
    W = default_freq_axis(signal) if Omega_axis is None else Omega_axis
    return as_uniform_axis(T, "T axis")[2], as_uniform_axis(W, "Omega axis")[2]


def wigner_ville(signal, T_axis=None, Omega_axis=None, return_residue=False):
    """Wigner-Ville distribution of `signal` on a ``(T, Omega)`` grid.

    ``W(t, omega) = 1/(2 pi) * integral conj(psi(t - u/2)) psi(t + u/2) exp(-1j omega u) du``

    The signal is oversampled by two with FFT interpolation so that the half
    lags ``t +- u/2`` fall on samples; the lag step is the original ``dt``,
    which covers the full band ``[-pi/dt, pi/dt)`` without aliasing for a
    signal band-limited to that range.  No analytic-signal conversion is
    applied.  Every ``T`` must lie on the half-sample grid
    ``t0 + k * dt/2`` inside the signal.

    With ``return_residue=True`` also returns the largest discarded
    imaginary part relative to ``max |W|``.
    """
    T, W = _axes(signal, T_axis, Omega_axis)
    n = len(signal)
    dt = signal.dt
    fine = resample(signal.samples, 2 * n)
    pos = (T - signal.t0) / (0.5 * dt)
    centers = np.rint(pos).astype(int)
    if np.any(np.abs(pos - centers) > 1e-9 * max(1.0, np.abs(pos).max())) or np.any(centers < 0) or np.any(centers > 2 * n - 2):
        raise ValueError("Wigner-Ville T axis must lie on the half-sample grid of the signal")
    lags = np.arange(-(n - 1), n)
    out = np.empty((T.size, W.size), dtype=complex)
    for lo in range(0, T.size, _CHUNK):
        c = centers[lo : lo + _CHUNK, None]
        minus = c - lags[None, :]
        plus = c + lags[None, :]
        valid = (minus >= 0) & (plus >= 0) & (minus < 2 * n) & (plus < 2 * n)
        prod = np.conj(fine[np.clip(minus, 0, 2 * n - 1)]) * fine[np.clip(plus, 0, 2 * n - 1)]
        prod = np.where(valid, prod, 0.0)
        out[lo : lo + c.shape[0]] = chirp_dft(prod, lags[0] * dt, dt, W[0], W[1] - W[0], W.size, sign=-1)
    out *= dt / (2.0 * math.pi)
    peak = np.abs(out).max()
    residue = float(np.abs(out.imag).max() / peak) if peak > 0 else 0.0
    if residue > REALNESS_TOL:
        warnings.warn(f"Wigner-Ville imaginary residue {residue:.3g} above {REALNESS_TOL}", HGTFWarning, stacklevel=2)
    grid = TFGrid(out.real.copy(), T, W, None, "wigner", signal.grid())
    return (grid, residue) if return_residue else grid


def gabor_window(t):
    """Fixed-width Gabor window ``2**(1/4) exp(-pi t**2)`` (unit L2 norm)."""
    t = np.asarray(t, dtype=float)
    return 2.0**0.25 * np.exp(-math.pi * t * t)


def window_energy(window, dt, halfwidth):
    """Rectangle-rule ``integral |g|**2`` with step ``dt/8``.

    The integration range starts at ``+-halfwidth`` and doubles until the
    window has decayed at its ends.
    """
    h = dt / 8.0
    hw = max(halfwidth, 8 * dt)
    for _ in range(12):
        t = h * np.arange(-math.ceil(hw / h), math.ceil(hw / h) + 1)
        mag2 = np.abs(np.asarray(window(t))) ** 2
        peak = mag2.max()
        if peak == 0 or max(mag2[0], mag2[-1]) <= 1e-24 * peak:
            break
        hw *= 2.0
    return float(np.sum(mag2) * h)


def stft(signal, window, T_axis=None, Omega_axis=None, spec=None):
    """Windowed Fourier transform ``1/sqrt(2 pi) * integral psi(t) conj(g(t - T)) exp(-1j Omega t) dt``.

    `window` is a vectorized callable ``g(t)``; it must have unit L2 norm
    (within 1e-8), which is what makes the plane integral of ``|Psi|**2``
    equal the signal energy.
    """
    norm = window_energy(window, signal.dt, signal.t_last - signal.t0)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"window is not normalized: integral |g|^2 = {norm:.12g}")
    T, W = _axes(signal, T_axis, Omega_axis)
    t = signal.times
    out = np.empty((T.size, W.size), dtype=complex)
    for lo in range(0, T.size, 64):
        rows = T[lo : lo + 64]
        windowed = np.conj(window(t[None, :] - rows[:, None])) * signal.samples[None, :]
        out[lo : lo + rows.size] = ft_on_axis(windowed, signal.t0, signal.dt, W)
    return TFGrid(out, T, W, spec, "gabor", signal.grid())


def gabor_transform(signal, T_axis=None, Omega_axis=None):
    """:func:`stft` with :func:`gabor_window`.

    The result carries ``WindowSpec(0, 1/(2 sqrt(pi)))``: that member of the
    harmonic Gaussian family is the Gabor window.
    """
    return stft(signal, gabor_window, T_axis, Omega_axis, spec=WindowSpec(0, GABOR_DELTA_T))
