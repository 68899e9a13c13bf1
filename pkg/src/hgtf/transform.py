"""Order-n harmonic Gaussian transforms, energy densities and marginals.

``Psi_n(T, Omega) = 1/sqrt(2 pi) * integral conj(phi_n(t; T, Omega)) psi(t) dt``.

Because ``conj(phi_n) = env_n(t - T) * exp(-1j Omega t)`` with a real
envelope, each row of fixed ``T`` is a continuous-FT of the windowed signal
``env_n(t - T) psi(t)``; :func:`analyze` evaluates it with one chirp-z FFT
per row.  :func:`analyze_freq` evaluates the same quantity from the spectrum
side and :func:`analyze_direct` by explicit summation; both exist so the grid
path can be checked against something it does not share code with.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .diagnostics import CoverageWarning, SamplingWarning
from .hgf import freq_envelope, phi, sampling_problems, time_envelope
from .signal import (
    SQRT_2PI,
    as_uniform_axis,
    chirp_dft,
    default_freq_axis,
    default_time_axis,
    forward_ft,
    ft_on_axis,
)

__all__ = [
    "TFGrid",
    "Marginal",
    "analyze",
    "analyze_freq",
    "analyze_direct",
    "energy_density",
    "marginal_time",
    "marginal_freq",
    "grid_marginal_time",
    "grid_marginal_freq",
    "energy_of_grid",
]

KINDS = ("psi_n", "energy_density", "wigner", "gabor")
COVERAGE_RATIO = 1e-8
_CHUNK = 64


@dataclass(frozen=True, eq=False)
class TFGrid:
    """Values over a ``(T, Omega)`` grid, indexed ``values[i_T, j_Omega]``.

    `spec` is the analysing :class:`~hgtf.hgf.WindowSpec` (``None`` for
    Wigner-Ville grids) and `signal_grid` the ``(t0, dt, count)`` of the
    analysed signal, which the integral reconstruction resamples onto.
    """

    values: np.ndarray
    T_axis: np.ndarray
    Omega_axis: np.ndarray
    spec: object
    kind: str
    signal_grid: tuple = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown grid kind {self.kind!r}")
        _, _, T = as_uniform_axis(self.T_axis, "T axis")
        _, _, W = as_uniform_axis(self.Omega_axis, "Omega axis")
        v = np.asarray(self.values)
        if v.shape != (T.size, W.size):
            raise ValueError(f"values shape {v.shape} does not match axes {(T.size, W.size)}")
        if self.kind in ("energy_density", "wigner"):
            if np.iscomplexobj(v):
                raise ValueError(f"{self.kind} grids must be real")
            if self.kind == "energy_density" and np.any(v < 0):
                raise ValueError("energy density grids must be non-negative")
        v = np.array(v)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "T_axis", T)
        object.__setattr__(self, "Omega_axis", W)

    @property
    def dT(self):
        return (self.T_axis[-1] - self.T_axis[0]) / (self.T_axis.size - 1)

    @property
    def dOmega(self):
        return (self.Omega_axis[-1] - self.Omega_axis[0]) / (self.Omega_axis.size - 1)

    def replace(self, values, kind=None):
        return TFGrid(values, self.T_axis, self.Omega_axis, self.spec, kind or self.kind, self.signal_grid)

    def __mul__(self, scalar):
        return self.replace(self.values * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class Marginal:
    """A time marginal ``p_n(T)`` or frequency marginal ``rho_n(Omega)``."""

    axis: np.ndarray
    values: np.ndarray
    spec: object
    which: str

    def __post_init__(self):
        if self.which not in ("time", "frequency"):
            raise ValueError("which must be 'time' or 'frequency'")
        if np.any(np.asarray(self.values) < 0):
            raise ValueError("marginal densities must be non-negative")

    @property
    def step(self):
        return (self.axis[-1] - self.axis[0]) / (self.axis.size - 1)

    def integral(self):
        return float(np.sum(self.values) * self.step)


def _axes(signal, T_axis, Omega_axis):
    T = default_time_axis(signal) if T_axis is None else T_axis
    W = default_freq_axis(signal) if Omega_axis is None else Omega_axis
    return as_uniform_axis(T, "T axis")[2], as_uniform_axis(W, "Omega axis")[2]


def _check_sampling(signal, spec, stacklevel=3):
    problems = sampling_problems(spec, signal.dt)
    if problems:
        warnings.warn("; ".join(problems), SamplingWarning, stacklevel=stacklevel)


def _support(x, dens, ratio=COVERAGE_RATIO):
    keep = np.nonzero(dens > ratio * dens.max())[0]
    return x[keep[0]], x[keep[-1]]


def _check_axes_cover(signal, spec, T, W, stacklevel=3):
    mag2 = np.abs(signal.samples) ** 2
    if not mag2.any():
        return
    lo, hi = _support(signal.times, mag2)
    spectrum = forward_ft(signal, check_leakage=False)
    wlo, whi = _support(spectrum.omegas, np.abs(spectrum.values) ** 2)
    missing = []
    if T[0] > lo or T[-1] < hi:
        missing.append(f"T axis [{T[0]:.6g}, {T[-1]:.6g}] misses signal support [{lo:.6g}, {hi:.6g}]")
    if W[0] > wlo or W[-1] < whi:
        missing.append(f"Omega axis [{W[0]:.6g}, {W[-1]:.6g}] misses signal band [{wlo:.6g}, {whi:.6g}]")
    if missing:
        warnings.warn("; ".join(missing), CoverageWarning, stacklevel=stacklevel)


def analyze(signal, spec, T_axis=None, Omega_axis=None):
    """Order-n time-frequency grid ``Psi_n`` of `signal` (kind ``psi_n``).

    Parameters
    ----------
    signal : Signal
    spec : WindowSpec
        Order and width of the analysing family.
    T_axis, Omega_axis : array_like, optional
        Uniform axes; default to the signal time grid and its centred
        frequency grid, each decimated to at most 512 points.

    Returns
    -------
    TFGrid
    """
    T, W = _axes(signal, T_axis, Omega_axis)
    _check_sampling(signal, spec)
    _check_axes_cover(signal, spec, T, W)
    t = signal.times
    out = np.empty((T.size, W.size), dtype=complex)
    for lo in range(0, T.size, _CHUNK):
        rows = T[lo : lo + _CHUNK]
        windowed = time_envelope(spec, t[None, :] - rows[:, None]) * signal.samples[None, :]
        out[lo : lo + rows.size] = ft_on_axis(windowed, signal.t0, signal.dt, W)
    return TFGrid(out, T, W, spec, "psi_n", signal.grid())


def analyze_freq(signal, spec, T_axis=None, Omega_axis=None):
    """Same grid as :func:`analyze`, computed from the spectrum of `signal`.

    Integrates ``conj(FT[phi_n])(omega) * S(omega)`` over the centred
    frequency grid, one chirp-z sum per ``Omega`` column.
    """
    T, W = _axes(signal, T_axis, Omega_axis)
    spectrum = forward_ft(signal, check_leakage=False)
    w = spectrum.omegas
    T0, dT, _ = as_uniform_axis(T)
    out = np.empty((T.size, W.size), dtype=complex)
    phase_n = 1j**spec.n
    for lo in range(0, W.size, _CHUNK):
        cols = W[lo : lo + _CHUNK]
        prod = freq_envelope(spec, w[None, :] - cols[:, None]) * spectrum.values[None, :]
        sums = chirp_dft(prod, spectrum.omega0, spectrum.domega, T0, dT, T.size, sign=+1)
        block = sums * np.exp(-1j * T[None, :] * cols[:, None])
        out[:, lo : lo + cols.size] = (phase_n * spectrum.domega / SQRT_2PI) * block.T
    return TFGrid(out, T, W, spec, "psi_n", signal.grid())


def analyze_direct(signal, spec, T, Omega):
    """``Psi_n`` at individual points by explicit summation against ``phi_n``.

    `T` and `Omega` broadcast against each other.  Cost is one full pass
    over the signal per point; meant for spot checks.
    """
    from .hgf import TFPoint

    T, Omega = np.broadcast_arrays(np.asarray(T, dtype=float), np.asarray(Omega, dtype=float))
    t = signal.times
    out = np.empty(T.shape, dtype=complex)
    for idx in np.ndindex(T.shape):
        basis = phi(spec, TFPoint(float(T[idx]), float(Omega[idx])), t)
        out[idx] = np.sum(np.conj(basis) * signal.samples) * signal.dt / SQRT_2PI
    return out if out.ndim else complex(out)


def energy_density(grid):
    """``|Psi_n|**2`` as a real, non-negative grid of kind ``energy_density``."""
    if grid.kind not in ("psi_n", "gabor"):
        raise ValueError(f"energy_density needs a psi_n or gabor grid, got {grid.kind!r}")
    return grid.replace(np.abs(grid.values) ** 2, kind="energy_density")


def marginal_time(signal, spec, T_axis=None):
    """Time marginal ``p_n(T) = sum |phi_n(t; T)|**2 |psi(t)|**2 dt``.

    Computed directly from the samples, not from a 2-D grid.
    """
    T = as_uniform_axis(default_time_axis(signal) if T_axis is None else T_axis, "T axis")[2]
    _check_sampling(signal, spec)
    t = signal.times
    mag2 = np.abs(signal.samples) ** 2
    vals = np.empty(T.size)
    for lo in range(0, T.size, _CHUNK):
        rows = T[lo : lo + _CHUNK]
        env2 = time_envelope(spec, t[None, :] - rows[:, None]) ** 2
        vals[lo : lo + rows.size] = env2 @ mag2 * signal.dt
    return Marginal(T, vals, spec, "time")


def marginal_freq(signal, spec, Omega_axis=None):
    """Frequency marginal ``rho_n(Omega) = sum |FT[phi_n](omega)|**2 |S(omega)|**2 domega``."""
    W = as_uniform_axis(default_freq_axis(signal) if Omega_axis is None else Omega_axis, "Omega axis")[2]
    spectrum = forward_ft(signal, check_leakage=False)
    w = spectrum.omegas
    mag2 = np.abs(spectrum.values) ** 2
    vals = np.empty(W.size)
    for lo in range(0, W.size, _CHUNK):
        cols = W[lo : lo + _CHUNK]
        env2 = freq_envelope(spec, w[None, :] - cols[:, None]) ** 2
        vals[lo : lo + cols.size] = env2 @ mag2 * spectrum.domega
    return Marginal(W, vals, spec, "frequency")


def _density(grid):
    if grid.kind in ("psi_n", "gabor"):
        return np.abs(grid.values) ** 2
    if grid.kind == "energy_density":
        return grid.values
    raise ValueError(f"expected a psi_n, gabor or energy_density grid, got {grid.kind!r}")


def grid_marginal_time(grid):
    """Omega-integral of the density of `grid` at every ``T``."""
    return Marginal(grid.T_axis, _density(grid).sum(axis=1) * grid.dOmega, grid.spec, "time")


def grid_marginal_freq(grid):
    """T-integral of the density of `grid` at every ``Omega``."""
    return Marginal(grid.Omega_axis, _density(grid).sum(axis=0) * grid.dT, grid.spec, "frequency")


def boundary_ratio(values):
    """Largest boundary-cell magnitude over the largest magnitude (0 for a zero grid)."""
    mag = np.abs(values)
    peak = mag.max()
    if peak == 0:
        return 0.0
    edge = max(mag[0].max(), mag[-1].max(), mag[:, 0].max(), mag[:, -1].max())
    return float(edge / peak)


def energy_of_grid(grid):
    """Rectangle-rule plane integral of ``|Psi_n|**2``.

    Warns with :class:`CoverageWarning` when boundary cells exceed 1e-8 of
    the peak, i.e. when the grid truncates part of the distribution.
    """
    dens = _density(grid)
    ratio = boundary_ratio(dens)
    if ratio > COVERAGE_RATIO:
        warnings.warn(
            f"grid boundary holds {ratio:.3g} of the peak density; energy may be truncated",
            CoverageWarning,
            stacklevel=2,
        )
    return float(np.sum(dens) * grid.dT * grid.dOmega)
