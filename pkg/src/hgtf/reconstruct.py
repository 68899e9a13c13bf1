"""Recovering a signal from its harmonic Gaussian representations.

Two routes:

* series: expand in the orthonormal basis ``phi_n(t; T, Omega, delta_t)`` at
  one fixed point of the plane, with coefficients
  ``C_n = sqrt(2 pi) Psi_n(T, Omega)``;
* integral: integrate ``Psi_n(T, Omega) phi_n(t; T, Omega)`` over the whole
  plane for one fixed order.
"""

import math
import warnings

import numpy as np

from .diagnostics import CoverageWarning
from .hermite import hermite_fn_all
from .hgf import TAIL_MARGIN, TFPoint, WindowSpec, sampling_problems, time_envelope
from .signal import SQRT_2PI, Signal, chirp_dft, uniform_axis
from .transform import COVERAGE_RATIO, boundary_ratio

__all__ = [
    "coefficients_at",
    "default_n_max",
    "order_energies",
    "reconstruct_series",
    "reconstruct_integral",
    "relative_l2_error",
]

N_MAX_CAP = 256
TAIL_RELATIVE = 1e-8


def _basis(point, delta_t, n_max, t):
    """``phi_0 .. phi_{n_max}`` at times `t`, one recurrence sweep."""
    scale = math.sqrt(2.0) * delta_t
    envs = hermite_fn_all(n_max, (t - point.T) / scale) / math.sqrt(scale)
    return envs * np.exp(1j * point.Omega * t)[None, :]


def _check_orders(delta_t, dt, n_max):
    problems = sampling_problems(WindowSpec(0, delta_t), dt)
    # both factors of the integrand oscillate up to ~sqrt(2n+1) + tail in the
    # scaled variable x; the step in x must alias neither
    dx = dt / (math.sqrt(2.0) * delta_t)
    limit = math.pi / (math.sqrt(2 * n_max + 1) + TAIL_MARGIN)
    if dx > limit:
        problems.append(f"order {n_max} needs a scaled step <= {limit:.4g}, grid gives {dx:.4g}")
    if problems:
        raise ValueError("inadequate sampling for the requested orders: " + "; ".join(problems))


def default_n_max(coeffs, rel=TAIL_RELATIVE, cap=N_MAX_CAP):
    """Smallest ``n`` whose coefficient and the next two are below ``rel * max|C|``.

    Looking at three consecutive terms avoids stopping early on signals whose
    odd (or even) coefficients vanish by symmetry.  Returns `cap` when the
    rule is never met within the available coefficients.
    """
    mag = np.abs(np.asarray(coeffs))
    peak = mag.max() if mag.size else 0.0
    if peak == 0.0:
        return 0
    small = mag < rel * peak
    for n in range(min(cap, mag.size - 3) + 1):
        if small[n] and small[n + 1] and small[n + 2]:
            return n
    return cap


def coefficients_at(signal, point, delta_t, n_max=None):
    """Basis components ``C_n = sqrt(2 pi) Psi_n(T, Omega)``, ``n = 0 .. n_max``.

    With ``n_max=None`` the truncation of :func:`default_n_max` is applied
    (capped at 256) and the coefficients up to that order are returned.
    """
    if n_max is not None and (int(n_max) != n_max or n_max < 0):
        raise ValueError(f"n_max must be a non-negative integer, got {n_max!r}")
    if not isinstance(point, TFPoint):
        point = TFPoint(*point)
    sweep = N_MAX_CAP + 2 if n_max is None else int(n_max)
    if n_max is not None:
        _check_orders(delta_t, signal.dt, sweep)
    basis = _basis(point, delta_t, sweep, signal.times)
    coeffs = np.conj(basis) @ signal.samples * signal.dt
    if n_max is None:
        n_max = default_n_max(coeffs)
        _check_orders(delta_t, signal.dt, n_max)
        coeffs = coeffs[: n_max + 1]
    return coeffs


def order_energies(coeffs):
    """Energy carried by each order, ``|C_n|**2 = 2 pi |Psi_n|**2``."""
    return np.abs(np.asarray(coeffs)) ** 2


def reconstruct_series(coeffs, point, delta_t, grid):
    """``sum_n C_n phi_n(t; T, Omega, delta_t)`` on the time grid ``(t0, dt, count)``."""
    if not isinstance(point, TFPoint):
        point = TFPoint(*point)
    coeffs = np.asarray(coeffs, dtype=complex)
    t = uniform_axis(*grid)
    if coeffs.size == 0:
        return Signal(np.zeros_like(t, dtype=complex), grid[0], grid[1])
    basis = _basis(point, delta_t, coeffs.size - 1, t)
    return Signal(coeffs @ basis, grid[0], grid[1])


def reconstruct_integral(grid, time_grid=None):
    """Plane-integral recovery from one order-n grid of kind ``psi_n``.

    ``psi(t) = 1/sqrt(2 pi) * sum_ij Psi_n(T_i, Omega_j) phi_n(t; T_i, Omega_j) dT dOmega``,
    evaluated on `time_grid` (default: the analysed signal's grid).
    """
    if grid.kind not in ("psi_n", "gabor") or grid.spec is None:
        raise ValueError(f"reconstruct_integral needs a psi_n grid, got {grid.kind!r}")
    if time_grid is None:
        if grid.signal_grid is None:
            raise ValueError("grid carries no signal time grid; pass time_grid")
        time_grid = grid.signal_grid
    ratio = boundary_ratio(grid.values)
    if ratio > math.sqrt(COVERAGE_RATIO):
        warnings.warn(
            f"grid boundary holds {ratio:.3g} of the peak magnitude; reconstruction may be truncated",
            CoverageWarning,
            stacklevel=2,
        )
    t0, dt, count = time_grid
    t = uniform_axis(t0, dt, count)
    T, W = grid.T_axis, grid.Omega_axis
    out = np.zeros(count, dtype=complex)
    for lo in range(0, T.size, 64):
        rows = grid.values[lo : lo + 64]
        # sum_j Psi(T_i, Omega_j) exp(1j Omega_j t) for every t
        carriers = chirp_dft(rows, W[0], grid.dOmega, t0, dt, count, sign=+1)
        env = time_envelope(grid.spec, t[None, :] - T[lo : lo + 64, None])
        out += np.sum(env * carriers, axis=0)
    return Signal(out * (grid.dT * grid.dOmega / SQRT_2PI), t0, dt)


def relative_l2_error(estimate, reference):
    """``||estimate - reference|| / ||reference||`` over matching samples."""
    ref = reference.samples if isinstance(reference, Signal) else np.asarray(reference)
    est = estimate.samples if isinstance(estimate, Signal) else np.asarray(estimate)
    norm = np.linalg.norm(ref)
    if norm == 0:
        return float(np.linalg.norm(est))
    return float(np.linalg.norm(est - ref) / norm)
