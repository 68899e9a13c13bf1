"""Harmonic Gaussian functions and their closed-form Fourier transforms.

A harmonic Gaussian function of order ``n`` centred at ``(T, Omega)`` with
width parameter ``delta_t`` is

    phi_n(t) = h_n((t - T) / (sqrt(2) delta_t)) / sqrt(sqrt(2) delta_t) * exp(1j Omega t)

with ``h_n`` the normalized Hermite function.  Its Gaussian factor is
``exp(-((t - T) / (2 delta_t))**2)``, which is what makes the family
orthonormal with time variance ``(2n + 1) delta_t**2``.  The Fourier
transform (unitary, angular frequency, ``exp(-1j omega t)`` kernel) is

    (-1j)**n h_n((omega - Omega) / (sqrt(2) delta_omega))
        / sqrt(sqrt(2) delta_omega) * exp(-1j T (omega - Omega))

with ``delta_omega = 1 / (2 delta_t)``.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .diagnostics import SamplingWarning
from .hermite import hermite_eval, hermite_fn_eval

__all__ = [
    "WindowSpec",
    "TFPoint",
    "phi",
    "phi_ft",
    "time_envelope",
    "freq_envelope",
    "integral_In",
    "window_moments",
    "support_halfwidth",
    "sampling_problems",
    "adequate_grid",
]

# Gaussian tail margin (in units of the scaled variable x) beyond the
# oscillatory region |x| < sqrt(2n+1); exp(-8**2/2) ~ 1e-14
TAIL_MARGIN = 8.0


@dataclass(frozen=True)
class WindowSpec:
    """Order and width of one harmonic Gaussian analysis family.

    ``delta_omega`` is always derived as ``1 / (2 delta_t)``.
    """

    n: int
    delta_t: float
    delta_omega: float = field(init=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"order must be a non-negative integer, got {self.n!r}")
        if not (math.isfinite(self.delta_t) and self.delta_t > 0):
            raise ValueError(f"delta_t must be positive and finite, got {self.delta_t!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "delta_t", float(self.delta_t))
        object.__setattr__(self, "delta_omega", 0.5 / self.delta_t)

    @property
    def sigma_t(self):
        """Effective time standard deviation ``sqrt(2n+1) delta_t``."""
        return math.sqrt(2 * self.n + 1) * self.delta_t

    @property
    def sigma_omega(self):
        """Effective frequency standard deviation ``sqrt(2n+1) delta_omega``."""
        return math.sqrt(2 * self.n + 1) * self.delta_omega

    def with_order(self, n):
        return WindowSpec(n, self.delta_t)


@dataclass(frozen=True)
class TFPoint:
    """A point of the time-frequency plane: time mean and angular-frequency mean."""

    T: float = 0.0
    Omega: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.T) and math.isfinite(self.Omega)):
            raise ValueError("TFPoint coordinates must be finite")


def time_envelope(spec, u):
    """Real envelope of ``phi_n`` as a function of the offset ``u = t - T``."""
    scale = math.sqrt(2.0) * spec.delta_t
    return hermite_fn_eval(spec.n, np.asarray(u, dtype=float) / scale) / math.sqrt(scale)


def freq_envelope(spec, v):
    """Real envelope of the transform as a function of ``v = omega - Omega``."""
    scale = math.sqrt(2.0) * spec.delta_omega
    return hermite_fn_eval(spec.n, np.asarray(v, dtype=float) / scale) / math.sqrt(scale)


def phi(spec, point, t):
    """Harmonic Gaussian function ``phi_n(t; T, Omega, delta_t)``."""
    t = np.asarray(t, dtype=float)
    res = time_envelope(spec, t - point.T) * np.exp(1j * point.Omega * t)
    return res if np.ndim(res) else complex(res)


def phi_ft(spec, point, omega):
    """Closed-form Fourier transform of ``phi_n`` at angular frequency `omega`."""
    omega = np.asarray(omega, dtype=float)
    v = omega - point.Omega
    res = (-1j) ** spec.n * freq_envelope(spec, v) * np.exp(-1j * point.T * v)
    return res if np.ndim(res) else complex(res)


def integral_In(a, b, n):
    """Closed form of ``int H_n(x) exp(-(a x**2 + 1j b x)) dx`` for ``0 < a < 1``.

    Equal to ``(-1j)**n sqrt(pi/a) ((1-a)/a)**(n/2) H_n(b / (2 sqrt(a(1-a))))
    exp(-b**2 / (4a))``.
    """
    if not 0.0 < a < 1.0:
        raise ValueError(f"integral_In needs 0 < a < 1, got a={a!r}")
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    arg = b / (2.0 * math.sqrt(a * (1.0 - a)))
    return complex(
        (-1j) ** n
        * math.sqrt(math.pi / a)
        * ((1.0 - a) / a) ** (n / 2.0)
        * hermite_eval(n, arg)
        * math.exp(-b * b / (4.0 * a))
    )


def support_halfwidth(spec):
    """Time half-width beyond which ``|phi_n|`` is below ~1e-14 of its scale."""
    return (math.sqrt(2 * spec.n + 1) + TAIL_MARGIN) * math.sqrt(2.0) * spec.delta_t


def sampling_problems(spec, dt, span=None, center=None):
    """List the reasons a time grid under-resolves the window, empty if none.

    The rule: step at most ``delta_t / 8``, and (when `span` is given as
    ``(t_first, t_last)``) the grid covers ``center +- support_halfwidth``.
    """
    problems = []
    if dt > spec.delta_t / 8.0 * (1 + 1e-12):
        problems.append(f"time step {dt:.6g} exceeds delta_t/8 = {spec.delta_t / 8:.6g}")
    if span is not None:
        c = 0.0 if center is None else center
        hw = support_halfwidth(spec)
        if span[0] > c - hw or span[1] < c + hw:
            problems.append(
                f"grid [{span[0]:.6g}, {span[1]:.6g}] does not cover the window "
                f"support [{c - hw:.6g}, {c + hw:.6g}]"
            )
    return problems


def adequate_grid(spec, point, oversample=1):
    """``(t0, dt, count)`` of a time grid meeting the sampling rule for `spec`.

    The step is ``delta_t / (8 * oversample)``; the grid is symmetric about
    ``point.T`` and spans the window support.
    """
    dt = spec.delta_t / (8.0 * oversample)
    half = int(math.ceil(support_halfwidth(spec) / dt)) + 1
    return point.T - half * dt, dt, 2 * half + 1


def window_moments(spec, point, oversample=1):
    """Measured moments of ``phi_n`` (time side sampled, frequency side closed form).

    Returns a :class:`hgtf.signal.MomentReport`; the reference values are
    ``E = 1``, ``mu_t = T``, ``sigma_t = sqrt(2n+1) delta_t``,
    ``mu_omega = Omega`` and ``sigma_omega = sqrt(2n+1) delta_omega``.
    """
    from .signal import MomentReport

    t0, dt, count = adequate_grid(spec, point, oversample)
    problems = sampling_problems(spec, dt, (t0, t0 + (count - 1) * dt), point.T)
    if problems:  # pragma: no cover - adequate_grid satisfies the rule by construction
        warnings.warn("; ".join(problems), SamplingWarning, stacklevel=2)
    t = t0 + dt * np.arange(count)
    dens_t = np.abs(phi(spec, point, t)) ** 2
    energy = float(np.sum(dens_t) * dt)
    mu_t = float(np.sum(t * dens_t) * dt / energy)
    sigma_t = math.sqrt(float(np.sum((t - mu_t) ** 2 * dens_t) * dt / energy))

    # same sampling rule on the frequency side, delta_omega playing delta_t's role
    w0, dw, wcount = adequate_grid(
        WindowSpec(spec.n, spec.delta_omega), TFPoint(point.Omega), oversample
    )
    w = w0 + dw * np.arange(wcount)
    dens_w = np.abs(phi_ft(spec, point, w)) ** 2
    e_w = float(np.sum(dens_w) * dw)
    mu_w = float(np.sum(w * dens_w) * dw / e_w)
    sigma_w = math.sqrt(float(np.sum((w - mu_w) ** 2 * dens_w) * dw / e_w))
    return MomentReport(energy, mu_t, sigma_t, mu_w, sigma_w)
