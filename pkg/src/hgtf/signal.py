"""Sampled signals, the continuous Fourier transform on a grid, and moments.

The transform convention is the unitary angular-frequency one,

    S(omega) = 1/sqrt(2 pi) * integral psi(t) exp(-1j omega t) dt,

approximated by the rectangle rule on the sample grid.  Discrete spectra live
on the centred grid ``omega_k = (k - N//2) * domega`` with
``domega = 2 pi / (N dt)``, which makes forward and inverse transforms exact
inverses of each other.
"""

import inspect
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import fft as sfft

from .diagnostics import LeakageWarning

__all__ = [
    "Signal",
    "Spectrum",
    "MomentReport",
    "forward_ft",
    "inverse_ft",
    "chirp_dft",
    "ft_on_axis",
    "moments",
    "generate",
    "GENERATORS",
    "uniform_axis",
    "as_uniform_axis",
    "default_time_axis",
    "default_freq_axis",
]

SQRT_2PI = math.sqrt(2.0 * math.pi)
LEAKAGE_RATIO = 1e-10


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Signal:
    """Uniformly sampled complex signal: ``samples[j] = psi(t0 + j*dt)``."""

    samples: np.ndarray
    t0: float = 0.0
    dt: float = 1.0

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim != 1 or s.size < 2:
            raise ValueError("a signal needs a 1-D array of at least 2 samples")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"sample step must be positive and finite, got {self.dt!r}")
        if not math.isfinite(self.t0):
            raise ValueError("t0 must be finite")
        if not np.all(np.isfinite(s)):
            raise ValueError("signal samples must be finite")
        object.__setattr__(self, "samples", _frozen(s))
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))

    def __len__(self):
        return self.samples.size

    @property
    def times(self):
        return self.t0 + self.dt * np.arange(self.samples.size)

    @property
    def t_last(self):
        return self.t0 + self.dt * (self.samples.size - 1)

    @property
    def energy(self):
        """Rectangle-rule energy ``sum |psi|**2 dt``."""
        return float(np.sum(np.abs(self.samples) ** 2) * self.dt)

    def grid(self):
        return self.t0, self.dt, self.samples.size

    def with_samples(self, samples):
        return Signal(samples, self.t0, self.dt)

    def scaled(self, factor):
        return Signal(self.samples * factor, self.t0, self.dt)

    def endpoint_ratio(self):
        """Largest endpoint magnitude relative to the peak magnitude."""
        mag = np.abs(self.samples)
        peak = mag.max()
        if peak == 0:
            return 0.0
        return float(max(mag[0], mag[-1]) / peak)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Sampled spectrum ``values[k] = S(omega0 + k*domega)``.

    `t0` is the time origin of the signal grid the spectrum belongs to; the
    inverse transform returns samples on ``t0 + j * 2 pi / (N domega)``.
    """

    values: np.ndarray
    omega0: float
    domega: float
    t0: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 1 or v.size < 2:
            raise ValueError("a spectrum needs a 1-D array of at least 2 values")
        if not (math.isfinite(self.domega) and self.domega > 0):
            raise ValueError("frequency step must be positive and finite")
        if not np.all(np.isfinite(v)):
            raise ValueError("spectrum values must be finite")
        object.__setattr__(self, "values", _frozen(v))

    def __len__(self):
        return self.values.size

    @property
    def omegas(self):
        return self.omega0 + self.domega * np.arange(self.values.size)

    @property
    def energy(self):
        return float(np.sum(np.abs(self.values) ** 2) * self.domega)


@dataclass(frozen=True)
class MomentReport:
    """Energy, first and second moments in time and frequency."""

    energy: float
    mu_t: float
    sigma_t: float
    mu_omega: float
    sigma_omega: float
    uncertainty_product: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "uncertainty_product", self.sigma_t * self.sigma_omega)

    def as_dict(self):
        return {
            "energy": self.energy,
            "mu_t": self.mu_t,
            "sigma_t": self.sigma_t,
            "mu_omega": self.mu_omega,
            "sigma_omega": self.sigma_omega,
            "uncertainty_product": self.uncertainty_product,
        }


# --------------------------------------------------------------------------
# uniform axes


def uniform_axis(start, step, count):
    """``start + step * arange(count)``; the one way axes are materialized."""
    if count < 2:
        raise ValueError("an axis needs at least 2 points")
    if not step > 0:
        raise ValueError("axis step must be positive")
    return float(start) + float(step) * np.arange(int(count))


def as_uniform_axis(values, name="axis"):
    """Validate a strictly increasing uniform axis and return ``(start, step, values)``.

    The returned values are regenerated from start and step so every
    consumer sees exactly the same floats.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise ValueError(f"{name} needs at least 2 points")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} values must be finite")
    step = (v[-1] - v[0]) / (v.size - 1)
    if not step > 0:
        raise ValueError(f"{name} must be strictly increasing")
    dev = np.max(np.abs(np.diff(v) - step))
    if dev > 1e-9 * step:
        raise ValueError(f"{name} is not uniform (max step deviation {dev:.3g})")
    return float(v[0]), float(step), uniform_axis(v[0], step, v.size)


def default_time_axis(signal, max_points=512):
    """Signal time grid decimated to at most `max_points` points."""
    stride = max(1, math.ceil(len(signal) / max_points))
    count = (len(signal) - 1) // stride + 1
    return uniform_axis(signal.t0, signal.dt * stride, count)


def default_freq_axis(signal, max_points=512):
    """Centred frequency grid of `signal`, decimated to at most `max_points` points.

    Decimation keeps ``omega = 0`` on the axis.
    """
    n = len(signal)
    domega = 2.0 * math.pi / (n * signal.dt)
    k = np.arange(n) - n // 2
    stride = max(1, math.ceil(n / max_points))
    kept = k[k % stride == 0]
    return uniform_axis(kept[0] * domega, stride * domega, kept.size)


# --------------------------------------------------------------------------
# transforms


def chirp_dft(x, x0, dx, y0, dy, count, sign=-1, axis=-1):
    """Sum ``x[m] * exp(sign * 1j * (x0 + m dx) * (y0 + j dy))`` over ``m``.

    Evaluated for ``j = 0 .. count-1`` along `axis` with Bluestein's
    algorithm, so the output axis may have any uniform spacing.  Chirp
    phases are computed directly from exact integer squares rather than by
    repeated complex powers, which keeps the relative error near 1e-13 for
    a few thousand points.
    """
    x = np.moveaxis(np.asarray(x, dtype=complex), axis, -1)
    n = x.shape[-1]
    m_idx = np.arange(n)
    j_idx = np.arange(count)
    theta = dx * dy
    s = float(sign)
    length = sfft.next_fast_len(n + count - 1)
    k = np.arange(-(n - 1), count)
    kern = np.exp(-1j * s * 0.5 * theta * (k * k).astype(float))
    kern_f = sfft.fft(kern, length)
    pre = np.exp(1j * s * (dx * y0 * m_idx + 0.5 * theta * (m_idx * m_idx).astype(float)))
    y = y0 + dy * j_idx
    post = np.exp(1j * s * (0.5 * theta * (j_idx * j_idx).astype(float) + x0 * y))
    conv = sfft.ifft(sfft.fft(x * pre, length, axis=-1) * kern_f, axis=-1)
    out = conv[..., n - 1 : n - 1 + count] * post
    return np.moveaxis(out, -1, axis)


def ft_on_axis(samples, t0, dt, omega_axis, axis=-1):
    """Rectangle-rule continuous FT of `samples` at the points of `omega_axis`.

    ``dt / sqrt(2 pi) * sum_j samples[j] exp(-1j omega (t0 + j dt))``.
    """
    w0, dw, w = as_uniform_axis(omega_axis, "omega axis")
    return chirp_dft(samples, t0, dt, w0, dw, w.size, sign=-1, axis=axis) * (dt / SQRT_2PI)


def _warn_leakage(signal, stacklevel=3):
    ratio = signal.endpoint_ratio()
    if ratio > LEAKAGE_RATIO:
        warnings.warn(
            f"signal does not decay at the grid ends (endpoint/peak = {ratio:.3g}); "
            "the transform treats it as zero outside the grid",
            LeakageWarning,
            stacklevel=stacklevel,
        )


def forward_ft(signal, check_leakage=True):
    """Continuous Fourier transform of `signal` on its centred frequency grid."""
    if check_leakage:
        _warn_leakage(signal)
    n = len(signal)
    domega = 2.0 * math.pi / (n * signal.dt)
    omega0 = -(n // 2) * domega
    omegas = omega0 + domega * np.arange(n)
    values = sfft.fftshift(sfft.fft(signal.samples))
    values = values * np.exp(-1j * omegas * signal.t0) * (signal.dt / SQRT_2PI)
    return Spectrum(values, omega0, domega, signal.t0)


def inverse_ft(spectrum):
    """Inverse of :func:`forward_ft`: samples on ``t0 + j * 2 pi / (N domega)``."""
    n = len(spectrum)
    dt = 2.0 * math.pi / (n * spectrum.domega)
    omegas = spectrum.omegas
    k0 = -(n // 2)
    if abs(spectrum.omega0 - k0 * spectrum.domega) <= 1e-12 * spectrum.domega * n:
        v = spectrum.values * np.exp(1j * omegas * spectrum.t0)
        samples = sfft.ifft(sfft.ifftshift(v)) * n
    else:
        samples = chirp_dft(
            spectrum.values, spectrum.omega0, spectrum.domega, spectrum.t0, dt, n, sign=+1
        )
    return Signal(samples * (spectrum.domega / SQRT_2PI), spectrum.t0, dt)


def moments(signal):
    """Energy, means and standard deviations in time and frequency.

    Time moments use rectangle sums over the samples; frequency moments use
    ``|S|**2`` from :func:`forward_ft`.
    """
    dens = np.abs(signal.samples) ** 2
    energy = float(np.sum(dens) * signal.dt)
    if energy == 0.0:
        raise ValueError("moments are undefined for a zero-energy signal")
    t = signal.times
    mu_t = float(np.sum(t * dens) / np.sum(dens))
    sigma_t = math.sqrt(float(np.sum((t - mu_t) ** 2 * dens) / np.sum(dens)))

    spec = forward_ft(signal, check_leakage=False)
    w = spec.omegas
    sdens = np.abs(spec.values) ** 2
    mu_w = float(np.sum(w * sdens) / np.sum(sdens))
    sigma_w = math.sqrt(float(np.sum((w - mu_w) ** 2 * sdens) / np.sum(sdens)))
    return MomentReport(energy, mu_t, sigma_t, mu_w, sigma_w)


# --------------------------------------------------------------------------
# generators


def _unit_gaussian(t, sigma, center):
    # |g|**2 is the normal density with standard deviation sigma
    return (2.0 * math.pi) ** -0.25 / math.sqrt(sigma) * np.exp(-((t - center) ** 2) / (4.0 * sigma**2))


def _gaussian_pulse(t, sigma=1.0, center=0.0, omega=0.0, amplitude=1.0):
    return amplitude * _unit_gaussian(t, sigma, center) * np.exp(1j * omega * t)


def _linear_chirp(t, rate=1.0, omega0=0.0, sigma=1.0, center=0.0, amplitude=1.0):
    u = t - center
    return amplitude * _unit_gaussian(t, sigma, center) * np.exp(1j * (omega0 * t + 0.5 * rate * u * u))


def _two_tones(t, omega1=2.0, omega2=6.0, weight1=1.0, weight2=1.0, sigma=1.0, center=0.0, amplitude=1.0):
    dw = omega1 - omega2
    cross = math.cos(dw * center) * math.exp(-0.5 * dw * dw * sigma * sigma)
    norm = math.sqrt(weight1**2 + weight2**2 + 2.0 * weight1 * weight2 * cross)
    if norm == 0.0:
        raise ValueError("two_tones weights cancel to a zero-energy signal")
    carrier = weight1 * np.exp(1j * omega1 * t) + weight2 * np.exp(1j * omega2 * t)
    return amplitude / norm * _unit_gaussian(t, sigma, center) * carrier


def _harmonic_gaussian(t, n=0, delta_t=1.0, T=0.0, Omega=0.0, amplitude=1.0):
    from .hgf import TFPoint, WindowSpec, phi

    return amplitude * phi(WindowSpec(int(n), delta_t), TFPoint(T, Omega), t)


def _impulse_like(t, center=0.0, width=None, amplitude=1.0, dt=None):
    sigma = 2.0 * dt if width is None else width
    return amplitude * _unit_gaussian(t, sigma, center)


GENERATORS = {
    "gaussian_pulse": _gaussian_pulse,
    "linear_chirp": _linear_chirp,
    "two_tones": _two_tones,
    "harmonic_gaussian": _harmonic_gaussian,
    "impulse_like": _impulse_like,
}

_ALIASES = {"gaussian": "gaussian_pulse", "chirp": "linear_chirp", "tones": "two_tones", "hgf": "harmonic_gaussian", "impulse": "impulse_like"}

_POSITIVE = {"sigma", "delta_t", "width"}


def generate(kind, params=None, grid=(-16.0, 1.0 / 32.0, 1024)):
    """Deterministic test signal on the grid ``(t0, dt, count)``.

    Kinds (all unit energy at ``amplitude=1``, envelopes are Gaussians whose
    squared magnitude has standard deviation ``sigma``):

    ``gaussian_pulse``  sigma, center, omega
    ``linear_chirp``    rate, omega0, sigma, center; instantaneous
                        frequency ``omega0 + rate * (t - center)``
    ``two_tones``       omega1, omega2, weight1, weight2, sigma, center
    ``harmonic_gaussian`` n, delta_t, T, Omega
    ``impulse_like``    center, width (default ``2 * dt``)
    """
    kind = _ALIASES.get(kind, kind)
    if kind not in GENERATORS:
        raise ValueError(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}")
    params = dict(params or {})
    t0, dt, count = grid
    if count < 2 or not dt > 0:
        raise ValueError("generator grid needs count >= 2 and dt > 0")
    fn = GENERATORS[kind]
    allowed = set(inspect.signature(fn).parameters) - {"t", "dt"}
    unknown = set(params) - allowed
    if unknown:
        raise ValueError(f"unknown parameters for {kind}: {sorted(unknown)}; allowed {sorted(allowed)}")
    for key in _POSITIVE & set(params):
        if params[key] is not None and not params[key] > 0:
            raise ValueError(f"{kind}: {key} must be positive, got {params[key]!r}")
    if kind == "harmonic_gaussian" and "n" in params:
        n = params["n"]
        if int(n) != n or n < 0:
            raise ValueError(f"harmonic_gaussian: n must be a non-negative integer, got {n!r}")
    if kind == "impulse_like":
        params["dt"] = dt
    t = uniform_axis(t0, dt, count)
    return Signal(fn(t, **params), t0, dt)
