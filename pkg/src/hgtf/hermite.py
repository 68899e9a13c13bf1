"""Hermite polynomials and normalized Hermite functions.

Physicists' convention throughout: ``H_0 = 1``, ``H_1 = 2x`` and
``H_{n+1} = 2x H_n - 2n H_{n-1}``.  Everything downstream works with the
normalized, Gaussian-weighted functions

    h_n(x) = H_n(x) exp(-x**2 / 2) / sqrt(2**n n! sqrt(pi))

because ``H_n`` and ``1/sqrt(2**n n!)`` overflow separately long before their
product does.
"""

from dataclasses import dataclass
from math import factorial, pi, sqrt

import numpy as np

__all__ = [
    "HermiteCoeffs",
    "hermite_eval",
    "hermite_coeffs",
    "hermite_fn_eval",
    "hermite_fn_all",
    "hermite_orthogonality_check",
]

MAX_EXACT_DEGREE = 64

# rescale threshold for the scaled recurrence; far from overflow so that a
# further step (growth at most ~ 2|x| + sqrt(n)) cannot reach inf
_BIG = 2.0**300
_LOG_BIG = np.log(_BIG)
_PI_QUARTER = pi ** -0.25


@dataclass(frozen=True)
class HermiteCoeffs:
    """Exact integer coefficients of ``H_n``; ``coeffs[k]`` multiplies ``x**k``."""

    n: int
    coeffs: tuple

    def __call__(self, x):
        """Evaluate in float64 with Horner's rule."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for c in reversed(self.coeffs):
            out = out * x + float(c)
        return out

    def exact(self, x):
        """Evaluate exactly in rational arithmetic, then round once."""
        from fractions import Fraction

        xf = Fraction(float(x))
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * xf + c
        return float(acc)


def _check_degree(n):
    if int(n) != n or n < 0:
        raise ValueError(f"Hermite degree must be a non-negative integer, got {n!r}")
    return int(n)


def hermite_eval(n, x):
    """Physicists' Hermite polynomial ``H_n(x)`` by upward recurrence.

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    x : float or ndarray
        Evaluation point(s).

    Returns
    -------
    float or ndarray
        ``H_n(x)``, same shape as `x`.
    """
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 2.0 * x
    for k in range(1, n):
        prev, cur = cur, 2.0 * x * cur - 2.0 * k * prev
    return cur if cur.ndim else float(cur)


def hermite_coeffs(n):
    """Integer coefficient table of ``H_n`` built from the three-term recurrence.

    Degrees above 64 are refused; the table is meant as an exact oracle and
    the coefficients grow like ``n!``.
    """
    n = _check_degree(n)
    if n > MAX_EXACT_DEGREE:
        raise ValueError(f"degree {n} above exact-integer range ({MAX_EXACT_DEGREE})")
    prev = [1]
    if n == 0:
        return HermiteCoeffs(0, (1,))
    cur = [0, 2]
    for k in range(1, n):
        nxt = [0] * (k + 2)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * c
        for i, c in enumerate(prev):
            nxt[i] -= 2 * k * c
        prev, cur = cur, nxt
    return HermiteCoeffs(n, tuple(cur))


def hermite_fn_all(n_max, x):
    """All normalized Hermite functions ``h_0 .. h_{n_max}`` at `x`.

    Uses the normalized recurrence

        h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}

    seeded with ``h_0 = pi**-0.25`` and the Gaussian factor carried as a
    separate log-scale, so neither the seed underflow at large ``|x|`` nor
    the polynomial growth at large ``n`` loses the result.

    Returns
    -------
    ndarray
        Shape ``(n_max + 1,) + x.shape``.
    """
    n_max = _check_degree(n_max)
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    log_scale = -0.5 * x * x
    prev = np.zeros_like(x)
    cur = np.full_like(x, _PI_QUARTER)
    out[0] = cur * np.exp(log_scale)
    for k in range(n_max):
        prev, cur = cur, x * sqrt(2.0 / (k + 1)) * cur - sqrt(k / (k + 1)) * prev
        big = np.abs(cur) > _BIG
        if big.any():
            cur = np.where(big, cur / _BIG, cur)
            prev = np.where(big, prev / _BIG, prev)
            log_scale = np.where(big, log_scale + _LOG_BIG, log_scale)
        out[k + 1] = cur * np.exp(log_scale)
    return out


def hermite_fn_eval(n, x):
    """Normalized Hermite function ``h_n(x)`` (unit L2 norm on the real line)."""
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    log_scale = -0.5 * x * x
    prev = np.zeros_like(x)
    cur = np.full_like(x, _PI_QUARTER)
    for k in range(n):
        prev, cur = cur, x * sqrt(2.0 / (k + 1)) * cur - sqrt(k / (k + 1)) * prev
        big = np.abs(cur) > _BIG
        if big.any():
            cur = np.where(big, cur / _BIG, cur)
            prev = np.where(big, prev / _BIG, prev)
            log_scale = np.where(big, log_scale + _LOG_BIG, log_scale)
    res = cur * np.exp(log_scale)
    return res if res.ndim else float(res)


def hermite_normalizer(n):
    """``sqrt(2**n n! sqrt(pi))``, exact-integer route; only sensible for small n."""
    n = _check_degree(n)
    return sqrt(float(2**n * factorial(n)) * sqrt(pi))


def hermite_orthogonality_check(n, m, quad_points, quad_halfwidth):
    """Rectangle-rule value of the integral of ``h_n h_m`` over the real line.

    The grid is ``quad_points`` uniform nodes on ``[-quad_halfwidth,
    quad_halfwidth]``.  The exact value is 1 when ``n == m`` and 0 otherwise.
    """
    n = _check_degree(n)
    m = _check_degree(m)
    if quad_points < 2:
        raise ValueError("need at least two quadrature points")
    need = sqrt(2 * max(n, m) + 1) + 8
    if quad_halfwidth < need:
        raise ValueError(
            f"quadrature half-width {quad_halfwidth} does not cover the support "
            f"of h_{max(n, m)} (need >= {need:.3f})"
        )
    step = 2.0 * quad_halfwidth / (quad_points - 1)
    if step > 0.1:
        raise ValueError(f"under-resolved quadrature: step {step:.4g} > 0.1")
    x = -quad_halfwidth + step * np.arange(quad_points)
    return float(np.sum(hermite_fn_eval(n, x) * hermite_fn_eval(m, x)) * step)
