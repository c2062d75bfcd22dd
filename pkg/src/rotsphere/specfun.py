"""Special functions: spherical Bessel functions, their zeros, and
normalized associated Legendre values.

Spherical Bessel evaluation is delegated to scipy (accurate to ~1e-14
relative across the supported order/argument range).  Zeros are found by
bracketed root solving inside guaranteed interlacing intervals, so no zero
can be missed or duplicated.  Associated Legendre values are computed with
the fully normalized (l, m) recurrence, which stays bounded and avoids the
factorial overflow of the unnormalized functions above l ~ 20.
"""

from __future__ import annotations

import math
import threading

import numpy as np
from scipy.optimize import brentq
from scipy.special import spherical_jn

N_MAX_DEFAULT = 200
I_MAX_DEFAULT = 500

# brentq converges to ~machine precision with these settings
_ROOT_XTOL = 1e-14


class UnsupportedOrderError(ValueError):
    """Requested Bessel order outside the supported range."""


def _check_order(n, n_max):
    if not isinstance(n, (int, np.integer)):
        raise UnsupportedOrderError(f"order must be an integer, got {n!r}")
    if n < 0 or n > n_max:
        raise UnsupportedOrderError(f"order n={n} outside supported range [0, {n_max}]")


def spherical_bessel_j(n: int, x, n_max: int = N_MAX_DEFAULT):
    """Spherical Bessel function j_n(x) for integer n >= 0.

    Accepts a scalar or ndarray argument; x must be >= 0 and finite.
    j_0(0) = 1 and j_n(0) = 0 for n >= 1.
    """
    _check_order(n, n_max)
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("x must be finite")
    if np.any(arr < 0):
        raise ValueError("x must be non-negative")
    out = spherical_jn(n, arr)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


def spherical_bessel_j_prime(n: int, x, n_max: int = N_MAX_DEFAULT):
    """Derivative j'_n(x) for x > 0.

    Satisfies the recurrences j'_n + (n+1)/x * j_n = j_{n-1} and
    j'_n - n/x * j_n = -j_{n+1}.
    """
    _check_order(n, n_max)
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("x must be finite")
    if np.any(arr <= 0):
        raise ValueError("x must be positive")
    out = spherical_jn(n, arr, derivative=True)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out


# ---------------------------------------------------------------------------
# Zeros of j_n
# ---------------------------------------------------------------------------
#
# The zeros of consecutive orders interlace:
#     xi_{n-1,i} < xi_{n,i} < xi_{n-1,i+1}
# so the i-th zero of order n is bracketed by two consecutive zeros of order
# n-1, starting from the exact xi_{0,i} = i*pi.  The cache grows on demand
# under a single writer lock; readers always see complete prefixes.

_zero_cache: dict[int, list[float]] = {}
_zero_lock = threading.Lock()


def _extend_zeros(n: int, count: int) -> None:
    # lock is held by the caller
    have = _zero_cache.setdefault(n, [])
    if len(have) >= count:
        return
    if n == 0:
        have[:] = [math.pi * k for k in range(1, count + 1)]
        return
    _extend_zeros(n - 1, count + 1)
    below = _zero_cache[n - 1]
    f = lambda x: spherical_jn(n, x)
    for i in range(len(have), count):
        root = brentq(f, below[i], below[i + 1], xtol=_ROOT_XTOL)
        have.append(root)
    # first-zero lower bound xi_{n,1} > n + 1
    if have[0] <= n + 1:
        raise RuntimeError(f"zero table inconsistent at order {n}: xi_1 = {have[0]}")


def bessel_zeros(n: int, count: int, n_max: int = N_MAX_DEFAULT,
                 i_max: int = I_MAX_DEFAULT) -> np.ndarray:
    """First `count` positive zeros xi_{n,1} < ... < xi_{n,count} of j_n."""
    _check_order(n, n_max)
    if count < 1 or count > i_max:
        raise ValueError(f"count must be in [1, {i_max}]")
    with _zero_lock:
        _extend_zeros(n, count)
        return np.array(_zero_cache[n][:count])


def spherical_bessel_zero(n: int, i: int, n_max: int = N_MAX_DEFAULT,
                          i_max: int = I_MAX_DEFAULT) -> float:
    """The i-th positive zero xi_{n,i} of j_n (i starts at 1)."""
    return float(bessel_zeros(n, i, n_max=n_max, i_max=i_max)[i - 1])


# ---------------------------------------------------------------------------
# Normalized associated Legendre / spherical harmonic densities
# ---------------------------------------------------------------------------


def _norm_legendre(l: int, m: int, x: float) -> float:
    """Fully normalized P-bar_l^m(x) with |Y_lm(theta,phi)| = |P-bar_l^m(cos theta)|.

    Includes the Condon-Shortley phase; m must satisfy 0 <= m <= l.
    """
    sx = math.sqrt(max(0.0, 1.0 - x * x))
    pmm = math.sqrt(1.0 / (4.0 * math.pi))
    for k in range(1, m + 1):
        pmm *= -math.sqrt((2 * k + 1) / (2.0 * k)) * sx
    if l == m:
        return pmm
    p_prev, p_cur = pmm, x * math.sqrt(2.0 * m + 3.0) * pmm
    for ll in range(m + 2, l + 1):
        a = math.sqrt((4.0 * ll * ll - 1.0) / (ll * ll - m * m))
        b = math.sqrt(((ll - 1.0) ** 2 - m * m) / (4.0 * (ll - 1.0) ** 2 - 1.0))
        p_prev, p_cur = p_cur, a * (x * p_cur - b * p_prev)
    return p_cur


def assoc_legendre_density(l: int, m: int, theta: float) -> float:
    """|Y_{l,m}(theta, .)|^2, which is independent of the azimuth.

    Equals (2l+1)/(4 pi) * (l-|m|)!/(l+|m|)! * P_l^{|m|}(cos theta)^2.
    """
    if not isinstance(l, (int, np.integer)) or not isinstance(m, (int, np.integer)):
        raise ValueError(f"(l, m) must be integers, got ({l!r}, {m!r})")
    if l < 0 or abs(m) > l:
        raise ValueError(f"invalid degree/order (l={l}, m={m})")
    return _norm_legendre(int(l), abs(int(m)), math.cos(theta)) ** 2


def legendre_density_table(l_max: int, cos_theta: float) -> np.ndarray:
    """Triangle of |Y_{l,m}|^2 values for 0 <= m <= l <= l_max at fixed angle.

    Entry [l, m] holds |Y_{l,m}(theta,.)|^2; entries with m > l are zero,
    which makes vanishing-coefficient lookups in spinor-harmonic sums safe.
    """
    x = float(cos_theta)
    sx = math.sqrt(max(0.0, 1.0 - x * x))
    tab = np.zeros((l_max + 1, l_max + 1))
    pmm = math.sqrt(1.0 / (4.0 * math.pi))
    for m in range(0, l_max + 1):
        if m > 0:
            pmm *= -math.sqrt((2 * m + 1) / (2.0 * m)) * sx
        tab[m, m] = pmm * pmm
        if m == l_max:
            break
        p_prev, p_cur = pmm, x * math.sqrt(2.0 * m + 3.0) * pmm
        tab[m + 1, m] = p_cur * p_cur
        for ll in range(m + 2, l_max + 1):
            a = math.sqrt((4.0 * ll * ll - 1.0) / (ll * ll - m * m))
            b = math.sqrt(((ll - 1.0) ** 2 - m * m) / (4.0 * (ll - 1.0) ** 2 - 1.0))
            p_prev, p_cur = p_cur, a * (x * p_cur - b * p_prev)
            tab[ll, m] = p_cur * p_cur
    return tab
