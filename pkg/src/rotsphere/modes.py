"""Mode-level quantities for a Dirac field in a rigidly rotating sphere.

A mode is labeled by (esign, j, m_j, kappa, i) where j is a positive
half-integer, m_j in {-j, ..., j}, kappa = +-(j + 1/2) and i >= 1 indexes the
radial excitation.  Half-integers are stored as doubled integers (two_j,
two_mj) so quantum numbers compare exactly.

The scalar density of a mode separates into a radial amplitude pair
(f, g) acting on the two spinor-harmonic angular densities; only those real
quantities enter the condensate sums.  An explicit 4-component spinor
assembler is provided for verification (boundary residuals, oracle tests)
and is not used in the hot path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import sph_harm_y, spherical_jn

from .specfun import assoc_legendre_density


@dataclass(frozen=True)
class QuantumNumbers:
    """Discrete mode label (E-sign, j, m_j, kappa, i), half-integers doubled."""

    esign: int
    two_j: int
    two_mj: int
    kappa: int
    i: int

    def __post_init__(self):
        if self.esign not in (-1, 1):
            raise ValueError(f"esign must be +-1, got {self.esign}")
        if self.two_j < 1 or self.two_j % 2 == 0:
            raise ValueError(f"two_j must be a positive odd integer, got {self.two_j}")
        if abs(self.two_mj) > self.two_j or self.two_mj % 2 == 0:
            raise ValueError(f"two_mj={self.two_mj} invalid for two_j={self.two_j}")
        if abs(self.kappa) != (self.two_j + 1) // 2 or self.kappa == 0:
            raise ValueError(f"kappa={self.kappa} must be +-(j+1/2) for two_j={self.two_j}")
        if self.i < 1:
            raise ValueError(f"radial index i must be >= 1, got {self.i}")

    @property
    def j(self) -> float:
        return self.two_j / 2.0

    @property
    def m_j(self) -> float:
        return self.two_mj / 2.0


def conjugate_index(k: QuantumNumbers) -> QuantumNumbers:
    """Charge-conjugate label: flips esign, m_j and kappa; keeps j and i."""
    return QuantumNumbers(-k.esign, k.two_j, -k.two_mj, -k.kappa, k.i)


def corotating_energy(E: float, m_j: float, Omega: float) -> float:
    """Energy seen by the corotating observer: E - Omega * m_j."""
    return E - Omega * m_j


def bessel_orders(kappa: int) -> tuple[int, int]:
    """Orders (l_f, l_g) of the upper/lower radial Bessel amplitudes.

    l_f = kappa - 1 and l_g = kappa for kappa > 0; l_f = -kappa and
    l_g = -kappa - 1 for kappa < 0.
    """
    if kappa > 0:
        return kappa - 1, kappa
    return -kappa, -kappa - 1


@dataclass(frozen=True)
class AngularDensity:
    """Pointwise spinor-harmonic densities chi+^dag chi+ and chi-^dag chi-."""

    d_plus: float
    d_minus: float


def angular_density(two_j: int, two_mj: int, kappa: int, theta: float) -> AngularDensity:
    """Angular densities of the two spinor harmonics at polar angle theta.

    Both are non-negative, independent of the azimuth, and sum over m_j to
    (2j+1)/(4 pi).  kappa only selects which density multiplies the upper or
    lower spinor block and is validated for consistency here.
    """
    QuantumNumbers(1, two_j, two_mj, kappa, 1)  # reuse label validation
    l_up = (two_j - 1) // 2
    l_dn = (two_j + 1) // 2
    m_lo = (two_mj - 1) // 2
    m_hi = (two_mj + 1) // 2
    c1 = (two_j + two_mj) / (2.0 * two_j)
    c2 = (two_j - two_mj) / (2.0 * two_j)
    d_plus = 0.0
    if c1 > 0.0:
        d_plus += c1 * assoc_legendre_density(l_up, m_lo, theta)
    if c2 > 0.0:
        d_plus += c2 * assoc_legendre_density(l_up, m_hi, theta)
    c3 = (two_j - two_mj + 2) / (2.0 * (two_j + 2))
    c4 = (two_j + two_mj + 2) / (2.0 * (two_j + 2))
    d_minus = (c3 * assoc_legendre_density(l_dn, m_lo, theta)
               + c4 * assoc_legendre_density(l_dn, m_hi, theta))
    return AngularDensity(d_plus, d_minus)


@dataclass(frozen=True)
class RadialPair:
    """Radial amplitudes: f real, g purely imaginary with g = i * g_over_i."""

    f: float
    g_over_i: float


def _energy(esign: int, p: float, M: float) -> float:
    return esign * math.hypot(p, M)


def radial_pair(k: QuantumNumbers, p: float, M: float, r: float) -> RadialPair:
    """Radial amplitude pair of the mode at radius r.

    f = sqrt((E+M)/(2E)) j_{l_f}(p r) and
    g_over_i = sgn(E) sgn(kappa) sqrt((E-M)/(2E)) j_{l_g}(p r),
    with E = esign * sqrt(p^2 + M^2).  Both ratios (E+-M)/(2E) are
    non-negative for |E| >= M regardless of the sign of E.
    """
    if p <= 0:
        raise ValueError(f"momentum must be positive, got {p}")
    if r < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    E = _energy(k.esign, p, M)
    l_f, l_g = bessel_orders(k.kappa)
    pref_f = math.sqrt((E + M) / (2.0 * E))
    pref_g = math.sqrt((E - M) / (2.0 * E))
    f = pref_f * float(spherical_jn(l_f, p * r))
    g_i = k.esign * (1 if k.kappa > 0 else -1) * pref_g * float(spherical_jn(l_g, p * r))
    return RadialPair(f, g_i)


def density_terms(k: QuantumNumbers, p: float, M: float, r: float,
                  theta: float) -> tuple[float, float]:
    """Scalar-density split U-bar U = A + B of the (unnormalized) mode.

    A = sgn(kappa)/2 [j_{j-1/2}^2(pr) d+ - j_{j+1/2}^2(pr) d-] carries no
    mass factor; B = M/(2E) [j_{j-1/2}^2(pr) d+ + j_{j+1/2}^2(pr) d-]
    vanishes at M = 0 and has the sign of E*M.
    """
    if p <= 0:
        raise ValueError(f"momentum must be positive, got {p}")
    E = _energy(k.esign, p, M)
    n_lo = (k.two_j - 1) // 2
    dens = angular_density(k.two_j, k.two_mj, k.kappa, theta)
    jm2 = float(spherical_jn(n_lo, p * r)) ** 2
    jp2 = float(spherical_jn(n_lo + 1, p * r)) ** 2
    sk = 1.0 if k.kappa > 0 else -1.0
    A = sk * 0.5 * (jm2 * dens.d_plus - jp2 * dens.d_minus)
    B = (M / (2.0 * E)) * (jm2 * dens.d_plus + jp2 * dens.d_minus)
    return A, B


# ---------------------------------------------------------------------------
# Explicit spinor assembly (verification path)
# ---------------------------------------------------------------------------

GAMMA_T = np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex)

_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def gamma_radial(theta: float, phi: float) -> np.ndarray:
    """gamma^r in the Pauli-Dirac representation at direction (theta, phi)."""
    nvec = (math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta))
    sig_r = sum(c * s for c, s in zip(nvec, _SIGMA))
    out = np.zeros((4, 4), dtype=complex)
    out[:2, 2:] = sig_r
    out[2:, :2] = -sig_r
    return out


def _ylm(l: int, m: int, theta: float, phi: float) -> complex:
    if abs(m) > l:
        return 0j
    return complex(sph_harm_y(l, m, theta, phi))


def spinor_harmonic(two_j: int, two_mj: int, sign: int, theta: float,
                    phi: float) -> np.ndarray:
    """Two-component spinor harmonic chi^sign_{j m_j} at (theta, phi)."""
    m_lo = (two_mj - 1) // 2
    m_hi = (two_mj + 1) // 2
    if sign > 0:
        l = (two_j - 1) // 2
        c1 = math.sqrt((two_j + two_mj) / (2.0 * two_j))
        c2 = math.sqrt((two_j - two_mj) / (2.0 * two_j))
    else:
        l = (two_j + 1) // 2
        c1 = math.sqrt((two_j - two_mj + 2) / (2.0 * (two_j + 2)))
        c2 = -math.sqrt((two_j + two_mj + 2) / (2.0 * (two_j + 2)))
    return np.array([c1 * _ylm(l, m_lo, theta, phi),
                     c2 * _ylm(l, m_hi, theta, phi)])


def assemble_spinor(k: QuantumNumbers, p: float, M: float, r: float,
                    theta: float, phi: float) -> np.ndarray:
    """Explicit 4-component eigenspinor u_k(r, theta, phi), unnormalized.

    Verification path only: boundary-residual checks and oracle tests build
    the full spinor; production sums never materialize it.
    """
    rad = radial_pair(k, p, M, r)
    chi_up = spinor_harmonic(k.two_j, k.two_mj, +1 if k.kappa > 0 else -1, theta, phi)
    chi_dn = spinor_harmonic(k.two_j, k.two_mj, -1 if k.kappa > 0 else +1, theta, phi)
    out = np.empty(4, dtype=complex)
    out[:2] = rad.f * chi_up
    out[2:] = 1j * rad.g_over_i * chi_dn
    return out


def scalar_density(k: QuantumNumbers, p: float, M: float, r: float,
                   theta: float, phi: float = 0.0) -> float:
    """U-bar U from the explicit spinor; cross-checks density_terms."""
    u = assemble_spinor(k, p, M, r, theta, phi)
    return float((u.conj() @ GAMMA_T @ u).real)
