"""Period products of the Carlitz motive of rank ell at a finite place, and the
two routes to the Frobenius coefficients on de Rham cohomology."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InconsistencyError
from .gamma import gamma_v
from .localfield import LaurentSeries, Place, embed, theta_power_minus_theta


@dataclass(frozen=True)
class PeriodIndex:
    ell: int
    d: int
    s: int
    n_s: int
    s_1: int
    s_0: int
    n_s_prime: int


def min_shift(ell: int, d: int, s: int) -> int:
    """Smallest n >= 0 with s + n*ell >= d."""
    return max(0, -(-(d - s) // ell))


def period_index(ell: int, d: int, s: int) -> PeriodIndex:
    if ell < 1 or d < 1:
        raise DomainError("ell and d must be positive")
    if not 0 <= s < ell:
        raise DomainError(f"s = {s} outside 0 <= s < {ell}")
    n_s = min_shift(ell, d, s)
    s_0 = (s + d) % ell
    n_prime = (s + d - s_0) // ell
    if n_prime != min_shift(ell, d, s_0):
        raise InconsistencyError("shifted index count differs from n_{s_0}")
    return PeriodIndex(ell, d, s, n_s, s + n_s * ell - d, s_0, n_prime)


# ------------------------------------------------------------------ factors


@lru_cache(maxsize=None)
def unit_factor(k: int, place: Place, prec: int) -> LaurentSeries:
    """1 - pi^(q^k) / (theta - eps^(q^k)), a 1-unit for k >= 1."""
    if k < 1:
        raise DomainError("the factor at k = 0 vanishes")
    denom = eps_linear(k, place, prec)
    return 1 - LaurentSeries.pi_power(place, place.q**k, prec) / denom


def eps_linear(k: int, place: Place, prec: int) -> LaurentSeries:
    """theta - eps^(q^k) = (eps - eps^(q^k)) + pi."""
    return LaurentSeries.from_terms(place, {0: place.eps - place.eps_power(k), 1: 1}, prec)


def tail_product(ell: int, s: int, start: int, place: Place, prec: int) -> LaurentSeries:
    """prod_{n >= start} unit_factor(s + n*ell), truncated once q^k - 1 >= prec."""
    out = LaurentSeries.one(place, prec)
    n = start
    while True:
        k = s + n * ell
        if place.q**k - 1 >= prec:
            return out
        out = out * unit_factor(k, place, prec)
        n += 1


def omega(ell: int, s: int, place: Place, prec: int) -> LaurentSeries:
    """Omega_{ell,v,s}(v) = prod_{n >= 0} unit_factor(ell*n + s), s >= 1."""
    if ell < 1 or s < 1:
        raise DomainError("omega needs ell >= 1 and s >= 1")
    return tail_product(ell, s, 0, place, prec)


def phi_entry(ell: int, s: int, place: Place, prec: int) -> LaurentSeries:
    """Phi_{v,s}(v) = prod_{n >= n_s} unit_factor(ell*n + s), 0 <= s < ell."""
    return tail_product(ell, s, min_shift(ell, place.d, s), place, prec)


@dataclass(frozen=True)
class PeriodMatrix:
    ell: int
    place: Place
    prec: int
    diag: tuple[LaurentSeries, ...]
    omega: tuple[LaurentSeries, ...]


def period_matrix(ell: int, place: Place, prec: int) -> PeriodMatrix:
    if ell < 1:
        raise DomainError("ell must be positive")
    diag = tuple(phi_entry(ell, s, place, prec) for s in range(ell))
    om = tuple(omega(ell, s, place, prec) for s in range(1, ell + 1))
    return PeriodMatrix(ell, place, prec, diag, om)


# ------------------------------------------------------------- rho rows


def _alpha(s: int, place: Place, prec: int) -> LaurentSeries:
    if s == 0:
        return LaurentSeries.pi_power(place, -1, prec)
    return unit_factor(s, place, prec)


def rho_row_period(ell: int, s: int, place: Place, prec: int) -> LaurentSeries:
    """Coefficient c_s with rho_v(omega_s) = c_s omega_{s_0}, from periods.

    Tail products from n = 1, the linear factors theta - eps^(q^k) over the
    first n_{s_0} exponents of the s_0 chain, and alpha_{s_0} / alpha_s.
    """
    idx = period_index(ell, place.d, s)
    s0 = idx.s_0
    value = tail_product(ell, s0, 1, place, prec) / tail_product(ell, s, 1, place, prec)
    for n in range(min_shift(ell, place.d, s0)):
        value = value * eps_linear(s0 + n * ell, place, prec)
    return value * _alpha(s0, place, prec) / _alpha(s, place, prec)


def _basis_change(ell: int, s: int, place: Place, prec: int) -> LaurentSeries:
    # omega_{v,s} = beta_s * omega_s, beta_s = prod (theta - theta^(q^(s + n ell)))
    out = LaurentSeries.one(place, prec)
    for n in range(1 if s == 0 else 0, min_shift(ell, place.d, s)):
        out = out * -theta_power_minus_theta(place, s + n * ell, prec)
    return out


def rho_row_frobenius(ell: int, s: int, place: Place, prec: int) -> LaurentSeries:
    """Same coefficient as rho_row_period, assembled from the diagonal period
    matrix entries Phi_{v,s}, the Frobenius twist on the crystalline basis and
    the change from the v-adapted basis omega_{v,s} to the global one."""
    idx = period_index(ell, place.d, s)
    s0 = idx.s_0
    value = phi_entry(ell, s0, place, prec) / phi_entry(ell, s, place, prec)
    for n in range(idx.n_s):
        value = value * eps_linear(s + n * ell, place, prec)
    return value * _basis_change(ell, s0, place, prec) / _basis_change(ell, s, place, prec)


def frac(x: Fraction) -> Fraction:
    """Fractional part, 0 <= frac(x) < 1."""
    return x - math.floor(x)


def gamma_arguments(q: int, ell: int, s: int, d: int) -> tuple[Fraction, Fraction]:
    """1 - <q^(s+d)/(q^ell-1)> and 1 - <q^(s+d-1)/(q^ell-1)>."""
    den = q**ell - 1
    return 1 - frac(Fraction(q ** (s + d), den)), 1 - frac(Fraction(q ** (s + d - 1), den))


def c_constant(s: int, place: Place, prec: int) -> LaurentSeries:
    """C_0 = -v, C_s = 1 for s > 0."""
    if s == 0:
        return -embed(place.v, place, prec)
    return LaurentSeries.one(place, prec)


def gamma_ratio(q_top: Fraction, q_bottom: Fraction, place: Place, prec: int) -> LaurentSeries:
    """Gamma(top) / Gamma(bottom)^q."""
    top = gamma_v(q_top, place, prec).value
    bottom = gamma_v(q_bottom, place, prec).value
    return top / bottom.q_power(1)


def rho_row_gamma(ell: int, s: int, place: Place, prec: int) -> LaurentSeries:
    """(-1)^(n_s') C_s Gamma(1 - <q^(s+d)/(q^ell-1)>) / Gamma(1 - <q^(s+d-1)/(q^ell-1)>)^q."""
    idx = period_index(ell, place.d, s)
    top, bottom = gamma_arguments(place.q, ell, s, place.d)
    value = gamma_ratio(top, bottom, place, prec) * c_constant(s, place, prec)
    return -value if idx.n_s_prime % 2 else value
