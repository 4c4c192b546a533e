"""Carlitz factorials, the v-coprime products D_{i,v}, q-adic digits and the
v-adic arithmetic gamma function."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .algebra import FieldDesc, Polynomial
from .errors import ConvergenceError, DomainError, EnumerationBoundError, NotPAdicError
from .localfield import LaurentSeries, Place, embed, theta_power_minus_theta

RationalLike = Union[Fraction, int, str]

DEFAULT_MAX_DEGREE = 4096
# hard ceiling on gamma factors past the minimal stopping index
_EXTRA_FACTORS = 64


def carlitz_D(i: int, field: FieldDesc, max_degree: int = DEFAULT_MAX_DEGREE) -> Polynomial:
    """D_i in F_q[theta], via D_i = (theta^(q^i) - theta) D_{i-1}^q."""
    if i < 0:
        raise DomainError("index must be non-negative")
    if i * field.q**i > max_degree:
        raise EnumerationBoundError(
            f"deg D_{i} = {i * field.q**i} exceeds {max_degree}; use carlitz_D_v instead"
        )
    theta = Polynomial.theta(field)
    out = Polynomial.constant(field, 1)
    for n in range(1, i + 1):
        out = (Polynomial.monomial(field, field.q**n) - theta) * out.q_power(1)
    return out


def carlitz_factorial(n: int, field: FieldDesc, max_degree: int = DEFAULT_MAX_DEGREE) -> Polynomial:
    """Gamma_ari(n + 1) = prod D_i^(n_i) over the base-q digits of n."""
    if n < 0:
        raise DomainError("n must be non-negative")
    q = field.q
    out = Polynomial.constant(field, 1)
    i = 0
    while n:
        n, digit = divmod(n, q)
        if digit:
            out = out * carlitz_D(i, field, max_degree) ** digit
        i += 1
    return out


def v_ord_factorial(n: int, place: Place) -> int:
    """ord_v Gamma_ari(n + 1) = sum_{e >= 1} floor(n / q^(e d))."""
    if n < 0:
        raise DomainError("n must be non-negative")
    step = place.q**place.d
    total, power = 0, step
    while power <= n:
        total += n // power
        power *= step
    return total


# ---------------------------------------------------------------- D_{i,v}

_D_CACHE: dict[tuple[Place, int], list[LaurentSeries]] = {}
_D_LOCK = threading.Lock()


def carlitz_D_v(i: int, place: Place, prec: int) -> LaurentSeries:
    """D_{i,v} in k_v from the telescoping ratio D_{n,v} / D_{n-1,v}^q."""
    if i < 0:
        raise DomainError("index must be non-negative")
    key = (place, prec)
    with _D_LOCK:
        table = _D_CACHE.setdefault(key, [LaurentSeries.one(place, prec)])
        d = place.d
        while len(table) <= i:
            n = len(table)
            ratio = theta_power_minus_theta(place, n, prec)
            if n > d:
                ratio = ratio / theta_power_minus_theta(place, n - d, prec)
            elif n == d:
                ratio = ratio / embed(place.v, place, prec)
            table.append(ratio * table[-1].q_power(1))
        return table[i]


# ---------------------------------------------------------------- digits


@dataclass(frozen=True)
class QDigits:
    """q-adic expansion of a/b in Z_(p): ``preperiod`` then ``period`` repeated."""

    a: int
    b: int
    q: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def digit(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def digits(self, count: int) -> list[int]:
        return [self.digit(i) for i in range(count)]

    @property
    def is_zero(self) -> bool:
        return not any(self.preperiod) and not any(self.period)

    @property
    def ord_q(self) -> int | None:
        """Largest r with q^r | z, or None for z = 0."""
        if self.is_zero:
            return None
        i = 0
        while self.digit(i) == 0:
            i += 1
        return i


def _as_fraction(z: RationalLike) -> Fraction:
    try:
        return Fraction(z)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {z!r}") from exc


def q_digits(a: int, b: int = 1, q: int = 2, count: int | None = None) -> QDigits:
    """Digits z_i in [0, q) with sum z_i q^i = a/b in Z_(p).

    The numerator of the remaining tail is the state; the expansion repeats as
    soon as a state recurs.  ``count`` is accepted for interface symmetry; the
    returned object yields any number of digits.
    """
    if b == 0:
        raise DomainError("zero denominator")
    z = Fraction(a, b)
    a, b = z.numerator, z.denominator
    p = _smallest_prime_factor(q)
    if b % p == 0:
        raise NotPAdicError(f"{z} is not a {p}-adic integer")
    inv_b = pow(b, -1, q)
    seen: dict[int, int] = {}
    digits: list[int] = []
    state = a
    while state not in seen:
        seen[state] = len(digits)
        dgt = state * inv_b % q
        digits.append(dgt)
        state = (state - dgt * b) // q
    start = seen[state]
    return QDigits(z.numerator, z.denominator, q, tuple(digits[:start]), tuple(digits[start:]))


def _smallest_prime_factor(n: int) -> int:
    k = 2
    while n % k:
        k += 1
    return k


# ---------------------------------------------------------------- gamma


@dataclass(frozen=True)
class GammaValue:
    value: LaurentSeries
    truncation_index: int
    stable: bool


def _ceil_log(q: int, n: int) -> int:
    k, power = 0, 1
    while power < n:
        power *= q
        k += 1
    return k


def neg_D_deviation(i: int, place: Place, prec: int) -> int:
    """ord_pi(-D_{i,v} - 1), capped at prec."""
    dev = -carlitz_D_v(i, place, prec) - 1
    return prec if dev.zero else min(dev.val, prec)


def gamma_v(w: RationalLike, place: Place, prec: int) -> GammaValue:
    """Gamma_{ari,v}(w) = prod_i (-D_{i,v})^(z_i), z = w - 1, truncated."""
    return _gamma_cached(_as_fraction(w), place, prec)


@lru_cache(maxsize=4096)
def _gamma_cached(w: Fraction, place: Place, prec: int) -> GammaValue:
    if w.denominator % place.p == 0:
        raise NotPAdicError(f"{w} is not a {place.p}-adic integer")
    z = w - 1
    digits = q_digits(z.numerator, z.denominator, place.q)
    d = place.d
    i_min = _ceil_log(place.q, prec) + d
    result = LaurentSeries.one(place, prec)
    run = 0
    last = -1
    prev_ord = None
    i = 0
    while True:
        neg = -carlitz_D_v(i, place, prec)
        if i >= d:
            o = neg_D_deviation(i, place, prec)
            # tail must converge monotonically
            if prev_ord is not None and o < prev_ord:
                raise ConvergenceError(
                    f"ord(-D_{i},v - 1) = {o} dropped below {prev_ord} at {place}"
                )
            prev_ord = o
            run = run + 1 if o >= prec else 0
        zi = digits.digit(i)
        if zi and not (i >= d and prev_ord >= prec):
            result = result * neg**zi
            last = i
        if i >= i_min and run >= 2 * d:
            return GammaValue(result, max(last, 0), True)
        if i > i_min + _EXTRA_FACTORS:
            raise ConvergenceError(f"gamma product did not stabilise by index {i}")
        i += 1
