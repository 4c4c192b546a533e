"""The identity catalogue: both sides of each identity evaluated in k_v, compared
by the valuation of their difference."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

from .algebra import FieldDesc, Polynomial, enumerate_monic, is_irreducible, parse_polynomial
from .config import DEFAULT_PREC, DEFAULT_SLACK
from .errors import DomainError
from .gamma import carlitz_D_v, gamma_v, q_digits
from .localfield import (
    LaurentSeries,
    Place,
    diff_valuation,
    embed,
    make_place,
    theta_power_minus_theta,
)
from .periods import (
    _alpha,
    c_constant,
    eps_linear,
    frac,
    gamma_arguments,
    gamma_ratio,
    min_shift,
    omega,
    period_index,
    rho_row_frobenius,
    rho_row_gamma,
    rho_row_period,
    tail_product,
    unit_factor,
)
from .relations import multiplicative_order

Pair = tuple[LaurentSeries, LaurentSeries]

# translation steps allowed when unwinding q^(id) z in gk_monomial
GK_TRANSLATION_CAP = 20000


@dataclass
class CheckReport:
    identity: str
    params: dict[str, Any]
    lhs: LaurentSeries = field(repr=False)
    rhs: LaurentSeries = field(repr=False)
    diff_valuation: int | str
    prec: int
    slack: int

    @property
    def passed(self) -> bool:
        return passes(self.diff_valuation, self.prec, self.slack)

    def to_json(self, with_series: bool = False) -> dict[str, Any]:
        out = {
            "identity": self.identity,
            "params": self.params,
            "diff_valuation": self.diff_valuation,
            "pass": self.passed,
            "prec": self.prec,
            "slack": self.slack,
        }
        if with_series:
            out["lhs"] = self.lhs.to_json()
            out["rhs"] = self.rhs.to_json()
        return out

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        ps = " ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{mark} {self.identity:<26} diff_val={self.diff_valuation!s:<5} {ps}"


def passes(diff: int | str, prec: int, slack: int) -> bool:
    return diff == "inf" or diff >= prec - slack


# ------------------------------------------------------------ helpers


def _G(w: Fraction | int, place: Place, prec: int) -> LaurentSeries:
    return gamma_v(Fraction(w), place, prec).value


def _gamma0_target(place: Place, prec: int) -> LaurentSeries:
    return LaurentSeries.scalar(place, (-1) ** (place.d - 1), prec)


def _sqrt_gamma0_power(k: int, place: Place, prec: int) -> LaurentSeries:
    """Gamma(0)^(k/2) with the square root pinned to Gamma(1 - 1/(q-1))^((q-1)/2)."""
    q = place.q
    if q % 2 == 0:
        if k % 2:
            raise DomainError("half-integral power of Gamma(0) needs odd q")
        return _G(0, place, prec) ** (k // 2)
    return _G(1 - Fraction(1, q - 1), place, prec) ** ((q - 1) * k // 2)


def translation_factor(z: Fraction, place: Place, prec: int) -> LaurentSeries:
    """Gamma(z+1)/Gamma(z) = -D_{r,v} / prod_{i<r} D_{i,v}^(q-1), r = ord_q(z), z != 0."""
    r = q_digits(z.numerator, z.denominator, place.q).ord_q
    if r is None:
        raise DomainError("translation needs z != 0")
    return _translation_by_order(r, place, prec)


def _translation_by_order(r: int, place: Place, prec: int) -> LaurentSeries:
    den = LaurentSeries.one(place, prec)
    for i in range(r):
        den = den * carlitz_D_v(i, place, prec) ** (place.q - 1)
    return -carlitz_D_v(r, place, prec) / den


def _ord_q_rational(num: int, den: int, q: int, p: int) -> int:
    # largest r with q^r | num/den in Z_(p); num != 0 and p does not divide den
    vp = 0
    while num % p == 0:
        num //= p
        vp += 1
    e = round(math.log(q, p))
    return vp // e


def gross_koblitz_value(s: int, place: Place, prec: int) -> LaurentSeries:
    """(-1)^(d-1) prod_{j<d} (theta - eps^(q^(s-j)))^(-(q^s - q^j))."""
    q, d = place.q, place.d
    out = _gamma0_target(place, prec)
    for j in range(d):
        out = out * eps_linear(s - j, place, prec) ** (-(q**s - q**j))
    return out


# ------------------------------------------------------------ identities


def _gamma0(place: Place, prec: int, **_: Any) -> list[Pair]:
    g0 = _G(0, place, prec)
    q = place.q
    pairs = [(g0, _gamma0_target(place, prec))]
    pairs.append((_G(1 - Fraction(1, q - 1), place, prec) ** (q - 1), g0))
    return pairs


def _fe_reflection(place: Place, prec: int, z: Fraction, **_: Any) -> list[Pair]:
    return [(_G(z, place, prec) * _G(1 - z, place, prec), _G(0, place, prec))]


def _fe_translation(place: Place, prec: int, z: Fraction, **_: Any) -> list[Pair]:
    lhs = _G(z + 1, place, prec) / _G(z, place, prec)
    return [(lhs, translation_factor(z, place, prec))]


def _fe_multiplication(place: Place, prec: int, z: Fraction, n: int, **_: Any) -> list[Pair]:
    if n % place.p == 0:
        raise DomainError(f"n = {n} must be prime to p")
    lhs = LaurentSeries.one(place, prec)
    for i in range(n):
        lhs = lhs * _G(z + Fraction(i, n), place, prec)
    rhs = _G(n * z, place, prec) * _sqrt_gamma0_power(n - 1, place, prec)
    return [(lhs, rhs)]


def _monomial(place: Place, prec: int, ell: int, c: tuple[int, ...], **_: Any) -> list[Pair]:
    q = place.q
    den = q**ell - 1
    if len(c) != ell or any(not 0 <= x < q for x in c):
        raise DomainError("monomial needs ell digits in [0, q)")
    lhs = _G(1 - Fraction(sum(x * q**i for i, x in enumerate(c)), den), place, prec)
    rhs = LaurentSeries.one(place, prec)
    for i, x in enumerate(c):
        if x:
            rhs = rhs * _G(1 - Fraction(q**i, den), place, prec) ** x
    return [(lhs, rhs)]


def _product_expansion(place: Place, prec: int, ell: int, s: int, **_: Any) -> list[Pair]:
    if s < 1:
        raise DomainError("product_expansion needs s >= 1")
    q, d = place.q, place.d
    den = q**ell - 1
    lhs = gamma_ratio(1 - Fraction(q**s, den), 1 - Fraction(q ** (s - 1), den), place, prec)
    n_s = min_shift(ell, d, s)
    rhs = omega(ell, s, place, prec) / tail_product(ell, s - d, n_s + 1, place, prec)
    for n in range(n_s + 1):
        rhs = rhs * -eps_linear(s + n * ell, place, prec)
    edge = s + n_s * ell - d
    if edge > 0:
        rhs = rhs / theta_power_minus_theta(place, edge, prec)
    else:
        rhs = rhs / embed(place.v, place, prec)
    return [(lhs, rhs)]


def _product_expansion_shifted(place: Place, prec: int, ell: int, s: int, **_: Any) -> list[Pair]:
    idx = period_index(ell, place.d, s)
    top, bottom = gamma_arguments(place.q, ell, s, place.d)
    lhs = gamma_ratio(top, bottom, place, prec)
    s0 = idx.s_0
    rhs = tail_product(ell, s0, 1, place, prec) / tail_product(ell, s, 1, place, prec)
    for n in range(idx.n_s_prime):
        rhs = rhs * -eps_linear(s0 + n * ell, place, prec)
    rhs = rhs * _alpha(s0, place, prec) / _alpha(s, place, prec) / c_constant(s, place, prec)
    return [(lhs, rhs)]


def _gross_koblitz_explicit(place: Place, prec: int, s: int, **_: Any) -> list[Pair]:
    q, d = place.q, place.d
    if not 0 <= s < d:
        raise DomainError("gross_koblitz_explicit needs 0 <= s < d")
    lhs = _G(1 - Fraction(q**s, q**d - 1), place, prec) ** (1 - q**d)
    return [(lhs, gross_koblitz_value(s, place, prec))]


def gk_monomial_sides(place: Place, prec: int, n: int, a: int) -> Pair:
    """Both sides of prod_{i<r} Gamma(q^(id) z)^(1-q^d) for z = 1 - a/n.

    The right side never evaluates a gamma value: each q^(id) z is unwound by
    translation to 1 - <q^(id) a/n>, the product of those is rewritten by the
    digit relations as prod_j Gamma(1 - q^j/(q^d - 1))^(E_j), and each of these
    is replaced by its explicit Gross-Koblitz value.
    """
    q, d, p = place.q, place.d, place.p
    if n < 1 or n % p == 0 or not 0 <= a < n:
        raise DomainError("gk_monomial needs p not dividing n and 0 <= a < n")
    r = multiplicative_order(q**d % n, n) if n > 1 else 1
    length = r * d
    n_prime = (q**length - 1) // n
    z = 1 - Fraction(a, n)
    lhs = LaurentSeries.one(place, prec)
    for i in range(r):
        lhs = lhs * _G(q ** (i * d) * z, place, prec)
    # translation: q^(id) z = y_i + m_i, y_i = 1 - <q^(id) a/n>
    counts: dict[int, int] = {}
    exps = [0] * d
    for i in range(r):
        frac_num = (q ** (i * d) * a) % n  # <q^(id) a/n> = frac_num / n
        y = 1 - Fraction(frac_num, n)
        m = q ** (i * d) * z - y
        assert m.denominator == 1 and m >= 0
        if m > GK_TRANSLATION_CAP:
            raise DomainError(f"gk_monomial translation length {m} exceeds cap")
        base = n - frac_num  # y = base / n
        for j in range(int(m)):
            o = _ord_q_rational(base + j * n, n, q, p)
            counts[o] = counts.get(o, 0) + 1
    # rotating the digits of a/n by id places gives those of <q^(id) a/n>, so the
    # exponent of Gamma(1 - q^j/(q^d - 1)) sums the digits of a/n in the class of j
    for k, c in enumerate(_digits(a * n_prime, q, length)):
        exps[k % d] += c
    trans = LaurentSeries.one(place, prec)
    for o, c in sorted(counts.items()):
        trans = trans * _translation_by_order(o, place, prec) ** c
    rhs = trans ** (1 - q**d)
    for j in range(d):
        if exps[j]:
            rhs = rhs * gross_koblitz_value(j, place, prec) ** exps[j]
    return lhs ** (1 - q**d), rhs


def _digits(value: int, q: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        value, rem = divmod(value, q)
        out.append(rem)
    return out


def _gk_monomial(place: Place, prec: int, n: int, a: int, **_: Any) -> list[Pair]:
    return [gk_monomial_sides(place, prec, n, a)]


def _csf(place: Place, prec: int, ell: int, s: int, **_: Any) -> list[Pair]:
    return [(rho_row_gamma(ell, s, place, prec), rho_row_period(ell, s, place, prec))]


def _period_basis_change(place: Place, prec: int, ell: int, s: int, **_: Any) -> list[Pair]:
    return [(rho_row_period(ell, s, place, prec), rho_row_frobenius(ell, s, place, prec))]


def _omega_recurrence(place: Place, prec: int, ell: int, s: int, **_: Any) -> list[Pair]:
    lhs = omega(ell, s, place, prec)
    return [(lhs, unit_factor(s, place, prec) * omega(ell, s + ell, place, prec))]


def _omega_split(place: Place, prec: int, ell: int, s: int, **_: Any) -> list[Pair]:
    if not 0 < s <= ell:
        raise DomainError("omega_split needs 0 < s <= ell")
    rhs = LaurentSeries.one(place, prec)
    for j in range(place.d):
        rhs = rhs * omega(place.d * ell, j * ell + s, place, prec)
    return [(omega(ell, s, place, prec), rhs)]


CATALOG: dict[str, Callable[..., list[Pair]]] = {
    "gamma0": _gamma0,
    "FE_reflection": _fe_reflection,
    "FE_translation": _fe_translation,
    "FE_multiplication": _fe_multiplication,
    "monomial": _monomial,
    "product_expansion": _product_expansion,
    "product_expansion_shifted": _product_expansion_shifted,
    "gross_koblitz_explicit": _gross_koblitz_explicit,
    "gk_monomial": _gk_monomial,
    "csf": _csf,
    "period_basis_change": _period_basis_change,
    "omega_recurrence": _omega_recurrence,
    "omega_split": _omega_split,
}


# ------------------------------------------------------------ check


def resolve_place(params: dict[str, Any]) -> Place:
    if isinstance(params.get("place"), Place):
        return params["place"]
    field_desc = FieldDesc(int(params.get("p", 2)), int(params.get("e", 1)))
    v = params["v"]
    poly = v if isinstance(v, Polynomial) else parse_polynomial(str(v), field_desc)
    return make_place(poly)


def _public_params(place: Place, params: dict[str, Any], prec: int) -> dict[str, Any]:
    out: dict[str, Any] = {"q": place.q, "v": str(place.v)}
    for k, v in params.items():
        if k in ("place", "p", "e", "v"):
            continue
        if isinstance(v, Fraction):
            v = str(v)
        elif isinstance(v, tuple):
            v = list(v)
        out[k] = v
    out["N"] = prec
    return out


def check(
    identity_id: str,
    params: dict[str, Any],
    prec: int = DEFAULT_PREC,
    slack: int = DEFAULT_SLACK,
    corrupt: str | None = None,
) -> CheckReport:
    """Evaluate one identity.  ``corrupt`` is a test hook: "sign" negates the
    right side, "unit" multiplies it by 1 + pi."""
    fn = CATALOG.get(identity_id)
    if fn is None:
        raise DomainError(f"unknown identity {identity_id!r}; known: {', '.join(CATALOG)}")
    place = resolve_place(params)
    kwargs = {k: v for k, v in params.items() if k not in ("place", "p", "e", "v")}
    if "z" in kwargs:
        kwargs["z"] = Fraction(kwargs["z"])
    if "c" in kwargs:
        kwargs["c"] = tuple(kwargs["c"])
    pairs = fn(place, prec, **kwargs)
    worst = None
    for lhs, rhs in pairs:
        if corrupt == "sign":
            rhs = -rhs
        elif corrupt == "unit":
            rhs = rhs * LaurentSeries.from_terms(place, {0: 1, 1: 1}, prec)
        elif corrupt is not None:
            raise DomainError(f"unknown corruption {corrupt!r}")
        dv = diff_valuation(lhs, rhs)
        if worst is None or _key(dv) < _key(worst[2]):
            worst = (lhs, rhs, dv)
    assert worst is not None
    return CheckReport(identity_id, _public_params(place, params, prec), worst[0], worst[1], worst[2], prec, slack)


def _key(dv: int | str) -> float:
    return math.inf if dv == "inf" else dv


# ------------------------------------------------------------ suite


@dataclass(frozen=True)
class SuiteConfig:
    fields: tuple[tuple[int, int], ...] = ((2, 1), (3, 1))
    degrees: tuple[int, ...] = (1, 2)
    ells: tuple[int, ...] = (1, 2, 3, 4)
    prec: int = DEFAULT_PREC
    slack: int = DEFAULT_SLACK
    z_samples: int = 25
    seed: int = 0
    identities: tuple[str, ...] = tuple(CATALOG)
    places: tuple[str, ...] | None = None  # explicit v strings override the default choice
    gk_max_n: int = 8


def default_places(field_desc: FieldDesc, d: int) -> list[Polynomial]:
    """theta and theta + 1 in degree 1; the first irreducible in larger degree."""
    if d == 1:
        return enumerate_monic(field_desc, 1)[:2]
    for f in enumerate_monic(field_desc, d):
        if is_irreducible(f):
            return [f]
    raise AssertionError("no irreducible polynomial")  # pragma: no cover


def sample_z(q: int, ell: int, count: int, rng: random.Random) -> list[Fraction]:
    """Rationals with denominator dividing q^ell - 1, spread over a few periods."""
    den = q**ell - 1
    return [Fraction(rng.randint(-2 * den - 2, 2 * den + 2), den) for _ in range(count)]


def _multipliers(p: int) -> list[int]:
    return [n for n in (2, 3, 4, 5) if n % p]


def grid_params(config: SuiteConfig, place: Place, ell: int) -> dict[str, list[dict[str, Any]]]:
    q, d, p = place.q, place.d, place.p
    rng = random.Random(f"{config.seed}:{q}:{place.v}:{ell}")
    zs = sample_z(q, ell, config.z_samples, rng)
    mults = _multipliers(p)
    den = q**ell - 1
    out: dict[str, list[dict[str, Any]]] = {k: [] for k in CATALOG}
    for i, z in enumerate(zs):
        out["FE_reflection"].append({"z": z})
        if z != 0:
            out["FE_translation"].append({"z": z})
        out["FE_multiplication"].append({"z": z, "n": mults[i % len(mults)]})
        # argument 1 - <-z>, which is z + 1 up to an integer
        digits = _digits(int(frac(-z) * den), q, ell)
        out["monomial"].append({"ell": ell, "c": tuple(digits)})
    for s in range(1, ell + 1):
        out["product_expansion"].append({"ell": ell, "s": s})
        out["omega_recurrence"].append({"ell": ell, "s": s})
        out["omega_split"].append({"ell": ell, "s": s})
    for s in range(ell):
        out["product_expansion_shifted"].append({"ell": ell, "s": s})
        out["csf"].append({"ell": ell, "s": s})
        out["period_basis_change"].append({"ell": ell, "s": s})
    return out


def place_params(config: SuiteConfig, place: Place) -> dict[str, list[dict[str, Any]]]:
    """Grid entries that depend on the place only (not on ell)."""
    q, d, p = place.q, place.d, place.p
    out: dict[str, list[dict[str, Any]]] = {k: [] for k in CATALOG}
    out["gamma0"].append({})
    for s in range(d):
        out["gross_koblitz_explicit"].append({"s": s})
    for n in range(2, config.gk_max_n + 1):
        if n % p:
            r = multiplicative_order(q**d % n, n)
            if q ** ((r - 1) * d) <= GK_TRANSLATION_CAP:
                for a in range(n):
                    out["gk_monomial"].append({"n": n, "a": a})
    return out


def suite_places(config: SuiteConfig) -> list[Place]:
    places = []
    for p, e in config.fields:
        fd = FieldDesc(p, e)
        if config.places is not None:
            for v in config.places:
                places.append(make_place(parse_polynomial(v, fd)))
            continue
        for d in config.degrees:
            places.extend(make_place(v) for v in default_places(fd, d))
    return places


def run_suite(config: SuiteConfig) -> list[CheckReport]:
    """All checks on the grid, ordered by identity then by parameter order."""
    jobs: dict[str, list[dict[str, Any]]] = {k: [] for k in CATALOG}
    for place in suite_places(config):
        for k, plist in place_params(config, place).items():
            if k == "gamma0":
                continue
            jobs[k].extend({"place": place, **ps} for ps in plist)
        jobs["gamma0"].append({"place": place})
        for ell in config.ells:
            for k, plist in grid_params(config, place, ell).items():
                jobs[k].extend({"place": place, **ps} for ps in plist)
    reports = []
    for ident in CATALOG:
        if ident not in config.identities:
            continue
        for ps in jobs[ident]:
            reports.append(check(ident, ps, config.prec, config.slack))
    return reports


def summarize(reports: Iterable[CheckReport]) -> tuple[int, int]:
    reports = list(reports)
    return sum(r.passed for r in reports), len(reports)
