"""The completion k_v = F_{q^d}((pi)), pi = theta - eps, as fixed-window Laurent series.

A series stores its valuation ``val`` and a window of ``prec`` coefficients, each
an element of F_{q^d} written as a row of F_p digits in a numpy array.  Only the
first ``trusted = prec - deficit`` rows are known; the absolute precision of the
value is therefore ``val + trusted``.  Cancellation in a sum can shrink
``trusted``; raising to a p-th power grows it again.

The zero series is flagged and carries only its absolute precision (kept in
``val``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Union

import numpy as np

from .algebra import FieldDesc, FieldElem, Polynomial, frobenius, is_irreducible
from .errors import DomainError, PlaceConstructionError

ScalarLike = Union[FieldElem, int]

# absolute precision recorded for an exactly known zero
EXACT = 1 << 40


@dataclass(frozen=True)
class Place:
    """A finite place v of F_q(theta): v monic irreducible of degree d, with the
    lexicographically smallest root eps in F_{q^d} and its Frobenius orbit."""

    v: Polynomial
    d: int
    eps: FieldElem
    conjugates: tuple[FieldElem, ...]

    @property
    def base(self) -> FieldDesc:
        return self.v.field

    @property
    def residue(self) -> FieldDesc:
        return self.eps.desc

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def p(self) -> int:
        return self.base.p

    def eps_power(self, k: int) -> FieldElem:
        """eps^(q^k); depends only on k mod d."""
        return self.conjugates[k % self.d]

    def __str__(self) -> str:
        return f"v = {self.v} (q = {self.q}, d = {self.d}, eps = {self.eps})"


def make_place(v: Polynomial) -> Place:
    if v.degree < 1 or not v.is_monic():
        raise PlaceConstructionError(f"{v} is not a monic polynomial of positive degree")
    if not is_irreducible(v):
        raise PlaceConstructionError(f"{v} is reducible over F_{v.field.q}")
    base = v.field
    if base.m != 1:
        raise PlaceConstructionError("places are defined over F_q (m = 1)")
    d = v.degree
    residue = base.extension(d)
    eps = None
    # ascending index order, so the first root met is the smallest
    for x in residue.elements():
        if v(x).is_zero():
            eps = x
            break
    if eps is None:  # pragma: no cover - irreducible polys split in F_{q^d}
        raise PlaceConstructionError(f"no root of {v} found in F_{residue.order}")
    conj = tuple(frobenius(eps, j) for j in range(d))
    if len(set(conj)) != d:
        raise PlaceConstructionError("Frobenius orbit of the root is too short")
    check = Polynomial.constant(residue, 1)
    for c in conj:
        check = check * Polynomial(residue, ((-c).value, 1))
    lifted = Polynomial(residue, tuple(residue.embed_index(x) for x in v.c))
    if check != lifted:
        raise PlaceConstructionError("product over conjugates does not reproduce v")
    return Place(v, d, eps, conj)


# --------------------------------------------------------------------------


class _Ctx:
    """Per-residue-field numeric tables: reduction, scalar and Frobenius matrices."""

    def __init__(self, residue: FieldDesc):
        self.residue = residue
        self.p = residue.p
        self.m = residue.degree
        ar = residue.arith
        m, p = self.m, self.p
        # row k: digits of g^k reduced, for k < 2m - 1
        red = np.zeros((max(2 * m - 1, 1), m), dtype=np.int64)
        for k in range(2 * m - 1):
            red[k] = ar.digits(ar.pow(residue.gen.value, k) if m > 1 else 1)
        self.red = red
        self._scalar: dict[int, np.ndarray] = {}
        frob = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            gi = ar.pow(residue.gen.value, i) if m > 1 else 1
            frob[i] = ar.digits(ar.pow(gi, p))
        self.frob = frob

    def row(self, x: int) -> np.ndarray:
        return np.array(self.residue.arith.digits(x), dtype=np.int64)

    def unrow(self, r: np.ndarray) -> int:
        return self.residue.arith.undigits([int(c) for c in r])

    def scalar_matrix(self, c: int) -> np.ndarray:
        mat = self._scalar.get(c)
        if mat is None:
            ar = self.residue.arith
            mat = np.zeros((self.m, self.m), dtype=np.int64)
            for i in range(self.m):
                gi = ar.pow(self.residue.gen.value, i) if self.m > 1 else 1
                mat[i] = ar.digits(ar.mul(c, gi))
            self._scalar[c] = mat
        return mat

    def mul(self, a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
        p, m = self.p, self.m
        if m == 1:
            return (np.convolve(a[:n, 0], b[:n, 0])[:n] % p).reshape(-1, 1)
        acc = np.zeros((n, 2 * m - 1), dtype=np.int64)
        for i in range(m):
            ai = a[:n, i]
            if not ai.any():
                continue
            for j in range(m):
                bj = b[:n, j]
                if bj.any():
                    acc[:, i + j] += np.convolve(ai, bj)[:n]
        return (acc % p) @ self.red % p


@lru_cache(maxsize=None)
def _ctx(residue: FieldDesc) -> _Ctx:
    return _Ctx(residue)


def _normalize(
    place: Place, arr: np.ndarray, val: int, abs_prec: int | None, prec: int
) -> "LaurentSeries":
    """Strip leading zeros of ``arr`` (coefficients from pi^val on), cut to the
    window and clear untrusted rows.  ``abs_prec=None`` means exact."""
    known = arr.shape[0] if abs_prec is None else min(arr.shape[0], abs_prec - val)
    if known > 0:
        nz = np.flatnonzero(arr[:known].any(axis=1))
    else:
        nz = np.empty(0, dtype=np.int64)
    if nz.size == 0:
        return LaurentSeries._zero(place, EXACT if abs_prec is None else abs_prec, prec)
    t = int(nz[0])
    new_val = val + t
    trusted = prec if abs_prec is None else min(prec, abs_prec - new_val)
    out = np.zeros((prec, arr.shape[1]), dtype=np.int64)
    avail = min(trusted, arr.shape[0] - t)
    out[:avail] = arr[t : t + avail]
    return LaurentSeries(place, new_val, out, prec, prec - trusted)


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    place: Place
    val: int
    coeffs: np.ndarray = field(repr=False)
    prec: int
    deficit: int = 0
    zero: bool = False

    def __post_init__(self) -> None:
        self.coeffs.setflags(write=False)

    # ---------------------------------------------------------------- basics
    @property
    def ctx(self) -> _Ctx:
        return _ctx(self.place.residue)

    @property
    def trusted(self) -> int:
        return 0 if self.zero else self.prec - self.deficit

    @property
    def abs_prec(self) -> int:
        return self.val if self.zero else self.val + self.trusted

    @property
    def valuation(self) -> int | float:
        return float("inf") if self.zero else self.val

    def coefficient(self, i: int) -> FieldElem:
        """Coefficient of pi^(val + i)."""
        if not 0 <= i < self.trusted:
            raise DomainError("coefficient outside the trusted window")
        return FieldElem(self.place.residue, self.ctx.unrow(self.coeffs[i]))

    def constant_term(self) -> FieldElem:
        res = self.place.residue
        if self.zero or self.val > 0:
            if self.zero and self.val <= 0:
                raise DomainError("constant term not determined at this precision")
            return res.zero
        if self.val < 0:
            raise DomainError("series has a pole")
        return self.coefficient(0)

    def is_one_unit(self) -> bool:
        return not self.zero and self.val == 0 and self.coefficient(0).value == 1

    @classmethod
    def _zero(cls, place: Place, abs_prec: int, prec: int) -> "LaurentSeries":
        m = place.residue.degree
        return cls(place, abs_prec, np.zeros((prec, m), dtype=np.int64), prec, prec, True)

    # ---------------------------------------------------------- constructors
    @classmethod
    def from_terms(
        cls, place: Place, terms: Mapping[int, ScalarLike], prec: int
    ) -> "LaurentSeries":
        """Exact series sum c_k pi^k from a sparse map {k: c_k} (c_k in F_{q^d})."""
        res = place.residue
        ctx = _ctx(res)
        vals = {}
        for k, c in terms.items():
            x = _scalar_value(res, c)
            if x:
                vals[k] = x
        if not vals:
            return cls._zero(place, EXACT, prec)
        lo = min(vals)
        hi = min(max(vals), lo + prec - 1)
        arr = np.zeros((hi - lo + 1, res.degree), dtype=np.int64)
        for k, x in vals.items():
            if k <= hi:
                arr[k - lo] = ctx.row(x)
        return _normalize(place, arr, lo, None, prec)

    @classmethod
    def one(cls, place: Place, prec: int) -> "LaurentSeries":
        return cls.from_terms(place, {0: 1}, prec)

    @classmethod
    def scalar(cls, place: Place, c: ScalarLike, prec: int) -> "LaurentSeries":
        return cls.from_terms(place, {0: c}, prec)

    @classmethod
    def pi_power(cls, place: Place, k: int, prec: int) -> "LaurentSeries":
        return cls.from_terms(place, {k: 1}, prec)

    # ----------------------------------------------------------- arithmetic
    def _check(self, other: "LaurentSeries") -> None:
        if other.place != self.place or other.prec != self.prec:
            raise DomainError("series from different places or precisions")

    def _lift(self, other: "LaurentSeries | ScalarLike") -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            self._check(other)
            return other
        return LaurentSeries.scalar(self.place, other, self.prec)

    def __add__(self, other: "LaurentSeries | ScalarLike") -> "LaurentSeries":
        o = self._lift(other)
        ab = min(self.abs_prec, o.abs_prec)
        lo = min(self.val, o.val)
        length = ab - lo
        if length <= 0:
            return LaurentSeries._zero(self.place, ab, self.prec)
        arr = np.zeros((length, self.coeffs.shape[1]), dtype=np.int64)
        for s in (self, o):
            if s.zero:
                continue
            off = s.val - lo
            n = min(s.trusted, length - off)
            if n > 0:
                arr[off : off + n] += s.coeffs[:n]
        arr %= self.ctx.p
        return _normalize(self.place, arr, lo, ab, self.prec)

    __radd__ = __add__

    def __neg__(self) -> "LaurentSeries":
        if self.zero:
            return self
        arr = (-self.coeffs) % self.ctx.p
        return LaurentSeries(self.place, self.val, arr, self.prec, self.deficit)

    def __sub__(self, other: "LaurentSeries | ScalarLike") -> "LaurentSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other: ScalarLike) -> "LaurentSeries":
        return self._lift(other) - self

    def scale(self, c: ScalarLike) -> "LaurentSeries":
        x = _scalar_value(self.place.residue, c)
        if self.zero:
            return self
        if x == 0:
            return LaurentSeries._zero(self.place, EXACT, self.prec)
        arr = self.coeffs @ self.ctx.scalar_matrix(x) % self.ctx.p
        return LaurentSeries(self.place, self.val, arr, self.prec, self.deficit)

    def __mul__(self, other: "LaurentSeries | ScalarLike") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        self._check(other)
        if self.zero or other.zero:
            ab = min(self.val + other.val, EXACT)
            return LaurentSeries._zero(self.place, ab, self.prec)
        t = min(self.trusted, other.trusted)
        arr = self.ctx.mul(self.coeffs, other.coeffs, t)
        out = np.zeros_like(self.coeffs)
        out[:t] = arr
        return LaurentSeries(self.place, self.val + other.val, out, self.prec, self.prec - t)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        if self.zero:
            raise ZeroDivisionError("inverse of a series that is zero to working precision")
        ctx = self.ctx
        t = self.trusted
        lead = ctx.unrow(self.coeffs[0])
        inv_lead = self.place.residue.arith.inv(lead)
        x = np.zeros((t, ctx.m), dtype=np.int64)
        x[0] = ctx.row(inv_lead)
        two = np.zeros((t, ctx.m), dtype=np.int64)
        two[0] = ctx.row(2 % ctx.p)
        n = 1
        # Newton: x <- x (2 - s x), doubling the number of correct terms
        while n < t:
            n = min(2 * n, t)
            sx = ctx.mul(self.coeffs, x, n)
            corr = (two[:n] - sx) % ctx.p
            x = np.vstack([ctx.mul(x, corr, n), np.zeros((t - n, ctx.m), dtype=np.int64)])
        out = np.zeros_like(self.coeffs)
        out[:t] = x[:t]
        return LaurentSeries(self.place, -self.val, out, self.prec, self.prec - t)

    def __truediv__(self, other: "LaurentSeries | ScalarLike") -> "LaurentSeries":
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other: ScalarLike) -> "LaurentSeries":
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> "LaurentSeries":
        return series_pow(self, k)

    def frobenius_p(self) -> "LaurentSeries":
        """self^p: coefficients go through c -> c^p and pi^i -> pi^(ip)."""
        if self.zero:
            return LaurentSeries._zero(self.place, self.val * self.ctx.p, self.prec)
        p = self.ctx.p
        t = self.trusted
        new_t = min(self.prec, p * t)
        out = np.zeros_like(self.coeffs)
        src = self.coeffs[: (new_t + p - 1) // p] @ self.ctx.frob % p
        out[: src.shape[0] * p : p] = src
        return LaurentSeries(self.place, self.val * p, out, self.prec, self.prec - new_t)

    def q_power(self, k: int = 1) -> "LaurentSeries":
        """self^(q^k) by repeated Frobenius."""
        s = self
        for _ in range(k * self.place.base.e):
            s = s.frobenius_p()
        return s

    # ------------------------------------------------------------ rendering
    def to_json(self) -> dict:
        rows = [[int(c) for c in self.coeffs[i]] for i in range(self.trusted)]
        return {"val": self.val, "prec": self.prec, "coeffs": rows}

    @classmethod
    def from_json(cls, place: Place, data: Mapping) -> "LaurentSeries":
        prec = int(data["prec"])
        rows = data["coeffs"]
        m = place.residue.degree
        if not rows:
            return cls._zero(place, int(data["val"]), prec)
        arr = np.zeros((prec, m), dtype=np.int64)
        arr[: len(rows)] = np.array(rows, dtype=np.int64).reshape(len(rows), m)
        return cls(place, int(data["val"]), arr, prec, prec - len(rows))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def render(self, max_terms: int | None = None) -> str:
        if self.zero:
            return f"O(π^{self.val})"
        if self.val == 0 and self.deficit == 0 and not self.coeffs[1:].any():
            return str(self.coefficient(0))
        terms = []
        for i in range(self.trusted):
            if not self.coeffs[i].any():
                continue
            c = str(self.coefficient(i))
            mono = "π" if i == 1 else f"π^{i}"
            terms.append(c if i == 0 else (mono if c == "1" else f"{c}*{mono}"))
            if max_terms is not None and len(terms) >= max_terms:
                terms.append("...")
                break
        return f"π^{self.val} * ({' + '.join(terms)} + O(π^{self.trusted}))"

    def __repr__(self) -> str:
        return f"LaurentSeries({self.render(max_terms=6)})"


def _scalar_value(res: FieldDesc, c: ScalarLike) -> int:
    if isinstance(c, FieldElem):
        if c.desc == res:
            return c.value
        return res.embed(c).value
    return c % res.p


def series_pow(s: LaurentSeries, k: int) -> LaurentSeries:
    """s^k; uses base-p digits of k so that p-th powers cost one Frobenius each."""
    if k == 0:
        return LaurentSeries.one(s.place, s.prec)
    if k < 0:
        if s.zero:
            raise ZeroDivisionError("zero series to a negative power")
        return series_pow(s.inverse(), -k)
    p = s.ctx.p
    result = None
    base = s
    while k:
        k, digit = divmod(k, p)
        for _ in range(digit):
            result = base if result is None else result * base
        if k:
            base = base.frobenius_p()
    return result


def embed(a: Polynomial, place: Place, prec: int) -> LaurentSeries:
    """Image of a in F_{q^d}((pi)) under theta -> eps + pi (exact Taylor shift)."""
    if a.field != place.base:
        raise DomainError("polynomial is not over the base field of the place")
    res = place.residue
    ar = res.arith
    e = place.eps.value
    acc: list[int] = []
    for c in reversed(a.c):
        # acc <- acc * (eps + pi) + c
        new = [0] * (len(acc) + 1)
        for j, x in enumerate(acc):
            if x:
                new[j] = ar.add(new[j], ar.mul(x, e))
                new[j + 1] = ar.add(new[j + 1], x)
        new[0] = ar.add(new[0], res.embed_index(c))
        acc = new
    terms = {j: FieldElem(res, x) for j, x in enumerate(acc) if x}
    return LaurentSeries.from_terms(place, terms, prec)


def theta_series(place: Place, prec: int) -> LaurentSeries:
    return LaurentSeries.from_terms(place, {0: place.eps, 1: 1}, prec)


def theta_q_power(place: Place, k: int, prec: int) -> LaurentSeries:
    """theta^(q^k) = eps^(q^k) + pi^(q^k), exactly."""
    return LaurentSeries.from_terms(place, {0: place.eps_power(k), place.q**k: 1}, prec)


def theta_power_minus_theta(place: Place, n: int, prec: int) -> LaurentSeries:
    """theta^(q^n) - theta, exactly."""
    # theta^(q^n) - theta = (eps^(q^n) - eps) + pi^(q^n) - pi
    res = place.residue
    terms = {0: place.eps_power(n) - place.eps, 1: res(-1)}
    k = place.q**n
    terms[k] = terms.get(k, res.zero) + res.one
    return LaurentSeries.from_terms(place, terms, prec)


def diff_valuation(lhs: LaurentSeries, rhs: LaurentSeries) -> int | str:
    """ord_pi(lhs - rhs).  When the difference vanishes in the window this is
    "inf" if no precision was lost, otherwise the certified lower bound."""
    diff = lhs - rhs
    if not diff.zero:
        return diff.val
    full = min(lhs.abs_prec, rhs.abs_prec)
    if diff.val >= full and _lossless(lhs) and _lossless(rhs):
        return "inf"
    return diff.val


def _lossless(x: LaurentSeries) -> bool:
    # an exact zero carries its infinite precision in val
    return x.val >= EXACT if x.zero else x.deficit == 0
