"""Exact arithmetic in finite fields F_{q^m} and in the polynomial ring A = F_q[theta].

Field elements are stored as integers: the element sum c_i g^i of the polynomial
basis over F_p is encoded as sum c_i p^i.  Comparing these integers is the single
global "lexicographic" order used for every tie-break in the package (choice of
modulus, of roots, of enumeration order).

Small fields (order <= 2**16) get log/exp/Zech tables; larger ones fall back to
polynomial arithmetic modulo the defining polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import DomainError, EnumerationBoundError, ParseError

DEFAULT_ENUMERATION_CAP = 6
_TABLE_LIMIT = 1 << 16


# --------------------------------------------------------------------------
# Polynomials over F_p as int lists, lowest degree first.  Internal helpers.


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = list(a)
    n = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(n + 1):
                a[i - n + j] = (a[i - n + j] - c * f[j]) % p
    return _trim(a[:n])


def _fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _fp_powmod(a: Sequence[int], k: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, f, p)
    while k:
        if k & 1:
            result = _fp_mod(_fp_mul(result, base, p), f, p)
        base = _fp_mod(_fp_mul(base, base, p), f, p)
        k >>= 1
    return result


def _fp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_is_irreducible(f: Sequence[int], p: int) -> bool:
    n = len(f) - 1
    if n == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = _fp_powmod(h, p, f, p)
        diff = _trim([(u - v) % p for u, v in _zip_pad(h, x)])
        if len(_fp_gcd(f, diff, p)) != 1:
            return False
    return True


def _zip_pad(a: Sequence[int], b: Sequence[int]) -> Iterator[tuple[int, int]]:
    for i in range(max(len(a), len(b))):
        yield (a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``n`` over F_p, coefficients low first."""
    for idx in range(p**n):
        f = [(idx // p**i) % p for i in range(n)] + [1]
        if _fp_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# --------------------------------------------------------------------------
# Integer-encoded arithmetic in F_p[g]/(modulus)


class _Arith:
    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.order = p**n
        self.modulus = smallest_irreducible(p, n)
        self.small = self.order <= _TABLE_LIMIT
        if self.small:
            self._build_tables()

    # encoding helpers
    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def undigits(self, ds: Sequence[int]) -> int:
        a = 0
        for c in reversed(ds):
            a = a * self.p + c % self.p
        return a

    def _slow_add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.undigits([(x + y) for x, y in zip(self.digits(a), self.digits(b))])

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _fp_mul(_trim(self.digits(a)), _trim(self.digits(b)), self.p)
        return self.undigits(_fp_mod(prod, self.modulus, self.p) + [0] * self.n)

    def _build_tables(self) -> None:
        m = self.order - 1
        gen = self._find_primitive()
        exp = [0] * (2 * m + 1)
        log = [0] * self.order
        x = 1
        for k in range(m):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, gen)
        for k in range(m, 2 * m + 1):
            exp[k] = exp[k - m]
        self.exp, self.log = exp, log
        # zech[k] = log(1 + g^k), or -1 when 1 + g^k == 0
        zech = [0] * max(m, 1)
        for k in range(m):
            s = self._slow_add(1, exp[k])
            zech[k] = log[s] if s else -1
        self.zech = zech

    def _find_primitive(self) -> int:
        m = self.order - 1
        if m == 1:
            return 1
        primes = _prime_factors(m)
        for c in range(2, self.order):
            if all(self._slow_pow(c, m // r) != 1 for r in primes):
                return c
        raise AssertionError("no primitive element")  # pragma: no cover

    def _slow_pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return r

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if not self.small:
            return self._slow_add(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        m = self.order - 1
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % m]
        return 0 if z < 0 else self.exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.undigits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.small:
            return self.exp[self.log[a] + self.log[b]]
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.small:
            m = self.order - 1
            return self.exp[(m - self.log[a]) % m]
        return self._slow_pow(a, self.order - 2)

    def pow(self, a: int, k: int) -> int:
        m = self.order - 1
        if k == 0:
            return 1
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return 0
        if self.small:
            return self.exp[(self.log[a] * k) % m]
        return self._slow_pow(a, k % m)


@lru_cache(maxsize=None)
def _arith(p: int, n: int) -> _Arith:
    return _Arith(p, n)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FieldDesc:
    """The field F_{q^m} with q = p^e, in the polynomial basis over F_p."""

    p: int
    e: int = 1
    m: int = 1

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise DomainError(f"p={self.p} is not prime")
        if self.e < 1 or self.m < 1:
            raise DomainError("extension degrees must be positive")

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def degree(self) -> int:
        """Degree over the prime field."""
        return self.e * self.m

    @property
    def order(self) -> int:
        return self.p**self.degree

    @property
    def modulus(self) -> tuple[int, ...]:
        return _arith(self.p, self.degree).modulus

    @property
    def arith(self) -> _Arith:
        return _arith(self.p, self.degree)

    @property
    def base(self) -> "FieldDesc":
        return FieldDesc(self.p, self.e, 1)

    def extension(self, m: int) -> "FieldDesc":
        return FieldDesc(self.p, self.e, m)

    def __call__(self, value: int | Sequence[int]) -> "FieldElem":
        if isinstance(value, int):
            return FieldElem(self, value % self.p)
        if len(value) > self.degree:
            raise DomainError("too many coefficients for this field")
        return FieldElem(self, self.arith.undigits(list(value) + [0] * (self.degree - len(value))))

    def from_index(self, value: int) -> "FieldElem":
        if not 0 <= value < self.order:
            raise DomainError("index out of range")
        return FieldElem(self, value)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def gen(self) -> "FieldElem":
        """The basis generator g (class of the variable modulo the modulus)."""
        return FieldElem(self, self.p if self.degree > 1 else 0)

    def elements(self) -> Iterator["FieldElem"]:
        for i in range(self.order):
            yield FieldElem(self, i)

    def describe(self) -> str:
        terms = []
        for i, c in reversed(list(enumerate(self.modulus))):
            if c:
                mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
                coef = "" if (c == 1 and mono) else str(c)
                terms.append(coef + ("*" if coef and mono else "") + mono)
        mod = " + ".join(terms)
        return f"F_{self.order} = F_{self.p}[g]/({mod})"

    @cached_property
    def _base_embedding(self) -> tuple[int, ...]:
        # image of each F_q element; the generator of F_q goes to the smallest root
        # of the F_q modulus inside this field
        if self.m == 1:
            return tuple(range(self.q))
        base = self.base
        if base.degree == 1:
            return tuple(range(self.p))
        f = base.modulus
        ar = self.arith
        root = None
        for r in range(self.order):
            acc = 0
            for c in reversed(f):
                acc = ar.add(ar.mul(acc, r), c)
            if acc == 0:
                root = r
                break
        assert root is not None
        images = []
        bar = base.arith
        for idx in range(base.order):
            acc = 0
            for c in reversed(bar.digits(idx)):
                acc = ar.add(ar.mul(acc, root), c)
            images.append(acc)
        return tuple(images)

    def embed(self, x: "FieldElem") -> "FieldElem":
        """Map an element of the subfield F_q into this field."""
        if x.desc == self:
            return x
        if x.desc != self.base:
            raise DomainError("can only embed elements of the base field F_q")
        return FieldElem(self, self._base_embedding[x.value])

    def embed_index(self, value: int) -> int:
        return self._base_embedding[value]


@dataclass(frozen=True)
class FieldElem:
    desc: FieldDesc
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coordinates over F_p in the polynomial basis, lowest power first."""
        return tuple(self.desc.arith.digits(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def _coerce(self, other: "FieldElem | int") -> int:
        if isinstance(other, FieldElem):
            if other.desc != self.desc:
                raise DomainError("field mismatch")
            return other.value
        return other % self.desc.p

    def __add__(self, other: "FieldElem | int") -> "FieldElem":
        return FieldElem(self.desc, self.desc.arith.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __neg__(self) -> "FieldElem":
        return FieldElem(self.desc, self.desc.arith.neg(self.value))

    def __sub__(self, other: "FieldElem | int") -> "FieldElem":
        return FieldElem(self.desc, self.desc.arith.sub(self.value, self._coerce(other)))

    def __rsub__(self, other: int) -> "FieldElem":
        return FieldElem(self.desc, self.desc.arith.sub(self._coerce(other), self.value))

    def __mul__(self, other: "FieldElem | int") -> "FieldElem":
        return FieldElem(self.desc, self.desc.arith.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        return FieldElem(self.desc, self.desc.arith.inv(self.value))

    def __truediv__(self, other: "FieldElem | int") -> "FieldElem":
        ar = self.desc.arith
        return FieldElem(self.desc, ar.mul(self.value, ar.inv(self._coerce(other))))

    def __pow__(self, k: int) -> "FieldElem":
        return FieldElem(self.desc, self.desc.arith.pow(self.value, k))

    def __str__(self) -> str:
        if self.desc.degree == 1:
            return str(self.value)
        return "(" + ",".join(map(str, self.coeffs)) + ")"

    def __repr__(self) -> str:
        return f"FieldElem({self}, F_{self.desc.order})"


def frobenius(x: FieldElem, n: int) -> FieldElem:
    """Return x^(q^n) in F_{q^m}; n is read modulo m, negative n inverts Frobenius."""
    desc = x.desc
    k = n % desc.m
    if k == 0 or x.value == 0:
        return x
    return FieldElem(desc, desc.arith.pow(x.value, desc.q**k))


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial in theta over a finite field; ``c`` holds coefficient
    indices lowest degree first with no trailing zeros."""

    field: FieldDesc
    c: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.c and self.c[-1] == 0:
            c = list(self.c)
            object.__setattr__(self, "c", tuple(_trim(c)))

    @classmethod
    def from_elems(cls, coeffs: Sequence[FieldElem | int], field: FieldDesc) -> "Polynomial":
        vals = [x.value if isinstance(x, FieldElem) else field(x).value for x in coeffs]
        return cls(field, tuple(vals))

    @classmethod
    def theta(cls, field: FieldDesc) -> "Polynomial":
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: FieldDesc, value: FieldElem | int) -> "Polynomial":
        v = value.value if isinstance(value, FieldElem) else field(value).value
        return cls(field, (v,))

    @classmethod
    def monomial(cls, field: FieldDesc, deg: int) -> "Polynomial":
        return cls(field, (0,) * deg + (1,))

    @property
    def coeffs(self) -> tuple[FieldElem, ...]:
        return tuple(FieldElem(self.field, v) for v in self.c)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def leading(self) -> FieldElem:
        return FieldElem(self.field, self.c[-1])

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def _wrap(self, other: "Polynomial | FieldElem | int") -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise DomainError("polynomials over different fields")
            return other
        return Polynomial.constant(self.field, other)

    def __add__(self, other: "Polynomial | FieldElem | int") -> "Polynomial":
        o = self._wrap(other)
        ar = self.field.arith
        n = max(len(self.c), len(o.c))
        a = self.c + (0,) * (n - len(self.c))
        b = o.c + (0,) * (n - len(o.c))
        return Polynomial(self.field, tuple(ar.add(x, y) for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        ar = self.field.arith
        return Polynomial(self.field, tuple(ar.neg(x) for x in self.c))

    def __sub__(self, other: "Polynomial | FieldElem | int") -> "Polynomial":
        return self + (-self._wrap(other))

    def __rsub__(self, other: "FieldElem | int") -> "Polynomial":
        return self._wrap(other) - self

    def __mul__(self, other: "Polynomial | FieldElem | int") -> "Polynomial":
        o = self._wrap(other)
        if not self.c or not o.c:
            return Polynomial(self.field, ())
        ar = self.field.arith
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    if y:
                        out[i + j] = ar.add(out[i + j], ar.mul(x, y))
        return Polynomial(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise DomainError("negative power of a polynomial")
        result = Polynomial.constant(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def frobenius_power(self, k: int) -> "Polynomial":
        """f^(p^k), computed coefficientwise (characteristic-p Frobenius)."""
        ar = self.field.arith
        step = self.field.p**k
        out = [0] * (self.degree * step + 1) if self.c else []
        for i, x in enumerate(self.c):
            out[i * step] = ar.pow(x, step) if x else 0
        return Polynomial(self.field, tuple(out))

    def q_power(self, k: int = 1) -> "Polynomial":
        """f^(q^k)."""
        return self.frobenius_power(self.field.e * k)

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.field.degree == 1:
            return self._divmod_prime(other)
        ar = self.field.arith
        rem = list(self.c)
        dv = other.c
        n = len(dv) - 1
        inv_lead = ar.inv(dv[-1])
        quot = [0] * max(len(rem) - n, 0)
        for i in range(len(rem) - 1, n - 1, -1):
            coef = ar.mul(rem[i], inv_lead)
            if coef:
                quot[i - n] = coef
                for j in range(n + 1):
                    if dv[j]:
                        rem[i - n + j] = ar.sub(rem[i - n + j], ar.mul(coef, dv[j]))
        return Polynomial(self.field, tuple(quot)), Polynomial(self.field, tuple(rem[:n]))

    def _divmod_prime(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        # plain integers mod p; avoids the table lookups
        p = self.field.p
        rem = list(self.c)
        dv = other.c
        n = len(dv) - 1
        inv_lead = pow(dv[-1], -1, p)
        support = [(j, c) for j, c in enumerate(dv) if c]
        quot = [0] * max(len(rem) - n, 0)
        for i in range(len(rem) - 1, n - 1, -1):
            coef = rem[i] * inv_lead % p
            if coef:
                quot[i - n] = coef
                base = i - n
                for j, c in support:
                    rem[base + j] = (rem[base + j] - coef * c) % p
        return Polynomial(self.field, tuple(quot)), Polynomial(self.field, tuple(rem[:n]))

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * self.leading.inverse()

    def __call__(self, x: FieldElem) -> FieldElem:
        """Evaluate at an element of the field or of an extension of it."""
        target = x.desc
        ar = target.arith
        acc = 0
        for v in reversed(self.c):
            coef = v if target == self.field else target.embed_index(v)
            acc = ar.add(ar.mul(acc, x.value), coef)
        return FieldElem(target, acc)

    def powmod(self, k: int, modulus: "Polynomial") -> "Polynomial":
        result = Polynomial.constant(self.field, 1) % modulus
        base = self % modulus
        while k:
            if k & 1:
                result = (result * base) % modulus
            k >>= 1
            if k:
                base = (base * base) % modulus
        return result

    def __str__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            v = self.c[i]
            if not v:
                continue
            coef = str(FieldElem(self.field, v))
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(coef)
            elif v == 1:
                terms.append(mono)
            else:
                terms.append(f"{coef}*{mono}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Polynomial({self} over F_{self.field.order})"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_irreducible(f: Polynomial) -> bool:
    """Ben-Or test: gcd(f, theta^(Q^i) - theta) = 1 for i <= deg/2, Q = |field|."""
    if f.degree < 1:
        raise DomainError("irreducibility is undefined for constants")
    if f.degree == 1:
        return True
    f = f.monic()
    theta = Polynomial.theta(f.field)
    h = theta
    Q = f.field.order
    for _ in range(f.degree // 2):
        h = h.powmod(Q, f)
        if poly_gcd(f, h - theta).degree > 0:
            return False
    return True


def enumerate_monic(
    field: FieldDesc, degree: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[Polynomial]:
    """All monic polynomials of the given degree, ordered by sum c_i q^i."""
    if degree < 0:
        raise DomainError("degree must be non-negative")
    if degree > cap:
        raise EnumerationBoundError(f"degree {degree} exceeds enumeration cap {cap}")
    Q = field.order
    out = []
    for idx in range(Q**degree):
        c = [(idx // Q**i) % Q for i in range(degree)] + [1]
        out.append(Polynomial(field, tuple(c)))
    return out


def order_of_v(a: Polynomial, v: Polynomial) -> int:
    """Exact multiplicity of v in a by repeated division (a != 0)."""
    if a.is_zero():
        raise DomainError("order of the zero polynomial is infinite")
    n = 0
    while True:
        quo, rem = divmod(a, v)
        if not rem.is_zero():
            return n
        a = quo
        n += 1


_TERM = re.compile(
    r"^(?:(?P<int>\d+)|(?P<g>g)(?:\^(?P<gk>\d+))?)?\*?(?:(?P<x>x)(?:\^(?P<xk>\d+))?)?$"
)


def parse_polynomial(text: str, field: FieldDesc) -> Polynomial:
    """Parse e.g. ``x^2+1`` or ``x^2 + g*x + g^2`` (g generates F_q) into F_q[theta]."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    parts = re.findall(r"[+-][^+-]*", s)
    if "".join(parts) != s:
        raise ParseError(f"malformed polynomial {text!r}")
    total = Polynomial(field, ())
    for part in parts:
        sign, body = part[0], part[1:]
        m = _TERM.match(body)
        if not body or not m or (m.group("int") is None and m.group("g") is None and m.group("x") is None):
            raise ParseError(f"malformed term {part!r} in {text!r}")
        if m.group("g") is not None:
            if field.e == 1:
                raise ParseError("generator tokens g^k need a prime-power q (e > 1)")
            coef = field.gen ** int(m.group("gk") or 1)
        elif m.group("int") is not None:
            coef = field(int(m.group("int")))
        else:
            coef = field.one
        if sign == "-":
            coef = -coef
        deg = int(m.group("xk") or 1) if m.group("x") else 0
        total = total + Polynomial.monomial(field, deg) * coef
    return total
