"""Exponent-lattice combinatorics for monomial relations among gamma values."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, InconsistencyError, NotPAdicError

ExponentVector = tuple[int, ...]


def delta_vectors(d: int, ell0: int) -> list[ExponentVector]:
    """delta_j in Z^(d*ell0): 1 at indices congruent to j mod d."""
    if d < 1 or ell0 < 1:
        raise DomainError("d and ell0 must be positive")
    m = d * ell0
    return [tuple(1 if i % d == j else 0 for i in range(m)) for j in range(d)]


def lambda_vectors(ell: int, m: int) -> list[ExponentVector]:
    """lambda_j in Z^m: 1 at indices congruent to j mod ell (ell | m)."""
    if ell < 1 or m < 1 or m % ell:
        raise DomainError("need ell >= 1 dividing m")
    return [tuple(1 if i % ell == j else 0 for i in range(m)) for j in range(ell)]


def span_dim(vectors: Sequence[Sequence[int]]) -> int:
    """Dimension of the rational span, by exact Gaussian elimination."""
    rows = [list(map(Fraction, v)) for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DomainError("vectors have different lengths")
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] / pr[col]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def trdeg_gamma(d: int, ell: int) -> int:
    """Transcendence degree of the gamma values with denominator q^ell - 1.

    Both the lattice dimension and the closed form ell - gcd(ell, d) are
    computed; disagreement raises.
    """
    if d < 1 or ell < 1:
        raise DomainError("d and ell must be positive")
    m = math.lcm(d, ell)
    lattice = span_dim(delta_vectors(d, m // d) + lambda_vectors(ell, m)) - d
    closed = ell - math.gcd(ell, d)
    if lattice != closed:
        raise InconsistencyError(f"lattice route {lattice} != closed form {closed}")
    return closed


def _prime_of(q: int) -> int:
    k = 2
    while q % k:
        k += 1
    if q != k ** round(math.log(q, k)):
        raise DomainError(f"q = {q} is not a prime power")
    return k


def multiplicative_order(x: int, n: int) -> int:
    if math.gcd(x, n) != 1:
        raise DomainError(f"{x} is not a unit mod {n}")
    if n == 1:
        return 1
    k, y = 1, x % n
    while y != 1:
        y = y * x % n
        k += 1
    return k


def base_q_vector(value: int, q: int, length: int) -> ExponentVector:
    out = []
    for _ in range(length):
        value, r = divmod(value, q)
        out.append(r)
    if value:
        raise DomainError("value does not fit in the requested number of digits")
    return tuple(out)


def in_span(vec: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    return span_dim(list(basis) + [vec]) == span_dim(basis)


def is_algebraic_lattice(a: int, b: int, d: int, q: int) -> bool:
    """Write a/b = 1 - a'/b, expand a'/b over q^(d*ell0) - 1, test membership in span(delta)."""
    ell0 = multiplicative_order(q**d % b if b > 1 else 1, b)
    a_prime = (b - a) % b
    b_prime = (q ** (d * ell0) - 1) // b
    vec = base_q_vector(a_prime * b_prime, q, d * ell0)
    return in_span(vec, delta_vectors(d, ell0))


def is_algebraic(a: int, b: int, d: int, q: int) -> bool:
    """Whether Gamma_{ari,v}(a/b) is algebraic for deg v = d: b | q^d - 1.

    Cross-checked against the lattice membership route.
    """
    if b == 0:
        raise DomainError("zero denominator")
    if b < 0:
        a, b = -a, -b
    g = math.gcd(a, b)
    a, b = a // g, b // g
    p = _prime_of(q)
    if b % p == 0:
        raise NotPAdicError(f"{a}/{b} is not a {p}-adic integer")
    divisor = (q**d - 1) % b == 0
    lattice = is_algebraic_lattice(a, b, d, q)
    if divisor != lattice:
        raise InconsistencyError(f"divisor route {divisor} != lattice route {lattice} for {a}/{b}")
    return divisor


def gk_orbits(n: int, d: int, q: int) -> list[tuple[int, ...]]:
    """Orbits of a/n mod 1 (numerators a) under multiplication by q^d."""
    p = _prime_of(q)
    if n < 1 or n % p == 0:
        raise NotPAdicError(f"n = {n} must be positive and prime to {p}")
    step = q**d % n
    seen: set[int] = set()
    orbits = []
    for a in range(n):
        if a in seen:
            continue
        orb = []
        x = a
        while x not in orb:
            orb.append(x)
            x = x * step % n
        seen.update(orb)
        orbits.append(tuple(orb))
    return orbits


def gk_kernel_generators(n: int, d: int, q: int) -> list[tuple[tuple[int, ...], ExponentVector]]:
    """For each residue a/n, its full orbit under q^d together with its exponent
    vector: the sum of the base-q digit vectors of <q^(id) a / n> over the
    q^(rd) - 1 basis, r the order of q^d mod n.

    Orbits are listed once each (their smallest numerator first).
    """
    r = multiplicative_order(q**d % n, n) if n > 1 else 1
    length = r * d
    n_prime = (q**length - 1) // n
    out = []
    for orb in gk_orbits(n, d, q):
        vec = [0] * length
        for a in orb:
            for i, c in enumerate(base_q_vector(a * n_prime, q, length)):
                vec[i] += c
        out.append((orb, tuple(vec)))
    return out
