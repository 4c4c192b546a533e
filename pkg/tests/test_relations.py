import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from carlitz_periods.errors import DomainError, NotPAdicError
from carlitz_periods.relations import (
    base_q_vector,
    delta_vectors,
    gk_kernel_generators,
    gk_orbits,
    is_algebraic,
    is_algebraic_lattice,
    lambda_vectors,
    multiplicative_order,
    span_dim,
    trdeg_gamma,
)


def test_delta_and_lambda_vectors():
    assert delta_vectors(2, 2) == [(1, 0, 1, 0), (0, 1, 0, 1)]
    assert lambda_vectors(3, 6) == [(1, 0, 0, 1, 0, 0), (0, 1, 0, 0, 1, 0), (0, 0, 1, 0, 0, 1)]
    with pytest.raises(DomainError):
        lambda_vectors(4, 6)


def test_trdeg_grid():
    for d in range(1, 13):
        for ell in range(1, 13):
            assert trdeg_gamma(d, ell) == ell - math.gcd(ell, d)


def test_trdeg_examples():
    assert trdeg_gamma(2, 4) == 2
    assert trdeg_gamma(1, 5) == 4
    assert trdeg_gamma(3, 3) == 0


matrices = st.integers(1, 6).flatmap(
    lambda w: st.lists(st.lists(st.integers(-5, 5), min_size=w, max_size=w), min_size=1, max_size=6)
)


@given(matrices, st.randoms(use_true_random=False))
def test_span_dim_invariance(rows, rnd):
    base = span_dim(rows)
    assert base <= min(len(rows), len(rows[0]))
    shuffled = rows[:]
    rnd.shuffle(shuffled)
    assert span_dim(shuffled) == base
    scaled = [[3 * x for x in r] for r in rows]
    assert span_dim(scaled) == base
    combo = [sum(r[i] * (k + 1) for k, r in enumerate(rows)) for i in range(len(rows[0]))]
    assert span_dim(rows + [combo]) == base
    transposed = [list(col) for col in zip(*rows)]
    assert span_dim(transposed) == base


def test_span_dim_ragged():
    with pytest.raises(DomainError):
        span_dim([[1, 0], [1]])
    assert span_dim([]) == 0


def test_is_algebraic_two_routes():
    for q in (2, 3, 4, 5):
        p = next(k for k in range(2, q + 1) if q % k == 0)
        for d in (1, 2, 3):
            for b in range(1, 51):
                if b % p == 0:
                    continue
                for a in range(-b, b + 1):
                    if math.gcd(a, b) != 1:
                        continue
                    assert is_algebraic(a, b, d, q) == ((q**d - 1) % b == 0)


def test_is_algebraic_examples():
    assert is_algebraic(1, 3, 2, 2) is True
    assert is_algebraic(1, 5, 2, 2) is False
    assert is_algebraic_lattice(1, 5, 4, 2) is True
    with pytest.raises(NotPAdicError):
        is_algebraic(1, 4, 1, 2)


def test_multiplicative_order_and_digits():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(4, 5) == 2
    assert base_q_vector(11, 3, 4) == (2, 0, 1, 0)
    with pytest.raises(DomainError):
        base_q_vector(27, 3, 3)
    with pytest.raises(DomainError):
        multiplicative_order(2, 4)


def test_gk_orbits_partition():
    for q, d, n in [(2, 1, 7), (3, 2, 8), (2, 2, 15), (4, 1, 9)]:
        orbits = gk_orbits(n, d, q)
        flat = sorted(a for orb in orbits for a in orb)
        assert flat == list(range(n))
        for orb in orbits:
            assert all(orb[(i + 1) % len(orb)] == orb[i] * q**d % n for i in range(len(orb)))


def test_gk_kernel_generators_example():
    assert gk_kernel_generators(3, 1, 2) == [((0,), (0, 0)), ((1, 2), (1, 1))]


def test_gk_kernel_vectors_lie_in_delta_span():
    for q, d, n in [(2, 1, 7), (3, 1, 8), (2, 2, 5), (3, 2, 10)]:
        for orb, vec in gk_kernel_generators(n, d, q):
            length = len(vec)
            assert length % d == 0
            basis = delta_vectors(d, length // d)
            assert span_dim(basis + [list(vec)]) == span_dim(basis)


def test_gk_orbits_reject_bad_n():
    with pytest.raises(NotPAdicError):
        gk_orbits(4, 1, 2)
