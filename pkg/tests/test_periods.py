import pytest
from conftest import GRID_PLACES, place_of

from carlitz_periods.errors import DomainError
from carlitz_periods.localfield import LaurentSeries, diff_valuation
from carlitz_periods.periods import (
    gamma_arguments,
    min_shift,
    omega,
    period_index,
    period_matrix,
    phi_entry,
    rho_row_frobenius,
    rho_row_gamma,
    rho_row_period,
    unit_factor,
)

N = 96
SLACK = 8

# q in {2, 3, 4}, deg v up to 3
OMEGA_PLACES = [
    (2, "x", 1),
    (2, "x^2+x+1", 1),
    (2, "x^3+x+1", 1),
    (3, "x+2", 1),
    (3, "x^2+1", 1),
    (3, "x^3+2x+1", 1),
    (2, "x+g", 2),
    (2, "x^2+x+g", 2),
]


def agree(a, b):
    dv = diff_valuation(a, b)
    return dv == "inf" or dv >= N - SLACK


def test_period_index_example():
    idx = period_index(4, 2, 1)
    assert (idx.n_s, idx.s_1, idx.s_0, idx.n_s_prime) == (1, 3, 3, 0)


@pytest.mark.parametrize("d", range(1, 6))
def test_period_index_rank_one(d):
    idx = period_index(1, d, 0)
    assert (idx.n_s, idx.s_0, idx.n_s_prime) == (d, 0, d)


def test_period_index_invariants():
    for ell in range(1, 9):
        for d in range(1, 9):
            for s in range(ell):
                idx = period_index(ell, d, s)
                assert 0 <= idx.s_1 < ell and 0 <= idx.s_0 < ell
                assert idx.n_s == min(n for n in range(d + 1) if s + n * ell >= d)
                assert (s + d - idx.s_0) % ell == 0
                assert idx.n_s_prime == min_shift(ell, d, idx.s_0)
                assert period_index(ell, d, idx.s_0).s_1 == s
                if s >= d:
                    assert idx.n_s == 0 and idx.s_1 == s - d


def test_period_index_out_of_range():
    with pytest.raises(DomainError):
        period_index(3, 1, 3)
    with pytest.raises(DomainError):
        period_index(0, 1, 0)


def test_unit_factor_at_zero_is_rejected():
    with pytest.raises(DomainError):
        unit_factor(0, place_of(2, "x"), N)


@pytest.mark.parametrize("p,v,e", OMEGA_PLACES)
def test_omega_recurrence_and_split(p, v, e):
    place = place_of(p, v, e)
    d = place.d
    for ell in range(1, 5):
        for s in range(1, ell + 1):
            om = omega(ell, s, place, N)
            assert om.is_one_unit()
            assert agree(om, unit_factor(s, place, N) * omega(ell, s + ell, place, N))
            split = LaurentSeries.one(place, N)
            for j in range(d):
                split = split * omega(d * ell, j * ell + s, place, N)
            assert agree(om, split)


@pytest.mark.parametrize("p,v", GRID_PLACES)
def test_period_matrix_entries(p, v):
    place = place_of(p, v)
    for ell in range(1, 5):
        pm = period_matrix(ell, place, N)
        assert all(x.is_one_unit() for x in pm.diag + pm.omega)
        for s in range(ell):
            head = LaurentSeries.one(place, N)
            for n in range(min_shift(ell, place.d, s)):
                if s + n * ell > 0:
                    head = head * unit_factor(s + n * ell, place, N)
            if s > 0:
                assert agree(pm.diag[s], pm.omega[s - 1] / head)
            if s >= place.d:
                assert agree(pm.diag[s], omega(ell, s, place, N))


def test_rank_one_entry():
    place = place_of(3, "x^2+1")
    direct = LaurentSeries.one(place, N)
    for n in range(place.d, 6):
        direct = direct * unit_factor(n, place, N)
    assert agree(phi_entry(1, 0, place, N), direct)


def test_gamma_arguments():
    from fractions import Fraction

    top, bottom = gamma_arguments(2, 3, 1, 1)
    assert top == 1 - Fraction(4, 7) and bottom == 1 - Fraction(2, 7)


@pytest.mark.parametrize("p,v", GRID_PLACES)
def test_frobenius_coefficient_three_routes(p, v):
    place = place_of(p, v)
    for ell in range(1, 5):
        for s in range(ell):
            a = rho_row_gamma(ell, s, place, N)
            b = rho_row_period(ell, s, place, N)
            c = rho_row_frobenius(ell, s, place, N)
            assert agree(a, b), (ell, s)
            assert agree(b, c), (ell, s)


@pytest.mark.parametrize("p,v", GRID_PLACES)
def test_frobenius_coefficient_valuations(p, v):
    place = place_of(p, v)
    for ell in range(1, 5):
        assert rho_row_period(ell, 0, place, N).valuation == 1
        for s in range(1, ell):
            assert rho_row_period(ell, s, place, N).valuation == 0
