"""Shared places and brute-force oracles used across the test modules."""

from __future__ import annotations

import pytest

from carlitz_periods.algebra import FieldDesc, Polynomial, enumerate_monic, parse_polynomial, poly_gcd
from carlitz_periods.localfield import Place, make_place

# one place per (q, deg v) on the acceptance grid
GRID_PLACES = [(2, "x"), (2, "x^2+x+1"), (3, "x+1"), (3, "x^2+1")]


def place_of(p: int, v: str, e: int = 1) -> Place:
    return make_place(parse_polynomial(v, FieldDesc(p, e)))


def brute_D(i: int, field: FieldDesc) -> Polynomial:
    out = Polynomial.constant(field, 1)
    for f in enumerate_monic(field, i):
        out = out * f
    return out


def brute_D_coprime(i: int, v: Polynomial) -> Polynomial:
    out = Polynomial.constant(v.field, 1)
    for f in enumerate_monic(v.field, i):
        if poly_gcd(f, v).degree == 0:
            out = out * f
    return out


def trial_division_ord(a: Polynomial, v: Polynomial) -> int:
    n = 0
    while True:
        quo, rem = divmod(a, v)
        if not rem.is_zero():
            return n
        a, n = quo, n + 1


@pytest.fixture(params=GRID_PLACES, ids=lambda pv: f"q{pv[0]}-{pv[1]}")
def grid_place(request) -> Place:
    return place_of(*request.param)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
