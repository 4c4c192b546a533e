"""Acceptance criteria 1-10 on q in {2, 3}, deg v in {1, 2}, ell in 1..4, N = 128.

Each test prints one PASS/FAIL line; the lines are also repeated in the pytest
terminal summary.  Run ``python3 tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import math
import time
from functools import lru_cache

import pytest
from conftest import brute_D, brute_D_coprime, trial_division_ord

from carlitz_periods.gamma import carlitz_D, carlitz_D_v, carlitz_factorial, v_ord_factorial
from carlitz_periods.localfield import diff_valuation, embed
from carlitz_periods.relations import is_algebraic, trdeg_gamma
from carlitz_periods.verify import CATALOG, SuiteConfig, check, run_suite, suite_places

PREC = 128
SLACK = 8
CONFIG = SuiteConfig(fields=((2, 1), (3, 1)), degrees=(1, 2), ells=(1, 2, 3, 4), prec=PREC, slack=SLACK, z_samples=25)
BUDGET_SECONDS = 60.0

RESULTS: dict[int, tuple[bool, str]] = {}
ELAPSED = [0.0]


@pytest.fixture(autouse=True)
def _timed():
    start = time.perf_counter()
    yield
    ELAPSED[0] += time.perf_counter() - start


def record(k: int, ok: bool, detail: str) -> None:
    RESULTS[k] = (ok, detail)
    print(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@lru_cache(maxsize=1)
def suite():
    return run_suite(CONFIG)


def by_identity(*names):
    return [r for r in suite() if r.identity in names]


def summarize_reports(reports):
    bad = [r for r in reports if not r.passed]
    vals = [r.diff_valuation for r in reports if r.diff_valuation != "inf"]
    worst = min(vals) if vals else "inf"
    detail = f"{len(reports) - len(bad)}/{len(reports)} checks, worst diff_val {worst}"
    if bad:
        detail += f"; first failure: {bad[0].line()}"
    return not bad and bool(reports), detail


def test_criterion_01_factorial_oracles():
    count = 0
    ok = True
    for place in suite_places(CONFIG):
        for i in range(4):
            ok &= carlitz_D(i, place.base) == brute_D(i, place.base)
            expected = embed(brute_D_coprime(i, place.v), place, PREC)
            ok &= diff_valuation(carlitz_D_v(i, place, PREC), expected) == "inf"
            count += 2
    record(1, ok, f"{count} exact comparisons against enumeration, i <= 3")


def test_criterion_02_valuation_closed_form():
    count = 0
    mismatches = []
    for place in suite_places(CONFIG):
        for n in range(201):
            oracle = trial_division_ord(carlitz_factorial(n, place.base), place.v)
            if oracle != v_ord_factorial(n, place):
                mismatches.append((place.q, str(place.v), n))
            count += 1
    record(2, not mismatches, f"{count - len(mismatches)}/{count} values n <= 200 match trial division")


def test_criterion_03_gamma_at_zero():
    record(3, *summarize_reports(by_identity("gamma0")))


def test_criterion_04_functional_equations():
    names = ("FE_reflection", "FE_translation", "FE_multiplication", "monomial")
    record(4, *summarize_reports(by_identity(*names)))


def test_criterion_05_product_expansion():
    record(5, *summarize_reports(by_identity("product_expansion", "product_expansion_shifted")))


def test_criterion_06_gross_koblitz():
    record(6, *summarize_reports(by_identity("gross_koblitz_explicit", "gk_monomial")))


def test_criterion_07_frobenius_coefficients():
    record(7, *summarize_reports(by_identity("csf", "period_basis_change")))


def test_criterion_08_omega_identities():
    record(8, *summarize_reports(by_identity("omega_recurrence", "omega_split")))


def test_criterion_09_lattice_combinatorics():
    ok = True
    count = 0
    for d in range(1, 13):
        for ell in range(1, 13):
            ok &= trdeg_gamma(d, ell) == ell - math.gcd(ell, d)
            count += 1
    for q, p in ((2, 2), (3, 3)):
        for d in (1, 2):
            for b in range(1, 51):
                if b % p == 0:
                    continue
                for a in range(-b, b + 1):
                    if math.gcd(a, b) == 1:
                        ok &= is_algebraic(a, b, d, q) == ((q**d - 1) % b == 0)
                        count += 1
    record(9, ok, f"{count} exact two-route checks (trdeg d, ell <= 12; algebraicity b <= 50)")


def test_criterion_10_negative_control():
    # in characteristic 2 a sign flip changes nothing, so q = 2 uses a 1 + pi perturbation
    flipped = []
    for r in by_identity("csf"):
        params = {k: r.params[k] for k in ("ell", "s")}
        place = next(pl for pl in suite_places(CONFIG) if str(pl.v) == r.params["v"] and pl.q == r.params["q"])
        corrupt = "sign" if place.q % 2 else "unit"
        flipped.append((corrupt, check("csf", {"place": place, **params}, PREC, SLACK, corrupt=corrupt)))
    caught = [rep for _, rep in flipped if not rep.passed and rep.diff_valuation < 16]
    signs = sum(1 for c, _ in flipped if c == "sign")
    detail = f"{len(caught)}/{len(flipped)} corrupted csf checks rejected with diff_val < 16 ({signs} sign flips at q = 3)"
    record(10, len(caught) == len(flipped) and signs > 0, detail)


def test_runtime_budget():
    if set(RESULTS) != set(range(1, 11)):
        pytest.skip("budget is only meaningful when every criterion ran")
    elapsed = ELAPSED[0]
    print(f"acceptance runtime {elapsed:.1f}s (budget {BUDGET_SECONDS:.0f}s)")
    assert elapsed < BUDGET_SECONDS


def test_catalog_fully_exercised():
    seen = {r.identity for r in suite()}
    assert seen == set(CATALOG)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
