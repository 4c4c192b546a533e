"""Exact v-adic arithmetic gamma values, Carlitz period products and identity checks."""

from .algebra import (
    FieldDesc,
    FieldElem,
    Polynomial,
    enumerate_monic,
    frobenius,
    is_irreducible,
    parse_polynomial,
)
from .config import Settings
from .gamma import carlitz_D, carlitz_D_v, carlitz_factorial, gamma_v, q_digits, v_ord_factorial
from .localfield import LaurentSeries, Place, diff_valuation, embed, make_place, series_pow
from .periods import (
    omega,
    period_index,
    period_matrix,
    rho_row_gamma,
    rho_row_period,
)
from .relations import (
    delta_vectors,
    gk_kernel_generators,
    is_algebraic,
    lambda_vectors,
    span_dim,
    trdeg_gamma,
)
from .verify import CheckReport, SuiteConfig, check, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
