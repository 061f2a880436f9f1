"""Exact arithmetic kernels: Laurent polynomials, truncated bivariate series,
cyclotomic integers and residue reduction.

Everything here is immutable after construction and uses Python's native
arbitrary-precision integers; there is no floating point anywhere.
"""

from .series import (
    BivariateSeries,
    LaurentPoly,
    gen_binom,
    laurent_to_series,
    one_plus_x_power,
    one_plus_y_power,
    series_mul,
    substitute_color,
)
from .cyclotomic import (
    CycloSeries,
    CyclotomicInt,
    check_zeta_ideal,
    eval_root,
    is_prime_power,
    mod_r_reduce,
    offset_basis_to_zeta_power,
    zeta_minus_one_valuation,
    zeta_power_to_offset_basis,
)

__all__ = [
    "BivariateSeries",
    "CycloSeries",
    "CyclotomicInt",
    "LaurentPoly",
    "check_zeta_ideal",
    "eval_root",
    "gen_binom",
    "is_prime_power",
    "laurent_to_series",
    "mod_r_reduce",
    "offset_basis_to_zeta_power",
    "one_plus_x_power",
    "one_plus_y_power",
    "series_mul",
    "substitute_color",
    "zeta_minus_one_valuation",
    "zeta_power_to_offset_basis",
]
