"""Coefficient pipelines connecting the series invariant, the Alexander
expansion and the root-of-unity polynomial: the product-series table, the
unique root-of-unity basis table, residue digits, and the cross-pipeline
consistency checks.
"""

from __future__ import annotations

from .algebra.cyclotomic import (
    CyclotomicInt,
    divides_zeta_minus_one_power,
    is_prime_power,
    offset_basis_to_zeta_power,
    phi_of,
    zeta_minus_one_valuation,
    _zeta_minus_one_powers,
)
from .algebra.series import BivariateSeries
from .errors import CongruenceFailure, MismatchBeyondPrecision, NotPrimePower
from .knots import BraidWord
from .oracles import AdoPolynomial, ado, alexander, lambda_coeffs, lambda_tilde
from .tables import CoefficientTable
from .universal import b_table

__all__ = [
    "CoefficientTable",
    "c_table",
    "d_table",
    "check_unified_vs_ado",
    "cl_digits",
    "mod_r_congruence_check",
    "valuation_mod_r",
    "tilde_row",
]


def tilde_row(knot: BraidWord, r: int, count: int) -> tuple:
    """Rescaled Alexander expansion coefficients of a knot through index
    `count`, from the closed double-sum formula."""
    lambdas = lambda_coeffs(alexander(knot), count)
    return tuple(lambda_tilde(lambdas, r, j) for j in range(count + 1))


def c_table(b: CoefficientTable, tilde: tuple, order: int) -> CoefficientTable:
    """Product-series coefficients c_{n,m} = sum_k tilde_k * b_{n,m-k}.

    `b` is a series coefficient table truncated at `order`; `tilde` must
    cover indices 0..order.
    """
    if b.kind != "b":
        raise ValueError("expected a series coefficient table")
    if len(tilde) <= order:
        raise ValueError(f"need rescaled coefficients through index {order}")
    entries = {}
    for (n, m0), coeff in b.items():
        for k in range(0, order - n - m0 + 1):
            if tilde[k]:
                key = (n, m0 + k)
                entries[key] = entries.get(key, 0) + tilde[k] * coeff
    return CoefficientTable(kind="c", entries=entries, order=order, r=0)


def d_table(a: AdoPolynomial, count: int) -> CoefficientTable:
    """Unique expansion of the root-of-unity polynomial over the basis
    (zeta-1)^n, y^m with 0 <= n < phi(r), m <= count.

    Exact: negative powers of the squared weight variable expand through the
    geometric series and every y-coefficient of the input is an honest
    element of Z[zeta]; the reconstruction reproduces the input through y^count.
    """
    r = a.r
    if is_prime_power(r) is None:
        raise NotPrimePower(f"{r} is not a prime power")
    phi = phi_of(r)
    entries = {}
    for m in range(count + 1):
        coeff = a.y_coefficient(m)
        offsets = _offset_coords(coeff)
        for n, v in enumerate(offsets):
            if v:
                entries[(n, m)] = v
    return CoefficientTable(kind="d", entries=entries, order=count, r=r, phi=phi)


def _offset_coords(c: CyclotomicInt) -> tuple:
    from .algebra.cyclotomic import zeta_power_to_offset_basis

    return zeta_power_to_offset_basis(c)


def cl_digits(c: CoefficientTable, r: int, levels: int) -> CoefficientTable:
    """Residue digits: collapse sum_n c_{n,m} (zeta-1)^n into

        sum_{j<=levels} sum_{i<phi(r)} CL_{j,i,m} r^j (zeta-1)^i

    with digits in [0, r) for every level below `levels`; the top level
    carries the (signed) remainder. The decomposition is unique and round
    trips exactly against the collapsed input rows n < (levels+1)*phi(r).
    """
    if c.kind != "c":
        raise ValueError("expected a product-series table")
    if is_prime_power(r) is None:
        raise NotPrimePower(f"{r} is not a prime power")
    phi = phi_of(r)
    need = (levels + 1) * phi
    ms = sorted({m for (_n, m) in c.entries})
    entries = {}
    for m in ms:
        total = CyclotomicInt.zero(r)
        for n in range(need):
            v = c.value(n, m)
            if v:
                total = total + v * _zeta_minus_one_powers(r, n)
        offsets = list(_offset_coords(total))
        for j in range(levels):
            for i in range(phi):
                digit = offsets[i] % r
                if digit:
                    entries[(j, i, m)] = digit
                offsets[i] = (offsets[i] - digit) // r
        for i in range(phi):
            if offsets[i]:
                entries[(levels, i, m)] = offsets[i]
    return CoefficientTable(
        kind="cl", entries=entries, order=c.order, r=r, levels=levels, phi=phi
    )


def reconstruct_cl(table: CoefficientTable, m: int) -> CyclotomicInt:
    """sum_{j,i} CL_{j,i,m} r^j (zeta-1)^i for a fixed m."""
    r = table.r
    total = CyclotomicInt.zero(r)
    for (j, i, mm), v in table.items():
        if mm == m:
            total = total + (v * r ** j) * _zeta_minus_one_powers(r, i)
    return total


def check_unified_vs_ado(
    knot: BraidWord, r: int, order: int, count: int
) -> dict:
    """Verify that the root-of-unity polynomial equals the evaluation of
    (rescaled Alexander) * (series invariant) at x = zeta_r - 1, coefficient
    by coefficient in y^m for m <= count, modulo (zeta-1)^(order - m + 1).

    Returns a report with the per-m precision and margin; raises
    MismatchBeyondPrecision on failure, which falsifies the conventions.
    """
    if count > order:
        raise ValueError("count must not exceed the series order")
    if is_prime_power(r) is None:
        raise NotPrimePower(f"{r} is not a prime power")
    b = b_table(knot, order)
    tilde = tilde_row(knot, r, order)
    c = c_table(b, tilde, order)
    a = ado(knot, r)
    per_m = []
    for m in range(count + 1):
        e = order - m + 1
        rhs = CyclotomicInt.zero(r)
        for (n, mm), v in c.items():
            if mm == m:
                rhs = rhs + v * _zeta_minus_one_powers(r, n)
        lhs = a.y_coefficient(m)
        diff = lhs - rhs
        if not divides_zeta_minus_one_power(diff, e):
            raise MismatchBeyondPrecision(
                f"knot {knot.as_text()!r}, r={r}: y^{m} coefficients differ "
                f"beyond precision (zeta-1)^{e}"
            )
        cap = e + phi_of(r)
        margin = zeta_minus_one_valuation(diff, cap) - e
        per_m.append({"m": m, "precision": e, "margin": margin})
    return {
        "check": "factorization",
        "knot": knot.as_text(),
        "r": r,
        "status": "pass",
        "per_m": per_m,
    }


def mod_r_congruence_check(knot: BraidWord, r: int, order: int) -> dict:
    """Verify d_{n,m} = b_{n,m} mod r for every stored pair with n < phi(r),
    m < r and n + m <= order. Raises CongruenceFailure on violation."""
    if is_prime_power(r) is None:
        raise NotPrimePower(f"{r} is not a prime power")
    phi = phi_of(r)
    b = b_table(knot, order)
    count = min(r - 1, order)
    d = d_table(ado(knot, r), count)
    per_m = []
    for m in range(count + 1):
        for n in range(min(phi, order - m + 1)):
            if n + m > order:
                continue
            bv = b.value(n, m) % r
            dv = d.value(n, m) % r
            if bv != dv:
                raise CongruenceFailure(
                    f"knot {knot.as_text()!r}, r={r}: d[{n},{m}] = {d.value(n, m)} "
                    f"!= b[{n},{m}] = {b.value(n, m)} mod {r}"
                )
        per_m.append({"m": m, "precision": order - m + 1})
    return {
        "check": "congruence",
        "knot": knot.as_text(),
        "r": r,
        "status": "pass",
        "per_m": per_m,
    }


def valuation_mod_r(knot: BraidWord, r: int, order: int, count: int) -> int | None:
    """Least m <= count at which the series invariant evaluated at the root
    of unity and the root-of-unity polynomial differ modulo r, or None when
    they agree everywhere in range (the truncated stand-in for infinity).

    Sound only while the unknown series tail stays invisible modulo r, which
    requires count <= order - l*phi(r) + 1 for r = p^l.
    """
    pl = is_prime_power(r)
    if pl is None:
        raise NotPrimePower(f"{r} is not a prime power")
    _p, l = pl
    phi = phi_of(r)
    if count > order - l * phi + 1:
        raise ValueError(
            f"count {count} exceeds the sound window {order - l * phi + 1} "
            f"for r={r}, order={order}"
        )
    b = b_table(knot, order)
    a = ado(knot, r)
    for m in range(count + 1):
        series_side = CyclotomicInt.zero(r)
        for (n, mm), v in b.items():
            if mm == m:
                series_side = series_side + v * _zeta_minus_one_powers(r, n)
        diff = series_side - a.y_coefficient(m)
        # Tail terms beyond the truncation carry (zeta-1)^n with
        # n > order - m >= l*phi(r), which vanishes mod r, so the reduced
        # difference is fully determined.
        if any(v % r for v in _offset_coords(diff)):
            return m
    return None
