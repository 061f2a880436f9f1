"""Laurent polynomials and total-degree-truncated bivariate integer series.

The series ring is Z[[x, y]] cut off at a fixed total degree D, where the two
formal variables abbreviate

    x = q^2 - 1        (so q^{2k} = (1+x)^k, any k in Z)
    y = q^{2a} - 1     (so q^{2ka} = (1+y)^k, "a" the formal weight exponent)

Negative powers expand through the geometric series, which is why truncation
is part of the data: a series only ever knows its coefficients for n + m <= D.
"""

from __future__ import annotations

import json
import math
from functools import lru_cache

from ..errors import OddExponent

__all__ = [
    "LaurentPoly",
    "BivariateSeries",
    "gen_binom",
    "laurent_to_series",
    "one_plus_x_power",
    "one_plus_y_power",
    "series_mul",
    "substitute_color",
]


def gen_binom(k: int, m: int) -> int:
    """Binomial coefficient C(k, m) for any integer k and m >= 0.

    For k < 0 this is the coefficient of z^m in (1+z)^k, i.e.
    (-1)^m * C(-k+m-1, m).
    """
    if m < 0:
        return 0
    if k >= 0:
        return math.comb(k, m)
    return (-1) ** m * math.comb(-k + m - 1, m)


class LaurentPoly:
    """A Laurent polynomial with integer coefficients in a single tagged
    variable ('q' or 't').

    Zero coefficients are never stored.
    """

    __slots__ = ("variable", "terms")

    def __init__(self, variable: str, terms=None):
        if variable not in ("q", "t", "u"):
            raise ValueError(f"unsupported variable tag {variable!r}")
        self.variable = variable
        clean = {}
        if terms:
            for e, c in dict(terms).items():
                if c != 0:
                    clean[int(e)] = int(c)
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, variable: str) -> "LaurentPoly":
        return cls(variable, {})

    @classmethod
    def one(cls, variable: str) -> "LaurentPoly":
        return cls(variable, {0: 1})

    @classmethod
    def monomial(cls, variable: str, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls(variable, {exponent: coeff})

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.variable != other.variable:
            raise ValueError("variable tags differ")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.variable, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(self.variable, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.variable, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.variable, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.variable, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = LaurentPoly.one(self.variable)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.variable == other.variable
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variable, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries -----------------------------------------------------------

    def coeff(self, exponent: int) -> int:
        return self.terms.get(exponent, 0)

    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponent span")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponent span")
        return max(self.terms)

    def evaluate_at_one(self) -> int:
        return sum(self.terms.values())

    def invert_variable(self) -> "LaurentPoly":
        """Substitute the variable by its inverse."""
        return LaurentPoly(self.variable, {-e: c for e, c in self.terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by variable^k."""
        return LaurentPoly(self.variable, {e + k: c for e, c in self.terms.items()})

    def retag(self, variable: str) -> "LaurentPoly":
        return LaurentPoly(variable, self.terms)

    def rescale_exponents(self, factor: int) -> "LaurentPoly":
        """Substitute variable -> variable^factor (factor > 0), or for
        factor = 1/2 use halve_exponents."""
        if factor <= 0:
            raise ValueError("factor must be positive")
        return LaurentPoly(self.variable, {e * factor: c for e, c in self.terms.items()})

    def halve_exponents(self) -> "LaurentPoly":
        if any(e % 2 for e in self.terms):
            raise OddExponent("odd exponent; cannot halve")
        return LaurentPoly(self.variable, {e // 2: c for e, c in self.terms.items()})

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError when the division leaves a
        remainder. Both arguments may have negative exponents."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.variable)
        # Normalize to honest polynomials by shifting out minimal exponents.
        ns, nd = self.min_exp(), divisor.min_exp()
        num = {e - ns: c for e, c in self.terms.items()}
        den = {e - nd: c for e, c in divisor.terms.items()}
        dd = max(den)
        lead = den[dd]
        quot = {}
        while num:
            nn = max(num)
            if nn < dd:
                raise ValueError("inexact Laurent division (degree)")
            c, rem = divmod(num[nn], lead)
            if rem:
                raise ValueError("inexact Laurent division (leading coefficient)")
            quot[nn - dd] = c
            for e, dc in den.items():
                k = nn - dd + e
                v = num.get(k, 0) - c * dc
                if v:
                    num[k] = v
                else:
                    num.pop(k, None)
        return LaurentPoly(self.variable, {e + ns - nd: c for e, c in quot.items()})

    # -- presentation / wire format -----------------------------------------

    def __repr__(self):
        if not self.terms:
            return f"LaurentPoly({self.variable!r}, 0)"
        v = self.variable
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"{c}*{v}^{e}")
        return f"LaurentPoly({' + '.join(parts)})"

    def to_json_dict(self) -> dict:
        return {
            "variable": self.variable,
            "terms": [[e, str(self.terms[e])] for e in sorted(self.terms)],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LaurentPoly":
        return cls(data["variable"], {int(e): int(c) for e, c in data["terms"]})


class BivariateSeries:
    """Integer series in (x, y) truncated at a fixed total degree.

    Coefficients live in a map keyed by (n, m) with n + m <= order; zero
    coefficients are dropped. Arithmetic never reports anything beyond the
    truncation order.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.order = order
        clean = {}
        if coeffs:
            for (n, m), c in dict(coeffs).items():
                if c != 0 and n + m <= order:
                    if n < 0 or m < 0:
                        raise ValueError("series exponents must be nonnegative")
                    clean[(n, m)] = int(c)
        self.coeffs = clean

    @classmethod
    def zero(cls, order: int) -> "BivariateSeries":
        return cls(order, {})

    @classmethod
    def one(cls, order: int) -> "BivariateSeries":
        return cls(order, {(0, 0): 1})

    @classmethod
    def monomial(cls, order: int, n: int, m: int, coeff: int = 1) -> "BivariateSeries":
        return cls(order, {(n, m): coeff})

    def coeff(self, n: int, m: int) -> int:
        return self.coeffs.get((n, m), 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_order(self) -> int:
        """Total degree of the lowest surviving term; order+1 when zero."""
        if not self.coeffs:
            return self.order + 1
        return min(n + m for n, m in self.coeffs)

    def truncate(self, order: int) -> "BivariateSeries":
        return BivariateSeries(order, self.coeffs)

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return BivariateSeries(order, out)

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) - c
        return BivariateSeries(order, out)

    def __neg__(self) -> "BivariateSeries":
        return BivariateSeries(self.order, {k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return BivariateSeries(self.order, {k: c * other for k, c in self.coeffs.items()})
        order = min(self.order, other.order)
        out = {}
        for (n1, m1), c1 in self.coeffs.items():
            for (n2, m2), c2 in other.coeffs.items():
                n, m = n1 + n2, m1 + m2
                if n + m <= order:
                    k = (n, m)
                    out[k] = out.get(k, 0) + c1 * c2
        return BivariateSeries(order, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivariateSeries":
        if n < 0:
            raise ValueError("negative series power; use the explicit expansions")
        result = BivariateSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BivariateSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return f"BivariateSeries(D={self.order}, 0)"
        parts = []
        for (n, m) in sorted(self.coeffs):
            parts.append(f"{self.coeffs[(n, m)]}*x^{n}*y^{m}")
        return f"BivariateSeries(D={self.order}, {' + '.join(parts)})"

    # -- wire format --------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "D": self.order,
            "coeffs": [[n, m, str(self.coeffs[(n, m)])] for (n, m) in sorted(self.coeffs)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "BivariateSeries":
        return cls(int(data["D"]), {(int(n), int(m)): int(c) for n, m, c in data["coeffs"]})


def series_mul(a: BivariateSeries, b: BivariateSeries) -> BivariateSeries:
    """Product of two truncated series; the result is truncated at the
    smaller of the two orders."""
    return a * b


@lru_cache(maxsize=None)
def _binom_row(k: int, order: int) -> tuple:
    return tuple(gen_binom(k, m) for m in range(order + 1))


def one_plus_x_power(k: int, order: int) -> BivariateSeries:
    """(1+x)^k truncated, for any integer k."""
    row = _binom_row(k, order)
    return BivariateSeries(order, {(n, 0): row[n] for n in range(order + 1)})


def one_plus_y_power(k: int, order: int) -> BivariateSeries:
    """(1+y)^k truncated, for any integer k."""
    row = _binom_row(k, order)
    return BivariateSeries(order, {(0, m): row[m] for m in range(order + 1)})


def laurent_to_series(p: LaurentPoly, order: int) -> BivariateSeries:
    """Expand a Laurent polynomial into the truncated series ring.

    A 'q'-tagged polynomial must have even exponents only (q^{2k} = (1+x)^k);
    an odd exponent raises OddExponent since it would need a square root of
    1 + x. A 't'-tagged polynomial maps through t = 1 + y.
    """
    out = BivariateSeries.zero(order)
    if p.variable == "q":
        for e, c in p.terms.items():
            if e % 2:
                raise OddExponent(f"odd q-exponent {e} cannot be written in q^2 - 1")
            out = out + c * one_plus_x_power(e // 2, order)
    elif p.variable == "t":
        for e, c in p.terms.items():
            out = out + c * one_plus_y_power(e, order)
    else:
        raise ValueError("only 'q' or 't' tagged polynomials expand into the series ring")
    return out


def substitute_color(s: BivariateSeries, color: int) -> BivariateSeries:
    """Substitute y -> (1+x)^color - 1, collapsing the series to x-terms only.

    The substitution respects the truncation: y has order >= 1 both before
    and after, so total degrees never drop.
    """
    if color < 0:
        raise ValueError("color must be nonnegative")
    order = s.order
    base = one_plus_x_power(color, order) - BivariateSeries.one(order)
    # Powers of the substituted y, computed once each.
    pw = [BivariateSeries.one(order)]
    for _ in range(order):
        pw.append(pw[-1] * base)
    out = BivariateSeries.zero(order)
    for (n, m), c in s.coeffs.items():
        term = c * pw[m]
        out = out + BivariateSeries(
            order, {(n + nn, mm): cc for (nn, mm), cc in term.coeffs.items()}
        )
    return out
