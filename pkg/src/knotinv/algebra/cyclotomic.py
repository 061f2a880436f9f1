"""Exact arithmetic in Z[zeta] for zeta a primitive root of unity of prime
power order, plus the (zeta - 1)-basis bookkeeping used by the residue
pipelines.

Elements are stored in the power basis 1, zeta, ..., zeta^{phi(m)-1} and
reduced with the explicit cyclotomic polynomial

    Phi_{p^l}(X) = sum_{i<p} X^{i * p^(l-1)}.

Conductors of the form 2 * p^l with p odd are rewritten into conductor p^l
through zeta_{2m} = -zeta_m^{(m+1)/2}, so internally every element carries a
prime power conductor.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..errors import DivisionFailed, NotAUnit, NotPrimePower
from .series import BivariateSeries, gen_binom

__all__ = [
    "CyclotomicInt",
    "CycloSeries",
    "check_zeta_ideal",
    "eval_root",
    "is_prime_power",
    "mod_r_reduce",
    "offset_basis_to_zeta_power",
    "zeta_minus_one_valuation",
    "zeta_power_to_offset_basis",
]


@lru_cache(maxsize=None)
def is_prime_power(r: int):
    """Return (p, l) with r = p^l, or None when r is not a prime power."""
    if r < 2:
        return None
    for p in range(2, r + 1):
        if p * p > r:
            return (r, 1)
        if r % p == 0:
            l = 0
            n = r
            while n % p == 0:
                n //= p
                l += 1
            return (p, l) if n == 1 else None
    return None


def euler_phi_prime_power(p: int, l: int) -> int:
    return (p - 1) * p ** (l - 1)


@lru_cache(maxsize=None)
def _reduction_rows(conductor: int) -> tuple:
    """Power-basis coordinates of zeta^k for k in [0, conductor)."""
    pl = is_prime_power(conductor)
    if pl is None:
        raise NotPrimePower(f"conductor {conductor} is not a prime power")
    p, l = pl
    phi = euler_phi_prime_power(p, l)
    step = p ** (l - 1)
    # zeta^phi = -(1 + zeta^step + zeta^(2 step) + ... + zeta^((p-2) step))
    rows = []
    for k in range(phi):
        rows.append(tuple(1 if i == k else 0 for i in range(phi)))
    for k in range(phi, conductor):
        # zeta^k = zeta^(k-phi) * zeta^phi
        prev = [0] * phi
        for i in range(p - 1):
            e = k - phi + i * step
            e_mod = e % conductor
            if e_mod < phi:
                prev[e_mod] -= 1
            else:
                below = rows[e_mod]
                for j in range(phi):
                    prev[j] -= below[j]
        rows.append(tuple(prev))
    return tuple(rows)


class CyclotomicInt:
    """An element of Z[zeta_m] for m a prime power, in the power basis."""

    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords):
        pl = is_prime_power(conductor)
        if pl is None:
            raise NotPrimePower(f"conductor {conductor} is not a prime power")
        p, l = pl
        phi = euler_phi_prime_power(p, l)
        coords = tuple(int(c) for c in coords)
        if len(coords) != phi:
            raise ValueError(f"need exactly {phi} coordinates for conductor {conductor}")
        self.conductor = conductor
        self.coords = coords

    # -- constructors -------------------------------------------------------

    @classmethod
    def _unsafe(cls, conductor: int, coords: tuple) -> "CyclotomicInt":
        # Internal fast path: caller guarantees a valid conductor and a
        # coordinate tuple of the right length.
        obj = object.__new__(cls)
        obj.conductor = conductor
        obj.coords = coords
        return obj

    @classmethod
    def zero(cls, conductor: int) -> "CyclotomicInt":
        phi = phi_of(conductor)
        return cls(conductor, (0,) * phi)

    @classmethod
    def from_int(cls, conductor: int, value: int) -> "CyclotomicInt":
        phi = phi_of(conductor)
        return cls(conductor, (value,) + (0,) * (phi - 1))

    @classmethod
    def one(cls, conductor: int) -> "CyclotomicInt":
        return cls.from_int(conductor, 1)

    @classmethod
    def root_of_unity(cls, order: int, k: int = 1) -> "CyclotomicInt":
        """zeta_order^k as an element with a prime power conductor.

        Orders 2 * m with m an odd prime power are folded into conductor m via
        zeta_{2m} = -zeta_m^{(m+1)/2}.
        """
        if order == 1:
            return cls.one(2)  # Z[zeta_2] = Z
        if order == 2:
            return cls.from_int(2, (-1) ** (k % 2))
        if is_prime_power(order):
            return cls._zeta_power(order, k % order)
        if order % 2 == 0 and order % 4 != 0:
            m = order // 2
            if is_prime_power(m) and m % 2 == 1:
                # zeta_{2m} = -zeta_m^((m+1)/2), so zeta_{2m}^k picks up (-1)^k
                elem = cls._zeta_power(m, (k * ((m + 1) // 2)) % m)
                return -elem if k % 2 else elem
        raise NotPrimePower(f"order {order} is not a prime power or twice an odd prime power")

    @classmethod
    def _zeta_power(cls, conductor: int, k: int) -> "CyclotomicInt":
        rows = _reduction_rows(conductor)
        return cls(conductor, rows[k % conductor])

    # -- ring operations ------------------------------------------------------

    def _check(self, other: "CyclotomicInt") -> None:
        if self.conductor != other.conductor:
            raise ValueError("conductor mismatch")

    def __add__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._check(other)
        return CyclotomicInt._unsafe(
            self.conductor, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "CyclotomicInt") -> "CyclotomicInt":
        self._check(other)
        return CyclotomicInt._unsafe(
            self.conductor, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt._unsafe(self.conductor, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt._unsafe(
                self.conductor, tuple(a * other for a in self.coords)
            )
        self._check(other)
        phi = len(self.coords)
        conv = [0] * (2 * phi - 1)
        a, b = self.coords, other.coords
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        rows = _reduction_rows(self.conductor)
        out = conv[:phi]
        for k in range(phi, 2 * phi - 1):
            ck = conv[k]
            if ck:
                row = rows[k % self.conductor]
                for j in range(phi):
                    if row[j]:
                        out[j] += ck * row[j]
        return CyclotomicInt._unsafe(self.conductor, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CyclotomicInt":
        if n < 0:
            raise ValueError("negative powers not supported; invert explicitly")
        result = CyclotomicInt.one(self.conductor)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == CyclotomicInt.from_int(self.conductor, other)
        return (
            isinstance(other, CyclotomicInt)
            and self.conductor == other.conductor
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.conductor, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __repr__(self):
        return f"CyclotomicInt({self.conductor}, {list(self.coords)})"

    # -- division and units ---------------------------------------------------

    def divide_exact_int(self, d: int) -> "CyclotomicInt":
        out = []
        for c in self.coords:
            q, rem = divmod(c, d)
            if rem:
                raise DivisionFailed(f"coordinate {c} not divisible by {d}")
            out.append(q)
        return CyclotomicInt(self.conductor, tuple(out))

    def inverse(self) -> "CyclotomicInt":
        """Multiplicative inverse in Z[zeta]; raises NotAUnit if absent.

        Solves the phi x phi linear system for multiplication by self over Q
        and checks the solution is integral.
        """
        phi = len(self.coords)
        cols = []
        for j in range(phi):
            basis = CyclotomicInt._zeta_power(self.conductor, j)
            cols.append((self * basis).coords)
        # Matrix M with M[i][j] = coordinate i of self * zeta^j; solve M w = e0.
        mat = [[Fraction(cols[j][i]) for j in range(phi)] for i in range(phi)]
        rhs = [Fraction(1 if i == 0 else 0) for i in range(phi)]
        n = phi
        for col in range(n):
            piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
            if piv is None:
                raise NotAUnit("singular multiplication matrix")
            mat[col], mat[piv] = mat[piv], mat[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
            inv = mat[col][col]
            mat[col] = [v / inv for v in mat[col]]
            rhs[col] = rhs[col] / inv
            for r in range(n):
                if r != col and mat[r][col] != 0:
                    f = mat[r][col]
                    mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
                    rhs[r] = rhs[r] - f * rhs[col]
        if any(v.denominator != 1 for v in rhs):
            raise NotAUnit("inverse is not integral")
        candidate = CyclotomicInt(self.conductor, tuple(int(v) for v in rhs))
        if self * candidate != CyclotomicInt.one(self.conductor):
            raise NotAUnit("inverse verification failed")
        return candidate

    # -- wire format -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"conductor": self.conductor, "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "CyclotomicInt":
        return cls(int(data["conductor"]), [int(c) for c in data["coords"]])


def phi_of(conductor: int) -> int:
    pl = is_prime_power(conductor)
    if pl is None:
        raise NotPrimePower(f"conductor {conductor} is not a prime power")
    return euler_phi_prime_power(*pl)


@lru_cache(maxsize=None)
def zeta_minus_one(conductor: int) -> CyclotomicInt:
    return CyclotomicInt._zeta_power(conductor, 1) - CyclotomicInt.one(conductor)


@lru_cache(maxsize=None)
def _zeta_minus_one_powers(conductor: int, n: int) -> CyclotomicInt:
    acc = CyclotomicInt.one(conductor)
    step = zeta_minus_one(conductor)
    for _ in range(n):
        acc = acc * step
    return acc


def zeta_power_to_offset_basis(c: CyclotomicInt) -> tuple:
    """Rewrite an element in the basis 1, (zeta-1), ..., (zeta-1)^(phi-1).

    The change of basis is the unimodular binomial transform
    zeta^k = sum_n C(k, n) (zeta-1)^n, inverted here by back substitution.
    Round trips with offset_basis_to_zeta_power exactly.
    """
    phi = len(c.coords)
    # d_n = sum_k C(k, n) c_k directly, since (1 + (zeta-1))^k expands with
    # plain binomials and the transform is triangular with unit diagonal.
    return tuple(
        sum(gen_binom(k, n) * c.coords[k] for k in range(n, phi)) for n in range(phi)
    )


def offset_basis_to_zeta_power(conductor: int, offsets) -> CyclotomicInt:
    """Inverse of zeta_power_to_offset_basis."""
    phi = phi_of(conductor)
    offsets = tuple(int(v) for v in offsets)
    if len(offsets) != phi:
        raise ValueError(f"need exactly {phi} offset coordinates")
    coords = [0] * phi
    for n, d in enumerate(offsets):
        if d:
            # (zeta-1)^n = sum_k C(n, k) (-1)^(n-k) zeta^k; n < phi so no reduction.
            for k in range(n + 1):
                coords[k] += d * gen_binom(n, k) * (-1) ** (n - k)
    return CyclotomicInt(conductor, tuple(coords))


@lru_cache(maxsize=None)
def check_zeta_ideal(r: int) -> CyclotomicInt:
    """Witness that ((zeta_r - 1)^phi(r)) = (p) as ideals, for r = p^l.

    Computes u = (zeta_r - 1)^phi(r) / p by exact division and verifies u is a
    unit by exhibiting an inverse. Returns u. DivisionFailed or NotAUnit both
    falsify the ideal identity and abort the caller.
    """
    pl = is_prime_power(r)
    if pl is None:
        raise NotPrimePower(f"{r} is not a prime power")
    p, l = pl
    phi = euler_phi_prime_power(p, l)
    power = _zeta_minus_one_powers(r, phi)
    u = power.divide_exact_int(p)
    u.inverse()  # raises NotAUnit on failure
    return u


@lru_cache(maxsize=None)
def _unit_inverse(r: int) -> CyclotomicInt:
    return check_zeta_ideal(r).inverse()


def divides_zeta_minus_one_power(c: CyclotomicInt, e: int) -> bool:
    """True iff (zeta - 1)^e divides c in Z[zeta].

    Uses (zeta-1)^(-1) = u^(-1) (zeta-1)^(phi-1) / p, so dividing by
    (zeta-1)^e amounts to an integer divisibility check by p^e after
    multiplying with the unit witness inverse.
    """
    if e <= 0 or c.is_zero():
        return True
    r = c.conductor
    p, _l = is_prime_power(r)
    phi = phi_of(r)
    # (zeta-1)^(-e) = u^(-e) (zeta-1)^(e(phi-1)) / p^e with (zeta-1)^phi = p u.
    shifted = c * (_unit_inverse(r) ** e) * _zeta_minus_one_powers(r, (phi - 1) * e)
    mod = p ** e
    return all(v % mod == 0 for v in shifted.coords)


def zeta_minus_one_valuation(c: CyclotomicInt, cap: int) -> int:
    """Largest e <= cap with (zeta-1)^e | c; returns cap for the zero element."""
    if c.is_zero():
        return cap
    e = 0
    while e < cap and divides_zeta_minus_one_power(c, e + 1):
        e += 1
    return e


def mod_r_reduce(value, r: int, j: int = 1):
    """Reduce an integer or a CyclotomicInt coordinatewise into [0, r^j)."""
    if j < 1:
        raise ValueError("j must be >= 1")
    mod = r ** j
    if isinstance(value, int):
        return value % mod
    if isinstance(value, CyclotomicInt):
        return CyclotomicInt(value.conductor, tuple(v % mod for v in value.coords))
    raise TypeError("expected int or CyclotomicInt")


class CycloSeries:
    """A y-series with cyclotomic coefficients of bounded accuracy.

    Coefficient m is known modulo (zeta - 1)^{precision[m]}; arithmetic
    propagates the minimum precision of the operands.
    """

    __slots__ = ("conductor", "order", "coeffs", "precision")

    def __init__(self, conductor: int, order: int, coeffs, precision):
        coeffs = list(coeffs)
        precision = [int(e) for e in precision]
        if len(coeffs) != order + 1 or len(precision) != order + 1:
            raise ValueError("need order + 1 coefficients and precisions")
        if any(e < 0 for e in precision):
            raise ValueError("precision markers must be >= 0")
        self.conductor = conductor
        self.order = order
        self.coeffs = coeffs
        self.precision = precision

    def __sub__(self, other: "CycloSeries") -> "CycloSeries":
        if self.conductor != other.conductor:
            raise ValueError("conductor mismatch")
        order = min(self.order, other.order)
        return CycloSeries(
            self.conductor,
            order,
            [self.coeffs[m] - other.coeffs[m] for m in range(order + 1)],
            [min(self.precision[m], other.precision[m]) for m in range(order + 1)],
        )

    def __add__(self, other: "CycloSeries") -> "CycloSeries":
        if self.conductor != other.conductor:
            raise ValueError("conductor mismatch")
        order = min(self.order, other.order)
        return CycloSeries(
            self.conductor,
            order,
            [self.coeffs[m] + other.coeffs[m] for m in range(order + 1)],
            [min(self.precision[m], other.precision[m]) for m in range(order + 1)],
        )

    def __mul__(self, other: "CycloSeries") -> "CycloSeries":
        if self.conductor != other.conductor:
            raise ValueError("conductor mismatch")
        order = min(self.order, other.order)
        coeffs = [CyclotomicInt.zero(self.conductor) for _ in range(order + 1)]
        precision = [min(self.precision[0], other.precision[0])] * (order + 1)
        for m in range(order + 1):
            prec = None
            for k in range(m + 1):
                coeffs[m] = coeffs[m] + self.coeffs[k] * other.coeffs[m - k]
                p = min(self.precision[k], other.precision[m - k])
                prec = p if prec is None else min(prec, p)
            precision[m] = prec if prec is not None else 0
        return CycloSeries(self.conductor, order, coeffs, precision)

    def agrees_with(self, other: "CycloSeries") -> bool:
        """Equality within the joint precision window."""
        diff = self - other
        return all(
            divides_zeta_minus_one_power(diff.coeffs[m], diff.precision[m])
            for m in range(diff.order + 1)
        )

    def to_json_dict(self) -> dict:
        return {
            "conductor": self.conductor,
            "order": self.order,
            "coeffs": [c.to_json_dict() for c in self.coeffs],
            "precision": list(self.precision),
        }


def eval_root(s: BivariateSeries, r: int) -> CycloSeries:
    """Evaluate the x-variable at zeta_r - 1 (that is, q^2 at zeta_r).

    The y^m coefficient becomes sum_n c_{n,m} (zeta_r - 1)^n over the stored
    n <= D - m; terms beyond the truncation are unknown, so the coefficient
    carries the absolute precision marker e(m) = D - m + 1.
    """
    if is_prime_power(r) is None:
        raise NotPrimePower(f"{r} is not a prime power")
    order = s.order
    coeffs = [CyclotomicInt.zero(r) for _ in range(order + 1)]
    for (n, m), c in s.coeffs.items():
        coeffs[m] = coeffs[m] + c * _zeta_minus_one_powers(r, n)
    precision = [order - m + 1 for m in range(order + 1)]
    return CycloSeries(r, order, coeffs, precision)
