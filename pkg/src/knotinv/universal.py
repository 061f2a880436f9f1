"""Degree-truncated state sum for the two-variable series invariant.

The infinite-dimensional weight module has basis v_0, v_1, ... and carries the
action (written with {a+k} = q^a q^k - q^-a q^-k, {a; n} = prod_{i<n} {a-i},
and balanced binomials [m k] = {m}!/({k}!{m-k}!)):

    E v_0 = 0,  E v_{i+1} = v_i,  K v_i = q^(a-2i) v_i,
    F-divided-power: F(n) v_i = [n+i i] {a-i; n} v_{n+i}.

Event weights, with every lane carrying a basis index (frozen conventions;
the sign conventions are pinned downstream by the skein and factorization
cross-checks):

  cap  orient +1  creates (down, up), equal indices, weight 1
  cap  orient -1  creates (up, down), index j, weight q^-(a-2j)
  cup  orient +1  joins (down, up), indices must agree (= i), weight q^(a-2i)
  cup  orient -1  joins (up, down), indices must agree, weight 1
  negative crossing on in-indices (i, j): out (j+n, i-n) for 0 <= n <= i,
      weight q^(n(n-1)/2) [n+j j] {a-j; n} q^(2(i-n)(j+n)) q^(-a(i+j))
  positive crossing: out (j-n, i+n) for 0 <= n <= j,
      weight (-1)^n q^(-n(n-1)/2) [n+i i] {a-i; n} q^(-2ij) q^(a(i+j))

The assignment of the two braidings to the crossing signs is frozen so that
positive braid words reproduce the standard tables (the closure of the cube
of a positive generator has its colored invariant supported in positive
powers). Each crossing additionally bumps a formal counter of q^(a^2/2)
units by minus its sign; the counter must net to zero, which is exactly the
writhe-0 condition.

Weights are elements of Z[q^{\pm1}, q^{\pm a}] expanded on the fly into the
truncated series ring in x = q^2-1, y = q^{2a}-1, split into four parity
components q^eps * q^(a*delta) * (series); only finitely many states survive
below a fixed truncation order because the level-n crossing summand has
series order >= n, which also caps every index by the order.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra.series import (
    BivariateSeries,
    LaurentPoly,
    one_plus_x_power,
    one_plus_y_power,
)
from .errors import NonzeroAlphaSquareCounter, OddAlphaExponent, OddExponent
from .knots import BraidWord, LongKnotDiagram, closure_to_long, normalize_writhe
from .tables import CoefficientTable

__all__ = [
    "crossing_weights",
    "compute_f_infinity",
    "b_table",
    "run_state_sum",
    "balanced_qbinom",
    "brace_int",
    "UniversalWeights",
]


# -- shared exact q-combinatorics -------------------------------------------


@lru_cache(maxsize=None)
def brace_int(k: int) -> LaurentPoly:
    """{k} = q^k - q^-k as a Laurent polynomial."""
    if k == 0:
        return LaurentPoly.zero("q")
    return LaurentPoly("q", {k: 1, -k: -1})


@lru_cache(maxsize=None)
def brace_factorial(n: int) -> LaurentPoly:
    """{n}! = {n}{n-1}...{1}."""
    if n == 0:
        return LaurentPoly.one("q")
    return brace_factorial(n - 1) * brace_int(n)


@lru_cache(maxsize=None)
def balanced_qbinom(m: int, k: int) -> LaurentPoly:
    """Balanced q-binomial [m k] = {m}!/({k}!{m-k}!), an integer Laurent
    polynomial, computed by exact division."""
    if k < 0 or k > m:
        return LaurentPoly.zero("q")
    num = brace_factorial(m)
    den = brace_factorial(k) * brace_factorial(m - k)
    return num.exact_div(den)


# -- the truncated weight ring ------------------------------------------------
#
# A weight is a dict mapping (eps_q, eps_a) in {0,1}^2 to a BivariateSeries,
# meaning sum over components of q^eps_q * q^(a eps_a) * series(x, y).
# Zero components are dropped; {} is the zero weight.


@lru_cache(maxsize=None)
def _x_shift(order: int) -> BivariateSeries:
    return one_plus_x_power(1, order)


@lru_cache(maxsize=None)
def _y_shift(order: int) -> BivariateSeries:
    return one_plus_y_power(1, order)


def _w_add(w1: dict, w2: dict) -> dict:
    out = dict(w1)
    for key, s in w2.items():
        if key in out:
            tot = out[key] + s
            if tot.is_zero():
                del out[key]
            else:
                out[key] = tot
        else:
            out[key] = s
    return out


def _w_mul(w1: dict, w2: dict, order: int) -> dict:
    out = {}
    for (e1, a1), s1 in w1.items():
        for (e2, a2), s2 in w2.items():
            s = s1 * s2
            if e1 and e2:
                s = s * _x_shift(order)
            if a1 and a2:
                s = s * _y_shift(order)
            if s.is_zero():
                continue
            key = (e1 ^ e2, a1 ^ a2)
            if key in out:
                tot = out[key] + s
                if tot.is_zero():
                    del out[key]
                else:
                    out[key] = tot
            else:
                out[key] = s
    return out


@lru_cache(maxsize=None)
def _q_power_w(k: int, order: int) -> tuple:
    eps = k & 1
    series = one_plus_x_power((k - eps) // 2, order)
    return ((eps, 0), series)


@lru_cache(maxsize=None)
def _alpha_power_w(k: int, order: int) -> tuple:
    eps = k & 1
    series = one_plus_y_power((k - eps) // 2, order)
    return ((0, eps), series)


def _monomial_w(qexp: int, aexp: int, order: int) -> dict:
    (kq, sq) = _q_power_w(qexp, order)
    (ka, sa) = _alpha_power_w(aexp, order)
    return {(kq[0], ka[1]): sq * sa}


@lru_cache(maxsize=None)
def _brace_alpha_w(k: int, order: int) -> tuple:
    """{a+k} = q^a q^k - q^-a q^-k as a weight (frozen as tuple of items)."""
    pos = _monomial_w(k, 1, order)
    neg = _monomial_w(-k, -1, order)
    w = _w_add(pos, {key: -s for key, s in neg.items()})
    return tuple(sorted(w.items(), key=lambda kv: kv[0]))


@lru_cache(maxsize=None)
def _laurent_to_w(p: LaurentPoly, order: int) -> tuple:
    w = {}
    for e, c in p.terms.items():
        (key, s) = _q_power_w(e, order)
        w = _w_add(w, {key: c * s})
    return tuple(sorted(w.items(), key=lambda kv: kv[0]))


@lru_cache(maxsize=None)
def _theta_factor(n: int, j: int, sign: int, order: int) -> dict:
    """Level-n quasi-triangular factor for F-side in-index j.

    sign +1: q^(n(n-1)/2) [n+j j] {a-j; n}
    sign -1: (-1)^n q^(-n(n-1)/2) [n+j j] {a-j; n}
    """
    w = dict(_laurent_to_w(balanced_qbinom(n + j, j), order))
    for i in range(n):
        w = _w_mul(w, dict(_brace_alpha_w(-j - i, order)), order)
    half = n * (n - 1) // 2
    scale = _monomial_w(half if sign > 0 else -half, 0, order)
    if sign < 0 and n & 1:
        scale = {key: -s for key, s in scale.items()}
    return _w_mul(w, scale, order)


class UniversalWeights:
    """Weight system for the truncated two-variable state sum."""

    def __init__(self, order: int):
        self.order = order
        self.index_cap = order
        self._cross_cache = {}

    def one(self) -> dict:
        return {(0, 0): BivariateSeries.one(self.order)}

    def zero(self) -> dict:
        return {}

    @staticmethod
    def is_zero(w: dict) -> bool:
        return not w

    def add(self, w1, w2):
        return _w_add(w1, w2)

    def mul(self, w1, w2):
        return _w_mul(w1, w2, self.order)

    def cap_weight(self, j: int, orient: int) -> dict:
        if orient == 1:
            return self.one()
        return _monomial_w(2 * j, -1, self.order)

    def cup_weight(self, i: int, orient: int) -> dict:
        if orient == 1:
            return _monomial_w(-2 * i, 1, self.order)
        return self.one()

    def loop_weight(self, orient: int):
        # The pivot trace diverges on the infinite module; single-arc long
        # knot diagrams never produce detached circles.
        raise ValueError("detached circle in a diagram fed to the series sweep")

    def crossing_terms(self, a: int, b: int, sign: int):
        key = (a, b, sign)
        cached = self._cross_cache.get(key)
        if cached is None:
            cached = self._build_crossing(a, b, sign)
            self._cross_cache[key] = cached
        return cached

    def _build_crossing(self, a: int, b: int, sign: int):
        order = self.order
        terms = []
        if sign < 0:
            # out (b+n, a-n); Cartan factor on the out indices.
            for n in range(0, min(a, order) + 1):
                if b + n > self.index_cap:
                    break
                theta = _theta_factor(n, b, +1, order)
                if not theta:
                    continue
                cartan = _monomial_w(2 * (a - n) * (b + n), -(a + b), order)
                w = _w_mul(theta, cartan, order)
                if w:
                    terms.append((b + n, a - n, w))
        else:
            # positive letters; out (b-n, a+n), Cartan factor on the in indices.
            for n in range(0, min(b, order) + 1):
                if a + n > self.index_cap:
                    break
                theta = _theta_factor(n, a, -1, order)
                if not theta:
                    continue
                cartan = _monomial_w(-2 * a * b, a + b, order)
                w = _w_mul(theta, cartan, order)
                if w:
                    terms.append((b - n, a + n, w))
        return tuple(terms)


def crossing_weights(i: int, j: int, sign: int, order: int):
    """Crossing transition table: list of (out_left, out_right, weight).

    Exposed for the inverse-composition property tests; `weight` is the
    four-component parity dict used internally.
    """
    if i < 0 or j < 0:
        raise ValueError("indices must be nonnegative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return list(UniversalWeights(order).crossing_terms(i, j, sign))


# -- the generic sweep --------------------------------------------------------


def _substituted(key: tuple, sym: int, value: int) -> tuple:
    return tuple(value if x == sym else x for x in key)


def run_state_sum(diagram: LongKnotDiagram, system) -> dict:
    """Sweep the event list top to bottom, summing over index assignments.

    Lanes carry either a concrete index or a shared placeholder created at a
    cap; placeholders are enumerated lazily the first time a crossing or a
    weighted cup needs their value. Returns the weight of the final state on
    the open strand (index 0).
    """
    states = {(0,): system.one()}
    cap = system.index_cap
    placeholder = 0

    for kind, lane, arg in diagram.events:
        new_states: dict = {}

        def emit(key, w):
            if system.is_zero(w):
                return
            if key in new_states:
                tot = system.add(new_states[key], w)
                if system.is_zero(tot):
                    del new_states[key]
                else:
                    new_states[key] = tot
            else:
                new_states[key] = w

        if kind == "cap":
            placeholder -= 1
            sym = placeholder
            if arg == 1:
                for key, w in states.items():
                    emit(key[:lane] + (sym, sym) + key[lane:], w)
            else:
                for key, w in states.items():
                    for j in range(cap + 1):
                        emit(
                            key[:lane] + (j, j) + key[lane:],
                            system.mul(w, system.cap_weight(j, -1)),
                        )
        elif kind == "cross":
            for key, w in states.items():
                stack = [(key, w)]
                # Resolve placeholders feeding this crossing.
                for pos in (lane, lane + 1):
                    nxt = []
                    for k2, w2 in stack:
                        v = k2[pos]
                        if v < 0:
                            for j in range(cap + 1):
                                nxt.append((_substituted(k2, v, j), w2))
                        else:
                            nxt.append((k2, w2))
                    stack = nxt
                for k2, w2 in stack:
                    a, b = k2[lane], k2[lane + 1]
                    for out_l, out_r, cw in system.crossing_terms(a, b, arg):
                        emit(
                            k2[:lane] + (out_l, out_r) + k2[lane + 2 :],
                            system.mul(w2, cw),
                        )
        elif kind == "cup":
            for key, w in states.items():
                left, right = key[lane], key[lane + 1]
                if left < 0 and right < 0:
                    if left == right:
                        # A closed circle disjoint from everything else; its
                        # value is the full pivot trace over the module.
                        lw = system.loop_weight(arg)
                        emit(key[:lane] + key[lane + 2 :], system.mul(w, lw))
                        continue
                    # Unify the two placeholders, then enumerate if weighted.
                    base = _substituted(key, left, right)
                    if arg == -1:
                        emit(base[:lane] + base[lane + 2 :], w)
                    else:
                        for j in range(cap + 1):
                            k2 = _substituted(base, right, j)
                            emit(
                                k2[:lane] + k2[lane + 2 :],
                                system.mul(w, system.cup_weight(j, 1)),
                            )
                    continue
                if left < 0 or right < 0:
                    sym, val = (left, right) if left < 0 else (right, left)
                    key = _substituted(key, sym, val)
                    left = right = val
                if left != right:
                    continue
                emit(
                    key[:lane] + key[lane + 2 :],
                    system.mul(w, system.cup_weight(left, arg)),
                )
        states = new_states

    result = system.zero()
    for key, w in states.items():
        if key == (0,):
            result = system.add(result, w)
        elif not system.is_zero(w):
            raise RuntimeError(
                f"state sum leaked weight onto final index {key}; "
                "weight grading violated"
            )
    return result


# -- public entry points -------------------------------------------------------


def compute_f_infinity(diagram: LongKnotDiagram, order: int) -> BivariateSeries:
    """Evaluate the writhe-0 long knot diagram to a truncated series in
    (x, y) = (q^2 - 1, q^{2a} - 1).

    Raises NonzeroAlphaSquareCounter when the diagram is not writhe
    normalized, OddExponent / OddAlphaExponent when an odd power of q or q^a
    survives in the total (either falsifies the conventions).
    """
    if diagram.writhe != 0:
        raise NonzeroAlphaSquareCounter(
            f"diagram has writhe {diagram.writhe}; normalize first"
        )
    w = run_state_sum(diagram, UniversalWeights(order))
    odd_q = w.get((1, 0))
    if odd_q is not None and not odd_q.is_zero():
        raise OddExponent("odd q-power survived the state sum")
    for key in ((0, 1), (1, 1)):
        comp = w.get(key)
        if comp is not None and not comp.is_zero():
            raise OddAlphaExponent("odd weight-variable power survived the state sum")
    return w.get((0, 0), BivariateSeries.zero(order))


@lru_cache(maxsize=4096)
def b_table(knot: BraidWord, order: int) -> CoefficientTable:
    """Coefficient table of the series invariant for a braid closure.

    Composes the long-knot opening, writhe normalization and the state sum;
    entry (n, m) is the integer coefficient of x^n y^m, for n + m <= order.
    Memoized: the table is immutable and braid words hash by content.
    """
    series = compute_f_infinity(normalize_writhe(closure_to_long(knot)), order)
    return CoefficientTable(kind="b", entries=dict(series.coeffs), order=order)
