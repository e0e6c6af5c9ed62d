"""Bailey pairs, truncated products, bilateral theta sums and the sum-product identities.

Every check computes its two sides independently as :class:`QSeries` to a
fixed order.  Lucas values at x = 1 are always obtained by substituting into
the full polynomial, never from the closed-form tables in :mod:`fiblucas`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .exactalg import ONE, Q, S, X, ZERO, LaurentPoly, NegativeExponent, QSeries
from .fiblucas import evaluate_at, lucas
from .qcore import q_binomial
from .report import IdentityReport, run_timed

__all__ = [
    "DEFAULT_ORDER",
    "BaileyPair",
    "ThetaSpec",
    "bailey_pair",
    "inv_pochhammer",
    "infinite_product",
    "theta_sum",
    "bailey_relation_sides",
    "bailey_symbolic_sides",
    "bailey_check",
    "vandermonde_finite_sides",
    "vandermonde_limit_sides",
    "vandermonde_check",
    "MASTER_FORMULAS",
    "master_formula_sides",
    "master_formula_check",
    "COROLLARIES",
    "corollary_lhs",
    "corollary_sides",
    "corollary_check",
    "pentagonal_sides",
    "pentagonal_check",
    "eq5_31_sides",
]

DEFAULT_ORDER = 100
# a sum over Lucas values stops after this many consecutive summands lie past the order
TAIL_MARGIN = 3


# --------------------------------------------------------------- products


@lru_cache(maxsize=None)
def inv_pochhammer(n: int, order: int) -> QSeries:
    """1/(q;q)_n to the given order."""
    if n == 0:
        return QSeries.one(order)
    c = list(inv_pochhammer(n - 1, order).coeffs)
    if n <= order:
        for i in range(n, order + 1):
            c[i] += c[i - n]
    return QSeries(c, order)


def _times_one_minus(c: list[int], j: int, sign: int = -1) -> None:
    # in place: c *= (1 + sign*q^j)
    for i in range(len(c) - 1, j - 1, -1):
        c[i] += sign * c[i - j]


def infinite_product(spec: str, order: int) -> QSeries:
    """``euler`` = (q;q)_inf, ``minus_q`` = (-q;q)_inf, ``q2_over_q`` = (q^2;q^2)_inf / (q;q)_inf."""
    if spec == "euler":
        c = [1] + [0] * order
        for j in range(1, order + 1):
            _times_one_minus(c, j)
        return QSeries(c, order)
    if spec == "minus_q":
        c = [1] + [0] * order
        for j in range(1, order + 1):
            _times_one_minus(c, j, +1)
        return QSeries(c, order)
    if spec == "q2_over_q":
        c = [1] + [0] * order
        for j in range(1, order // 2 + 1):
            _times_one_minus(c, 2 * j)
        return QSeries(c, order) * infinite_product("euler", order).inverse()
    raise ValueError(f"unknown product {spec!r}")


# ----------------------------------------------------------------- theta


@dataclass(frozen=True)
class ThetaSpec:
    """Sum over k in Z of sign * q^(a k^2 + b k + c), one tuple per term."""

    terms: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        for sign, a, _, _ in self.terms:
            if a <= 0:
                raise ValueError("theta terms need a > 0")
            if sign not in (1, -1):
                raise ValueError("theta signs are +1 or -1")


def _theta_window(a: int, b: int, c: int, order: int) -> int:
    # every k with a k^2 - |b||k| + c <= order has |k| <= this bound
    disc = b * b + 4 * a * max(order - c, 0)
    return (abs(b) + math.isqrt(disc) + 1) // (2 * a) + 1


def theta_sum(spec: ThetaSpec, order: int) -> QSeries:
    coeffs = [0] * (order + 1)
    for sign, a, b, c in spec.terms:
        k0 = -b / (2 * a)
        lowest = min(a * k * k + b * k + c for k in (math.floor(k0), math.ceil(k0)))
        if lowest < 0:
            raise NegativeExponent(f"term q^({a}k^2+{b}k+{c}) reaches q^{lowest}")
        w = _theta_window(a, b, c, order)
        for k in range(-w, w + 1):
            e = a * k * k + b * k + c
            if e <= order:
                coeffs[e] += sign
    return QSeries(coeffs, order)


# ------------------------------------------------------------ Bailey pairs


@dataclass(frozen=True)
class BaileyPair:
    """alpha_k and beta_n = beta_num(n) / (q;q)_{beta_denom_index(n)} as Laurent polys in q."""

    name: str
    m: int
    alpha: Callable[[int], LaurentPoly]
    beta_num: Callable[[int], LaurentPoly]
    beta_denom_index: Callable[[int], int]


def _lstar_at(i: int, s: str, base: str) -> LaurentPoly:
    return evaluate_at(lucas(i, star=True), s, base)


BAILEY_PAIRS = ("p5.4", "p5.5", "p5.6", "p5.7")
S_CHOICES = ("1", "1/q")


def bailey_pair(pair_id: str, s_choice: str = "1") -> BaileyPair:
    """The pairs built from L*_{2n} / L*_{2n+1} at x = 1 with s(q) = 1 or 1/q.

    ``p5.6`` and ``p5.7`` are the pairs obtained by sending q -> 1/q.
    """
    pair_id = pair_id.replace("_", ".")
    if s_choice not in S_CHOICES:
        raise ValueError(f"s must be one of {S_CHOICES}")
    # e = exponent of q in s(q): s(q) = q^e
    e = 0 if s_choice == "1" else -1
    if pair_id in ("p5.4", "p5.5"):
        m = 0 if pair_id == "p5.4" else 1
        point = "-1" if e == 0 else "-1/q"
        return BaileyPair(
            name=f"{pair_id}(s={s_choice})",
            m=m,
            alpha=lambda k: _lstar_at(2 * k + m, point, "q").shift(q=-e * k),
            beta_num=lambda n: LaurentPoly.monomial(q=-e * n),
            beta_denom_index=lambda n: 2 * n + m,
        )
    if pair_id in ("p5.6", "p5.7"):
        m = 0 if pair_id == "p5.6" else 1
        # s(1/q) = q^(-e)
        point = "-1" if e == 0 else "-q"
        return BaileyPair(
            name=f"{pair_id}(s={s_choice})",
            m=m,
            alpha=lambda k: _lstar_at(2 * k + m, point, "1/q").shift(q=k * k + m * k + e * k),
            beta_num=lambda n: LaurentPoly.monomial(q=n * n + m * n + e * n),
            beta_denom_index=lambda n: 2 * n + m,
        )
    raise ValueError(f"unknown Bailey pair {pair_id!r}")


def bailey_relation_sides(pair: BaileyPair, n: int, order: int) -> tuple[QSeries, QSeries]:
    """beta_n against sum_k alpha_k / ((q;q)_{n-k} (q;q)_{n+k+m})."""
    beta = QSeries.from_poly(pair.beta_num(n), order) * inv_pochhammer(pair.beta_denom_index(n), order)
    total = QSeries.zero(order)
    for k in range(n + 1):
        a = QSeries.from_poly(pair.alpha(k), order)
        total = total + a * inv_pochhammer(n - k, order) * inv_pochhammer(n + k + pair.m, order)
    return beta, total


def bailey_symbolic_sides(parity: int, n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """sum_k [2n+p, n-k] L*_{2k+p}(x, -s, q) s^(n-k) against x^(2n+p), p = parity."""
    top = 2 * n + parity
    total = ZERO
    for k in range(n + 1):
        lv = lucas(2 * k + parity, star=True).substitute(s=-S)
        total = total + q_binomial(top, n - k) * lv.shift(s=n - k)
    return total, LaurentPoly.monomial(x=top)


def bailey_check(pair_id: str, n_max: int, order: int, s_choice: str = "1") -> IdentityReport:
    """Verify the Bailey relation for n <= n_max and the polynomial forms behind it."""
    pair_id = pair_id.replace("_", ".")
    pair = bailey_pair(pair_id, s_choice)

    def sides():
        out = [bailey_relation_sides(pair, n, order) for n in range(n_max + 1)]
        out += [bailey_symbolic_sides(pair.m, n) for n in range(n_max + 1)]
        return out

    return run_timed("eq" + pair_id[1:], {"s": s_choice, "n_max": n_max, "order": order}, sides)


# ------------------------------------------------------------- Vandermonde


def vandermonde_finite_sides(n: int, i: int, k: int) -> tuple[LaurentPoly, LaurentPoly]:
    """sum_j q^(j(2i+j+k)) [n+2i, n-j-k] [n-2i, j] against [2n, n-k]."""
    if n < 2 * i or k > n:
        raise ValueError("need n >= 2i and k <= n")
    total = ZERO
    for j in range(n - 2 * i + 1):
        if n - j - k < 0:
            continue
        total = total + (q_binomial(n + 2 * i, n - j - k) * q_binomial(n - 2 * i, j)).shift(q=j * (2 * i + j + k))
    return total, q_binomial(2 * n, n - k)


def vandermonde_limit_sides(i: int, k: int, order: int) -> tuple[QSeries, QSeries]:
    """sum_{s>=i} q^(s^2+ks) / ((q;q)_{s-i} (q;q)_{s+i+k}) against q^(i^2+ki) / (q;q)_inf."""
    lhs = QSeries.zero(order)
    s = i
    while s * s + k * s <= order:
        lhs = lhs + (inv_pochhammer(s - i, order) * inv_pochhammer(s + i + k, order)).shift(s * s + k * s)
        s += 1
    rhs = infinite_product("euler", order).inverse().shift(i * i + k * i)
    return lhs, rhs


def vandermonde_check(n: int, i: int, k: int, order: int) -> IdentityReport:
    def sides():
        return [vandermonde_finite_sides(n, i, k), vandermonde_limit_sides(i, k, order)]

    return run_timed("eq5.9", {"n": n, "i": i, "k": k, "order": order}, sides)


# --------------------------------------------------------- master formulas


@dataclass(frozen=True)
class MasterFormula:
    """sum_n q^(a n^2 + (b + c m) n) / (q;q)_{2n+m} = (1/(q;q)_inf) sum_i L*_{2i+m}(1, s, base) q^(a i^2 + (b + c m) i)."""

    a: int
    b: int
    c: int
    s: str
    base: str

    def exponent(self, j: int, m: int) -> int:
        return self.a * j * j + (self.b + self.c * m) * j


MASTER_FORMULAS = {
    "eq5.11": MasterFormula(1, 0, 1, "-1", "q"),
    "eq5.12": MasterFormula(1, 1, 1, "-1/q", "q"),
    "eq5.13": MasterFormula(2, 0, 2, "-1", "1/q"),
    "eq5.14": MasterFormula(2, -1, 2, "-q", "1/q"),
}


def sum_side(a: int, b: int, m: int, order: int, extra: int = 0) -> QSeries:
    """sum_{n>=0} q^(a n^2 + b n) / (q;q)_{2n+m}, stopping once exponents pass the order."""
    total = QSeries.zero(order)
    n = 0
    past = 0
    while past <= extra:
        e = a * n * n + b * n
        if e > order and 2 * a * n + b > 0:
            past += 1
        elif e >= 0:
            total = total + inv_pochhammer(2 * n + m, order).shift(e)
        else:
            raise NegativeExponent(f"summand n={n} has q^{e}")
        n += 1
    return total


def lucas_value_sum(
    weight: Callable[[int], LaurentPoly], order: int, extra: int = 0
) -> QSeries:
    """sum_{i>=0} weight(i), each a Laurent poly in q with nonnegative exponents.

    Summation stops after ``TAIL_MARGIN + extra`` consecutive summands whose
    lowest power of q lies past the order.
    """
    total = QSeries.zero(order)
    i = 0
    quiet = 0
    while quiet < TAIL_MARGIN + extra:
        w = weight(i)
        if w.is_zero() or w.min_degree("q") > order:
            quiet += 1
        else:
            quiet = 0
            total = total + QSeries.from_poly(w, order)
        i += 1
    return total


def master_formula_sides(which: str, m: int, order: int, extra: int = 0) -> tuple[QSeries, QSeries]:
    f = MASTER_FORMULAS[which.replace("_", ".")]
    lhs = sum_side(f.a, f.b + f.c * m, m, order, extra)
    weights = lucas_value_sum(
        lambda i: _lstar_at(2 * i + m, f.s, f.base).shift(q=f.exponent(i, m)), order, extra
    )
    rhs = infinite_product("euler", order).inverse() * weights
    return lhs, rhs


def master_formula_check(which: str, m: int, order: int = DEFAULT_ORDER) -> IdentityReport:
    which = which.replace("_", ".")
    return run_timed(which, {"m": m, "order": order}, lambda: [master_formula_sides(which, m, order)])


# ------------------------------------------------------------- corollaries


@dataclass(frozen=True)
class Corollary:
    master: str
    m: int
    theta: ThetaSpec
    equals_minus_q: bool = False


def _theta(*terms) -> ThetaSpec:
    return ThetaSpec(tuple(terms))


# (-1)^k q^(3k^2-k) split over even and odd k
_ALT_3K2 = _theta((1, 12, -2, 0), (-1, 12, 10, 2))

COROLLARIES = {
    1: Corollary("eq5.11", 0, _theta((1, 15, 1, 0), (-1, 15, 11, 2))),
    2: Corollary("eq5.11", 1, _theta((1, 15, -4, 0), (-1, 15, 14, 3))),
    3: Corollary("eq5.12", 0, _theta((1, 15, 2, 0), (-1, 15, 8, 1))),
    4: Corollary("eq5.12", 1, _theta((1, 15, -7, 0), (-1, 15, 13, 2))),
    5: Corollary("eq5.13", 0, _theta((1, 12, 1, 0), (-1, 12, 7, 1))),
    6: Corollary("eq5.14", 1, _ALT_3K2, equals_minus_q=True),
    7: Corollary("eq5.14", 0, _ALT_3K2, equals_minus_q=True),
    8: Corollary("eq5.13", 1, _theta((1, 12, 5, 0), (-1, 12, -13, 3))),
}


def corollary_lhs(i: int, order: int, extra: int = 0) -> QSeries:
    cor = COROLLARIES[i]
    f = MASTER_FORMULAS[cor.master]
    return sum_side(f.a, f.b + f.c * cor.m, cor.m, order, extra)


def corollary_sides(i: int, order: int) -> list[tuple[QSeries, QSeries]]:
    cor = COROLLARIES[i]
    lhs = corollary_lhs(i, order)
    rhs = infinite_product("euler", order).inverse() * theta_sum(cor.theta, order)
    pairs = [(lhs, rhs)]
    if cor.equals_minus_q:
        pairs.append((lhs, infinite_product("minus_q", order)))
        pairs.append((infinite_product("q2_over_q", order), infinite_product("minus_q", order)))
        other = 7 if i == 6 else 6
        pairs.append((lhs, corollary_lhs(other, order)))
    return pairs


def corollary_check(i: int, order: int = DEFAULT_ORDER) -> IdentityReport:
    if i not in COROLLARIES:
        raise ValueError(f"corollary index must be 1..8, got {i}")
    return run_timed(f"cor5.{i}", {"order": order}, lambda: corollary_sides(i, order))


# -------------------------------------------------------------- pentagonal


def pentagonal_sides(parity: int, order: int, extra: int = 0) -> tuple[QSeries, QSeries]:
    """sum_k L*_{2k+parity}(1, -1, q) against (q;q)_inf."""
    lhs = lucas_value_sum(lambda k: _lstar_at(2 * k + parity, "-1", "q"), order, extra)
    return lhs, infinite_product("euler", order)


def pentagonal_check(parity: str, order: int = DEFAULT_ORDER) -> IdentityReport:
    p = {"even": 0, "odd": 1}[parity]
    ident = "eq5.19" if p == 0 else "eq5.20"
    return run_timed(ident, {"order": order}, lambda: [pentagonal_sides(p, order)])


def eq5_31_sides(i: int, m: int) -> tuple[LaurentPoly, LaurentPoly]:
    """L*_{2i+m}(1, -q, 1/q) q^(2i^2-i+2mi) against L*_{2i+m}(1, -1, q^2)."""
    lv = lucas(2 * i + m, star=True)
    lhs = evaluate_at(lv, "-q", "1/q").shift(q=2 * i * i - i + 2 * m * i)
    rhs = lv.substitute(x=1, s=-ONE, q=Q ** 2)
    return lhs, rhs
