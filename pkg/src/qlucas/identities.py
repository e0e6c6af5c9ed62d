"""Registry of every checkable identity, with parameter grids and a runner.

Each entry produces a list of ``(lhs, rhs)`` pairs for one parameter point;
the point passes iff every difference is zero.  Ids follow the equation
numbers (``eq3.1``, ``eq4.13``, ``cor5.6``); ``list`` output shows the grid
and any x = 1 restriction.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .exactalg import ONE, Q, S, X, ZERO, LaurentPoly
from .fiblucas import (
    ENUMERATION_BOUND,
    SPECIAL_TABLES,
    TABLE_ERRATA,
    FamilyKind,
    circular_sum,
    classical_fib,
    classical_lucas,
    family_by_operator,
    fib,
    fib_by_recurrence,
    lucas,
    lucas_by_division,
    morse_sum,
)
from .qcore import (
    binom,
    p_poly_forms,
    q_binomial,
    q_catalan,
    q_derivative,
    q_hermite,
    q_int,
    rogers_szego,
)
from . import qseries
from .report import IdentityReport, run_timed

__all__ = [
    "GridConfig",
    "Identity",
    "REGISTRY",
    "UnknownIdentity",
    "get_identity",
    "register",
    "run_identity",
    "iter_points",
    "run_many",
    "check_inversion",
    "check_catalan",
    "check_carlitz",
    "check_shift",
    "check_misc",
]

Pairs = list


class UnknownIdentity(KeyError):
    pass


@dataclass(frozen=True)
class GridConfig:
    max_n: int = 20
    m_values: tuple[int, ...] | None = None
    order: int = qseries.DEFAULT_ORDER


@dataclass(frozen=True)
class Identity:
    id: str
    equation: str
    summary: str
    sides: Callable[..., Pairs]
    grid: Callable[[GridConfig], list[dict]]
    grid_doc: str
    x1_only: bool = False
    note: str | None = None

    def points(self, cfg: GridConfig) -> list[dict]:
        return self.grid(cfg)


REGISTRY: dict[str, Identity] = {}


def register(identity: Identity) -> Identity:
    if identity.id in REGISTRY:
        raise ValueError(f"duplicate identity id {identity.id}")
    REGISTRY[identity.id] = identity
    return identity


def get_identity(identity_id: str) -> Identity:
    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentity(identity_id) from None


# ------------------------------------------------------------ grid helpers


def _n_range(lo: int, cap: int | None = None):
    def grid(cfg: GridConfig) -> list[dict]:
        hi = cfg.max_n if cap is None else min(cfg.max_n, cap)
        return [{"n": n} for n in range(lo, hi + 1)]

    return grid


def _m_values(cfg: GridConfig, default: Sequence[int], allowed: Callable[[int], bool] = lambda m: True):
    ms = default if cfg.m_values is None else cfg.m_values
    return [m for m in ms if allowed(m)]


def _order_only(cfg: GridConfig) -> list[dict]:
    return [{"order": cfg.order}]


# ------------------------------------------------------------ small helpers


def _qpow(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(q=e)


def _at_x1(p: LaurentPoly) -> LaurentPoly:
    return p.substitute(x=1)


def _q1(p: LaurentPoly) -> LaurentPoly:
    return p.substitute(q=1)


_S_OVER_Q = S * Q ** -1


def _c2(k: int) -> int:
    return k * (k - 1) // 2


# ---------------------------------------------------------------- p_n, Rogers-Szego and the q = 1 classics


def _eq1_8(n):
    return [p_poly_forms(n)]


def _eq1_10(n):
    rhs = (X + S) * rogers_szego(n - 1) + (_qpow(n - 1) - ONE) * S * X * rogers_szego(n - 2)
    return [(rogers_szego(n), rhs)]


def _classical_q1(n):
    f = lambda j: _q1(fib(j))
    l = lambda j, star=False: _q1(lucas(j, star))
    pairs = [(f(n), classical_fib(n)), (l(n), classical_lucas(n))]
    if n >= 2:
        pairs.append((f(n), X * f(n - 1) + S * f(n - 2)))
        pairs.append((l(n), X * l(n - 1) + S * l(n - 2)))
    if n >= 1:
        pairs.append((l(n), f(n + 1) + S * f(n - 1)))
    lhs6 = sum((LaurentPoly.monomial((-1) ** k * binom(n, k), s=k) * l(n - 2 * k, True) for k in range(n // 2 + 1)), ZERO)
    pairs.append((lhs6, LaurentPoly.monomial(x=n)))
    lhs7 = sum(
        (LaurentPoly.monomial((-1) ** k * (binom(n, k) - binom(n, k - 1)), s=k) * f(n + 1 - 2 * k) for k in range(n // 2 + 1)),
        ZERO,
    )
    pairs.append((lhs7, LaurentPoly.monomial(x=n)))
    return pairs


# ---------------------------------------------------------------- Fibonacci and Lucas constructions


def _recurrence(rule):
    return lambda n: [(fib_by_recurrence(n, rule), fib(n))]


def _eq2_5(n):
    lhs = fib(n) - X * fib(n - 1) - S * fib(n - 2)
    rhs = ZERO
    for k in range(1, n // 2 + 1):
        c = LaurentPoly.monomial((-1) ** k, s=k, q=(k - 1) * (n - k)) * (ONE - _qpow(n - 2 * k))
        rhs = rhs + c * fib(n - 2 * k)
    return [(lhs, rhs)]


def _eq2_9(n):
    rhs = X * fib(n - 1) + (Q - ONE) * S * q_derivative(fib(n - 1)) + S * fib(n - 2)
    return [(fib(n), rhs)]


def _eq2_15(n):
    rhs = X * lucas(n - 1) + (Q - ONE) * S * q_derivative(lucas(n - 1)) + S * lucas(n - 2)
    return [(lucas(n), rhs)]


def _eq2_12(n):
    return [(lucas(n), fib(n + 1) + S * fib(n - 1))]


def _eq2_13(n):
    return [(lucas(n), lucas_by_division(n))]


def _eq2_14(n):
    return [(lucas(n).substitute(s=S * Q), fib(n + 1) + S.shift(q=n) * fib(n - 1))]


def _eq2_16(n):
    ls = lambda j: lucas(j, star=True)
    lhs = ls(n) - X * ls(n - 1) - S * ls(n - 2)
    acc = ZERO
    for k in range(1, n // 2 + 1):
        acc = acc + LaurentPoly.monomial((-1) ** k, s=k, q=(k - 1) * (n - k - 1)) * ls(n - 2 * k)
    return [(lhs, (ONE - _qpow(n - 1)) * acc)]


def _eq2_17(n):
    # cleared of the [n-3] denominators; L_0 = 2
    c = q_int(n - 3)
    d = q_int(n - 1) * S.shift(q=n - 3)
    lhs = c * lucas(n)
    rhs = (
        c * X * lucas(n - 1)
        - (ONE + Q) * S.shift(q=n - 3) * lucas(n - 2)
        + d * X * lucas(n - 3)
        + d * S * lucas(n - 4)
    )
    return [(lhs, rhs)]


def _eq2_dl(n):
    return [(q_derivative(lucas(n)), q_int(n) * fib(n).substitute(s=_S_OVER_Q))]


def _eq2_7(n):
    return [(morse_sum(n), fib(n))]


def _eq2_8(n):
    return [(family_by_operator(FamilyKind.FIB, n), fib(n))]


def _eq2_10(n):
    return [(family_by_operator(FamilyKind.LUCAS, n), lucas(n))]


def _rem2(n):
    return [(circular_sum(n), lucas(n))]


def _rem3(n):
    """The three recurrences and both Lucas-from-Fibonacci relations at index -n."""
    j = -n
    sq = S * Q
    return [
        (fib(j), X * fib(j - 1).substitute(s=sq) + sq * fib(j - 2).substitute(s=sq)),
        (fib(j), X * fib(j - 1) + S.shift(q=j - 2) * fib(j - 2).substitute(s=_S_OVER_Q)),
        (fib(j), X * fib(j - 1) + S.shift(q=j - 2) * X * fib(j - 3) + S.shift(q=j - 2) * S * fib(j - 4)),
        (lucas(j), fib(j + 1) + S * fib(j - 1)),
        (lucas(j).substitute(s=sq), fib(j + 1) + S.shift(q=j) * fib(j - 1)),
    ]


# ---------------------------------------------------------------- inversion, Hermite and Catalan


_S_INV = S ** -1


def fib_backwards(n: int) -> LaurentPoly:
    """F_{-n} by running F_k(x,s/q) = x F_{k-1} + s F_{k-2} down from F_1, F_0."""
    hi, lo = ONE, ZERO  # F_1, F_0
    for _ in range(n):
        hi, lo = lo, (hi.substitute(s=_S_OVER_Q) - X * lo) * _S_INV
    return lo


def lucas_backwards(n: int) -> LaurentPoly:
    """L_{-n} by running L_k = x L_{k-1} + (q-1)s D L_{k-1} + s L_{k-2} down from L_1, L_0."""
    hi, lo = X, LaurentPoly.const(2)
    for _ in range(n):
        hi, lo = lo, (hi - X * lo - (Q - ONE) * S * q_derivative(lo)) * _S_INV
    return lo


def _eq3_8(n):
    return [(lucas_backwards(n), lucas(-n))]


def _eq3_9(n):
    return [(fib_backwards(n), fib(-n))]


def _eq3_1(n):
    lhs = ZERO
    for k in range(n // 2 + 1):
        lhs = lhs + q_binomial(n, k) * lucas(n - 2 * k, star=True) * LaurentPoly.monomial((-1) ** k, s=k)
    return [(lhs, LaurentPoly.monomial(x=n))]


def _eq3_2(n):
    lhs = ZERO
    for k in range(n // 2 + 1):
        c = q_binomial(n, k) - (q_binomial(n, k - 1) if k >= 1 else ZERO)
        lhs = lhs + c * fib(n + 1 - 2 * k) * LaurentPoly.monomial((-1) ** k, s=k)
    return [(lhs, LaurentPoly.monomial(x=n))]


def _eq3_11(n):
    neg = -S
    h = q_hermite(n, (Q - ONE) * S)
    via_lucas = ZERO
    for k in range(n // 2 + 1):
        via_lucas = via_lucas + LaurentPoly.monomial(binom(n, k), s=k) * lucas(n - 2 * k, star=True).substitute(s=neg)
    via_fib = ZERO
    for k in range((n + 1) // 2 + 1):
        c = binom(n, k) - binom(n, k - 1)
        via_fib = via_fib + LaurentPoly.monomial(c, s=k) * fib(n + 1 - 2 * k).substitute(s=neg)
    return [(h, via_lucas), (h, via_fib)]


def _eq3_12(n):
    lhs = ZERO
    for k in range(n + 1):
        lhs = lhs + q_binomial(2 * n - k, k).shift(q=_c2(k)).scale((-1) ** k) * q_catalan(n - k)
    return [(lhs, ONE if n == 0 else ZERO)]


def _eq3_13(n):
    lhs = ZERO
    for k in range(n + 1):
        ratio = (q_int(2 * n) * q_binomial(2 * n - k, k)).exact_div(q_int(2 * n - k))
        lhs = lhs + (ratio * q_binomial(2 * n - 2 * k, n - k)).shift(q=_c2(k)).scale((-1) ** k)
    return [(lhs, ZERO)]


# ---------------------------------------------------------------- Carlitz and shift identities
# Two-variable identities put y in the s slot.


def _eq4_3(n):
    lhs = sum((LaurentPoly.monomial(x=i, s=n - 1 - i) for i in range(n)), ZERO)
    rhs = ZERO
    for k in range((n - 1) // 2 + 1):
        c = q_binomial(n - k - 1, k).shift(x=k, s=k, q=k * (k + 1) // 2).scale((-1) ** k)
        rhs = rhs + c * rogers_szego(n - 1 - 2 * k)
    return [(lhs, rhs)]


def _eq4_4(n):
    lhs = LaurentPoly.monomial(x=n) + LaurentPoly.monomial(s=n)
    rhs = ZERO
    for k in range(n // 2 + 1):
        c = (q_int(n) * q_binomial(n - k, k)).exact_div(q_int(n - k))
        rhs = rhs + c.shift(x=k, s=k, q=_c2(k)).scale((-1) ** k) * rogers_szego(n - 2 * k)
    return [(lhs, rhs)]


def _eq4_5(n, k):
    lhs = ZERO
    for j in range(k + 1):
        lhs = lhs + (q_binomial(k, j) * q_binomial(n - j, k)).shift(q=j * (j + 1) // 2).scale((-1) ** j)
    return [(lhs, ONE)]


@lru_cache(maxsize=None)
def _fib_classical_x1(j: int) -> LaurentPoly:
    return fib(j).substitute(x=1, q=1)


def _eq4_6(n, m):
    f = _fib_classical_x1
    lhs = sum((f(2 * n + m - k).scale((-1) ** k * binom(n, k)) for k in range(n + 1)), ZERO)
    return [(lhs, f(m).shift(s=n))]


def _fib_at(at_x1: bool):
    # x = 1 is a ring homomorphism, so substituting before multiplying is exact
    return (lambda j: _at_x1(fib(j))) if at_x1 else fib


def _xval(p: LaurentPoly, at_x1: bool) -> LaurentPoly:
    return _at_x1(p) if at_x1 else p


def _eq4_7(n, m, at_x1=True):
    f = _fib_at(at_x1)
    lhs = ZERO
    for k in range(n + 1):
        lhs = lhs + q_binomial(n, k).shift(q=_c2(k)).scale((-1) ** k) * f(2 * n + m - k)
    rhs = f(m).substitute(s=S * Q ** -n).shift(s=n, q=_c2(n) + m * n)
    return [(lhs, rhs)]


def _eq4_8(n, at_x1=True):
    f = _fib_at(at_x1)
    lhs = ZERO
    for k in range(n + 1):
        lhs = lhs + q_binomial(n, k).shift(q=_c2(k)).scale((-1) ** k) * f(2 * n - k)
    return [(lhs, ZERO)]


def _eq4_9(m, at_x1=True):
    lhs = fib(m + 2) - fib(m + 1)
    rhs = fib(m).substitute(s=_S_OVER_Q).shift(s=1, q=m)
    return [(_xval(lhs, at_x1), _xval(rhs, at_x1))]


def _eq4_13(n, at_x1=True):
    lv = (lambda j: _at_x1(lucas(j))) if at_x1 else lucas
    lhs = ZERO
    for k in range(n + 1):
        c = q_binomial(n, k).shift(q=n - 1) + q_binomial(n - 1, k)
        lhs = lhs + c.shift(q=_c2(k)).scale((-1) ** k) * lv(2 * n - 1 - k)
    return [(lhs, ZERO)]


# ---------------------------------------------------------------- series identities


def _table(key):
    table = SPECIAL_TABLES[key]

    def sides(n):
        return [(table.claim(n), table.actual(n))]

    def grid(cfg):
        return [{"n": n} for n in range(cfg.max_n + 1) if table.claim(n) is not None]

    return sides, grid


def _bailey(pair_id):
    pair_cache = {}

    def sides(n, s, order):
        key = s
        if key not in pair_cache:
            pair_cache[key] = qseries.bailey_pair(pair_id, s)
        return [qseries.bailey_relation_sides(pair_cache[key], n, order)]

    def grid(cfg):
        return [{"n": n, "s": s, "order": cfg.order} for s in qseries.S_CHOICES for n in range(cfg.max_n + 1)]

    return sides, grid


def _vandermonde_grid(cfg):
    out = []
    for n in range(cfg.max_n + 1):
        for i in range(4):
            for k in range(4):
                if n >= 2 * i and k <= n:
                    out.append({"n": n, "i": i, "k": k, "order": cfg.order})
    return out


def _master(which):
    def sides(m, order):
        return [qseries.master_formula_sides(which, m, order)]

    def grid(cfg):
        return [{"m": m, "order": cfg.order} for m in _m_values(cfg, (0, 1), lambda m: m in (0, 1))]

    return sides, grid


# ---------------------------------------------------------------- registry

_X1_NOTE = "checked at x = 1: for symbolic x the n=1, m=1 instance leaves x^2 - x"


def _register_all() -> None:
    add = lambda *a, **kw: register(Identity(*a, **kw))

    add("eq1.8", "(1.8)", "p_n product form equals its q-binomial sum", lambda n: _eq1_8(n), _n_range(0), "0 <= n <= max_n")
    add("eq1.10", "(1.10)", "Rogers-Szego three-term recursion", lambda n: _eq1_10(n), _n_range(2), "2 <= n <= max_n")
    add(
        "classical.q1",
        "(1.1)-(1.7)",
        "q = 1 reduces F_n, L_n to the classical polynomials and their identities",
        lambda n: _classical_q1(n),
        _n_range(0),
        "0 <= n <= max_n",
    )
    for rule, eq in (("R22", "eq2.2"), ("R23", "eq2.3"), ("R24", "eq2.4")):
        add(eq, f"({eq[2:]})", f"recurrence {rule} from F_0, F_1 reproduces the explicit sum", _recurrence(rule), _n_range(0), "0 <= n <= max_n")
    add("eq2.5", "(2.5)", "F_n - xF_{n-1} - sF_{n-2} correction sum", lambda n: _eq2_5(n), _n_range(2), "2 <= n <= max_n")
    add(
        "eq2.7",
        "(2.7)",
        "Morse-code weight enumeration equals F_n",
        lambda n: _eq2_7(n),
        _n_range(1, ENUMERATION_BOUND),
        f"1 <= n <= min(max_n, {ENUMERATION_BOUND})",
    )
    add("eq2.8", "(2.8)", "operator x -> x+(q-1)sD on classical F_n", lambda n: _eq2_8(n), _n_range(0), "0 <= n <= max_n")
    add("eq2.9", "(2.9)", "F_n = xF_{n-1} + (q-1)sDF_{n-1} + sF_{n-2}", lambda n: _eq2_9(n), _n_range(2), "2 <= n <= max_n")
    add("eq2.10", "(2.10)", "operator x -> x+(q-1)sD on classical L_n", lambda n: _eq2_10(n), _n_range(0), "0 <= n <= max_n")
    add("eq2.12", "(2.12)", "L_n = F_{n+1} + sF_{n-1}", lambda n: _eq2_12(n), _n_range(1), "1 <= n <= max_n")
    add("eq2.13", "(2.13)", "division-free Lucas coefficients match [n]/[n-k] by exact division", lambda n: _eq2_13(n), _n_range(1), "1 <= n <= max_n")
    add("eq2.14", "(2.14)", "L_n(x,qs,q) = F_{n+1} + q^n sF_{n-1}", lambda n: _eq2_14(n), _n_range(1), "1 <= n <= max_n")
    add(
        "rem2",
        "Remark 2",
        "circular domino coverings weigh L_n",
        lambda n: _rem2(n),
        _n_range(1, ENUMERATION_BOUND),
        f"1 <= n <= min(max_n, {ENUMERATION_BOUND})",
    )
    add("eq2.15", "(2.15)", "L_n = xL_{n-1} + (q-1)sDL_{n-1} + sL_{n-2}", lambda n: _eq2_15(n), _n_range(2), "2 <= n <= max_n")
    add("eq2.16", "(2.16)", "L*_n three-term defect sum", lambda n: _eq2_16(n), _n_range(3), "3 <= n <= max_n")
    add("eq2.17", "(2.17)", "four-term L_n recurrence, multiplied through by [n-3]", lambda n: _eq2_17(n), _n_range(4), "4 <= n <= max_n")
    add("eq2.DL", "section 2", "D L_n(x,s,q) = [n] F_n(x,s/q,q)", lambda n: _eq2_dl(n), _n_range(1), "1 <= n <= max_n")
    add("rem3", "Remark 3", "(2.2)-(2.4), (2.12), (2.14) at index -n", lambda n: _rem3(n), _n_range(1), "1 <= n <= max_n")
    add("eq3.1", "(3.1)", "sum_k [n,k] L*_{n-2k} (-s)^k = x^n", lambda n: _eq3_1(n), _n_range(0), "0 <= n <= max_n")
    add("eq3.2", "(3.2)", "sum_k ([n,k]-[n,k-1]) F_{n+1-2k} (-s)^k = x^n", lambda n: _eq3_2(n), _n_range(0), "0 <= n <= max_n")
    add("eq3.8", "(3.8)", "backward recurrence gives L_{-n} = (-1)^n L_n / s^n", lambda n: _eq3_8(n), _n_range(1), "1 <= n <= max_n")
    add("eq3.9", "(3.9)", "backward recurrence gives F_{-n} = (-1)^(n-1) F_n / s^n", lambda n: _eq3_9(n), _n_range(1), "1 <= n <= max_n")
    add("eq3.11", "(3.11)", "H_n(x,(q-1)s|q) via L* and via F", lambda n: _eq3_11(n), _n_range(0), "0 <= n <= max_n")
    add("eq3.12", "(3.12)", "q-Catalan alternating sum = [n = 0]", lambda n: _eq3_12(n), _n_range(0), "0 <= n <= max_n")
    add("eq3.13", "(3.13)", "central q-binomial alternating sum = 0", lambda n: _eq3_13(n), _n_range(1), "1 <= n <= max_n")
    add("eq4.3", "(4.3)", "(x^n - y^n)/(x - y) via Rogers-Szego", lambda n: _eq4_3(n), _n_range(1), "1 <= n <= max_n")
    add("eq4.4", "(4.4)", "x^n + y^n via Rogers-Szego", lambda n: _eq4_4(n), _n_range(1), "1 <= n <= max_n")
    add(
        "eq4.5",
        "(4.5)",
        "sum_j (-1)^j q^C(j+1,2) [k,j][n-j,k] = 1",
        lambda n, k: _eq4_5(n, k),
        lambda cfg: [{"n": n, "k": k} for n in range(cfg.max_n + 1) for k in range(n + 1)],
        "0 <= k <= n <= max_n",
    )
    add(
        "eq4.6",
        "(4.6)",
        "classical shift identity at x = 1, q = 1",
        lambda n, m: _eq4_6(n, m),
        lambda cfg: [{"n": n, "m": m} for n in range(cfg.max_n + 1) for m in _m_values(cfg, range(-6, 7))],
        "0 <= n <= max_n, m in --m (default -6..6)",
        x1_only=True,
    )
    add(
        "eq4.7",
        "(4.7)",
        "shift identity sum_k (-1)^k q^C(k,2) [n,k] F_{2n+m-k}",
        lambda n, m: _eq4_7(n, m),
        lambda cfg: [{"n": n, "m": m} for n in range(cfg.max_n + 1) for m in _m_values(cfg, range(-6, 7))],
        "0 <= n <= max_n, m in --m (default -6..6)",
        x1_only=True,
        note=_X1_NOTE,
    )
    add("eq4.8", "(4.8)", "sum_k (-1)^k q^C(k,2) [n,k] F_{2n-k} = 0", lambda n: _eq4_8(n), _n_range(0), "0 <= n <= max_n", x1_only=True, note=_X1_NOTE)
    add(
        "eq4.9",
        "(4.9)",
        "F_{m+2} - F_{m+1} = q^m s F_m(x,s/q,q)",
        lambda m: _eq4_9(m),
        lambda cfg: [{"m": m} for m in _m_values(cfg, range(-cfg.max_n, cfg.max_n + 1))],
        "m in --m (default -max_n..max_n)",
        x1_only=True,
        note=_X1_NOTE,
    )
    add("eq4.13", "(4.13)", "Lucas shift sum = 0", lambda n: _eq4_13(n), _n_range(1), "1 <= n <= max_n", x1_only=True, note=_X1_NOTE)

    for pair_id in qseries.BAILEY_PAIRS:
        sides, grid = _bailey(pair_id)
        eq = "eq" + pair_id[1:]
        add(eq, f"({eq[2:]}) in (5.1)", f"Bailey relation for pair {eq[2:]} at x = 1, s in {{1, 1/q}}", sides, grid, "0 <= n <= max_n, s in {1, 1/q}, to --order", x1_only=True)
    add("eq5.2", "(5.2)", "even-index Bailey polynomial identity", lambda n: [qseries.bailey_symbolic_sides(0, n)], _n_range(0), "0 <= n <= max_n")
    add("eq5.3", "(5.3)", "odd-index Bailey polynomial identity", lambda n: [qseries.bailey_symbolic_sides(1, n)], _n_range(0), "0 <= n <= max_n")
    add(
        "eq5.9",
        "(5.9)",
        "q-Vandermonde: finite form and its n -> oo limit",
        lambda n, i, k, order: [qseries.vandermonde_finite_sides(n, i, k), qseries.vandermonde_limit_sides(i, k, order)],
        _vandermonde_grid,
        "0 <= n <= max_n, i <= 3, k <= 3 (n >= 2i, k <= n), to --order",
    )
    for which in qseries.MASTER_FORMULAS:
        sides, grid = _master(which)
        add(which, f"({which[2:]})", "sum side against (1/(q;q)_oo) times directly evaluated L* sum", sides, grid, "m in {0, 1}, to --order", x1_only=True)
    for key in SPECIAL_TABLES:
        sides, grid = _table(key)
        add(key, f"({key[2:]})", "closed-form special values against direct substitution", sides, grid, "table rows with index <= max_n", x1_only=True, note=TABLE_ERRATA.get(key))
    add("eq5.19", "(5.19) limit", "sum_k L*_{2k}(1,-1,q) = (q;q)_oo", lambda order: [qseries.pentagonal_sides(0, order)], _order_only, "to --order", x1_only=True)
    add("eq5.20", "(5.20) limit", "sum_k L*_{2k+1}(1,-1,q) = (q;q)_oo", lambda order: [qseries.pentagonal_sides(1, order)], _order_only, "to --order", x1_only=True)
    add(
        "eq5.31",
        "(5.31)",
        "L*_{2i+m}(1,-q,1/q) q^(2i^2-i+2mi) = L*_{2i+m}(1,-1,q^2)",
        lambda i, m: [qseries.eq5_31_sides(i, m)],
        lambda cfg: [{"i": i, "m": m} for i in range(cfg.max_n + 1) for m in _m_values(cfg, (0, 1), lambda m: m in (0, 1))],
        "0 <= i <= max_n, m in {0, 1}",
        x1_only=True,
    )
    for i in qseries.COROLLARIES:
        extra = " (also = (-q;q)_oo and the other of 5.6/5.7)" if qseries.COROLLARIES[i].equals_minus_q else ""
        add(
            f"cor5.{i}",
            f"Corollary 5.{i}",
            "sum side against (1/(q;q)_oo) times the bilateral theta sum" + extra,
            (lambda i: lambda order: qseries.corollary_sides(i, order))(i),
            _order_only,
            "to --order",
        )


_register_all()


# ------------------------------------------------------------------ runner


def run_identity(identity_id: str, **params) -> IdentityReport:
    ident = get_identity(identity_id)
    return run_timed(identity_id, params, lambda: ident.sides(**params), note=ident.note)


def iter_points(ids: Iterable[str], cfg: GridConfig) -> Iterator[tuple[str, dict]]:
    for identity_id in ids:
        for params in get_identity(identity_id).points(cfg):
            yield identity_id, params


def _run_point(point: tuple[str, dict]) -> IdentityReport:
    identity_id, params = point
    return run_identity(identity_id, **params)


def run_many(
    points: Iterable[tuple[str, dict]], parallel: bool = False, workers: int | None = None
) -> Iterator[IdentityReport]:
    """Run checks, yielding reports in input order regardless of completion order."""
    points = list(points)
    if not parallel or len(points) < 2:
        for p in points:
            yield _run_point(p)
        return
    workers = workers or min(8, os.cpu_count() or 1)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_run_point, points, chunksize=max(1, len(points) // (4 * workers)))


# --------------------------------------------------------- named checks


def check_inversion(which: str, n: int) -> IdentityReport:
    return run_identity({"thm3_1": "eq3.1", "thm3_2": "eq3.2"}[which], n=n)


def check_catalan(which: str, n: int) -> IdentityReport:
    return run_identity({"eq3_12": "eq3.12", "eq3_13": "eq3.13"}[which], n=n)


def check_carlitz(which: str, n: int, k: int = 0) -> IdentityReport:
    if which == "eq4_5":
        return run_identity("eq4.5", n=n, k=k)
    return run_identity({"eq4_3": "eq4.3", "eq4_4": "eq4.4"}[which], n=n)


_SHIFT_SIDES = {"eq4_7": _eq4_7, "eq4_8": _eq4_8, "eq4_9": _eq4_9, "eq4_13": _eq4_13}


def check_shift(which: str, n: int = 0, m: int = 0, symbolic_x: bool = False) -> IdentityReport:
    """Shift identities; ``symbolic_x`` drops the x = 1 evaluation to expose the counterexample."""
    fn = _SHIFT_SIDES[which]
    identity_id = which.replace("_", ".")
    if which == "eq4_7":
        params, call = {"n": n, "m": m}, lambda: fn(n, m, at_x1=not symbolic_x)
    elif which == "eq4_9":
        params, call = {"m": m}, lambda: fn(m, at_x1=not symbolic_x)
    else:
        params, call = {"n": n}, lambda: fn(n, at_x1=not symbolic_x)
    if symbolic_x:
        params["x"] = "symbolic"
    return run_timed(identity_id, params, call, note=get_identity(identity_id).note)


def check_misc(which: str, n: int, m: int | None = None) -> IdentityReport:
    if which == "classical_q1":
        return run_identity("classical.q1", n=n)
    if which == "eq5_31":
        return run_identity("eq5.31", i=n, m=0 if m is None else m)
    return run_identity(which.replace("_", "."), n=n)
