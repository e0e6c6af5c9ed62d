"""q-Fibonacci and q-Lucas polynomials, built several independent ways.

``fib(n)`` and ``lucas(n)`` are the reference constructions (explicit sums);
everything else here is a second route to the same polynomials, or a table
of closed-form values at x = 1 that gets checked against direct evaluation.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from .exactalg import ONE, Q, S, X, ZERO, LaurentPoly
from .qcore import binom, q_binomial, q_int, umbral_apply

__all__ = [
    "FamilyKind",
    "MorseWord",
    "BoundExceeded",
    "UnsupportedSpec",
    "ENUMERATION_BOUND",
    "fib",
    "lucas",
    "lucas_coeff",
    "lucas_by_division",
    "family",
    "fib_by_recurrence",
    "classical_fib",
    "classical_lucas",
    "family_by_operator",
    "morse_words",
    "morse_weight",
    "morse_sum",
    "circular_coverings",
    "circular_sum",
    "evaluate_at",
    "special_value",
    "SPECIAL_TABLES",
    "TABLE_ERRATA",
]

ENUMERATION_BOUND = 16


class BoundExceeded(ValueError):
    pass


class UnsupportedSpec(ValueError):
    pass


class FamilyKind(enum.Enum):
    FIB = "fib"
    LUCAS = "lucas"
    LUCAS_STAR = "lucas-star"


@lru_cache(maxsize=None)
def _fib_nonneg(n: int) -> LaurentPoly:
    total = ZERO
    for k in range((n - 1) // 2 + 1):
        total = total + q_binomial(n - 1 - k, k).shift(x=n - 1 - 2 * k, s=k, q=k * (k + 1) // 2)
    return total


def fib(n: int) -> LaurentPoly:
    """F_n(x, s, q) for any integer n.

    Negative indices use F_{-m} = (-1)^(m-1) F_m / s^m.
    """
    if n >= 0:
        return _fib_nonneg(n)
    m = -n
    sign = 1 if m % 2 else -1
    return _fib_nonneg(m).shift(s=-m).scale(sign)


@lru_cache(maxsize=None)
def lucas_coeff(n: int, k: int) -> LaurentPoly:
    """[n]/[n-k] * [n-k choose k], computed division-free as q^k[n-k,k] + [n-k-1,k-1]."""
    if n - k - 1 < 0:
        return q_binomial(n - k, k).shift(q=k) if n - k >= 0 else ZERO
    return q_binomial(n - k, k).shift(q=k) + q_binomial(n - k - 1, k - 1)


@lru_cache(maxsize=None)
def _lucas_pos(n: int) -> LaurentPoly:
    total = ZERO
    for k in range(n // 2 + 1):
        total = total + lucas_coeff(n, k).shift(x=n - 2 * k, s=k, q=k * (k - 1) // 2)
    return total


def lucas_by_division(n: int) -> LaurentPoly:
    """L_n for n > 0 from the explicit sum with [n]/[n-k] taken by exact division."""
    total = ZERO
    for k in range(n // 2 + 1):
        c = (q_int(n) * q_binomial(n - k, k)).exact_div(q_int(n - k))
        total = total + c.shift(x=n - 2 * k, s=k, q=k * (k - 1) // 2)
    return total


def lucas(n: int, star: bool = False) -> LaurentPoly:
    """L_n(x, s, q); with ``star`` the index-0 value is 1 instead of 2.

    Negative indices use L_{-m} = (-1)^m L_m / s^m.
    """
    if n > 0:
        return _lucas_pos(n)
    if n == 0:
        return ONE if star else LaurentPoly.const(2)
    m = -n
    return _lucas_pos(m).shift(s=-m).scale(-1 if m % 2 else 1)


def family(kind: FamilyKind, n: int) -> LaurentPoly:
    if kind is FamilyKind.FIB:
        return fib(n)
    return lucas(n, star=kind is FamilyKind.LUCAS_STAR)


_S_TIMES_Q = S * Q
_S_OVER_Q = S * Q ** -1


def fib_by_recurrence(n: int, rule: str) -> LaurentPoly:
    """F_n from F_0 = 0, F_1 = 1 using only the recurrence ``rule``.

    R22: F_n = x F_{n-1}(x,qs) + qs F_{n-2}(x,qs)
    R23: F_n = x F_{n-1} + q^(n-2) s F_{n-2}(x,s/q)
    R24: F_n = x F_{n-1} + q^(n-2) s x F_{n-3} + q^(n-2) s^2 F_{n-4}, seeded through F_3 by R22
    """
    if n < 0:
        raise ValueError("fib_by_recurrence needs n >= 0")
    seq = [ZERO, ONE]
    if rule == "R22":
        for j in range(2, n + 1):
            seq.append(X * seq[j - 1].substitute(s=_S_TIMES_Q) + _S_TIMES_Q * seq[j - 2].substitute(s=_S_TIMES_Q))
    elif rule == "R23":
        for j in range(2, n + 1):
            seq.append(X * seq[j - 1] + S.shift(q=j - 2) * seq[j - 2].substitute(s=_S_OVER_Q))
    elif rule == "R24":
        for j in range(2, min(n, 3) + 1):
            seq.append(X * seq[j - 1].substitute(s=_S_TIMES_Q) + _S_TIMES_Q * seq[j - 2].substitute(s=_S_TIMES_Q))
        for j in range(4, n + 1):
            c = S.shift(q=j - 2)
            seq.append(X * seq[j - 1] + c * X * seq[j - 3] + c * S * seq[j - 4])
    else:
        raise ValueError(f"unknown recurrence {rule!r}")
    return seq[n]


def classical_fib(n: int) -> LaurentPoly:
    """Classical F_n(x, s) = sum_k C(n-1-k, k) s^k x^(n-1-2k), n >= 0."""
    total = ZERO
    for k in range((n - 1) // 2 + 1) if n > 0 else ():
        total = total + LaurentPoly.monomial(binom(n - 1 - k, k), x=n - 1 - 2 * k, s=k)
    return total


def classical_lucas(n: int, star: bool = False) -> LaurentPoly:
    """Classical L_n(x, s) = sum_k n/(n-k) C(n-k, k) s^k x^(n-2k), n >= 0."""
    if n == 0:
        return ONE if star else LaurentPoly.const(2)
    total = ZERO
    for k in range(n // 2 + 1):
        # n/(n-k) C(n-k,k) = C(n-k,k) + C(n-k-1,k-1)
        c = binom(n - k, k) + binom(n - k - 1, k - 1)
        total = total + LaurentPoly.monomial(c, x=n - 2 * k, s=k)
    return total


def family_by_operator(kind: FamilyKind, n: int) -> LaurentPoly:
    """q-analogue obtained by pushing the classical polynomial through x -> x + (q-1)sD."""
    if n < 0:
        raise ValueError("family_by_operator needs n >= 0")
    if kind is FamilyKind.FIB:
        return umbral_apply(classical_fib(n))
    return umbral_apply(classical_lucas(n, star=kind is FamilyKind.LUCAS_STAR))


# ------------------------------------------------------------------ tilings


@dataclass(frozen=True)
class MorseWord:
    """Word over {a, b}; a is a monomino (length 1), b a domino (length 2)."""

    letters: str = ""

    def __post_init__(self):
        if set(self.letters) - {"a", "b"}:
            raise ValueError(f"MorseWord letters must be a or b: {self.letters!r}")

    @property
    def length(self) -> int:
        return len(self.letters) + self.letters.count("b")

    def __str__(self) -> str:
        return self.letters or "ε"


def morse_words(length: int) -> Iterator[MorseWord]:
    """All words of the given length, in lexicographic order."""
    if length < 0:
        return
    if length == 0:
        yield MorseWord("")
        return
    for tail in morse_words(length - 1):
        yield MorseWord("a" + tail.letters)
    for tail in morse_words(length - 2):
        yield MorseWord("b" + tail.letters)


def morse_weight(c: MorseWord) -> LaurentPoly:
    """q^(sum of positions of b) s^(#b) x^(#a)."""
    positions = [i for i, ch in enumerate(c.letters, start=1) if ch == "b"]
    k = len(positions)
    return LaurentPoly.monomial(1, x=len(c.letters) - k, s=k, q=sum(positions))


def _check_bound(n: int, bound: int) -> None:
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds enumeration bound {bound}")


def _tally_words(length: int) -> Counter:
    """Walk every word of the given length, counting (#a, #b, sum of b positions)."""
    out: Counter = Counter()

    def walk(rest: int, letters: int, na: int, nb: int, qsum: int) -> None:
        if rest == 0:
            out[(na, nb, qsum)] += 1
            return
        walk(rest - 1, letters + 1, na + 1, nb, qsum)
        if rest >= 2:
            walk(rest - 2, letters + 1, na, nb + 1, qsum + letters + 1)

    if length >= 0:
        walk(length, 0, 0, 0, 0)
    return out


def _weight_total(tally: Counter, extra_s: int = 0) -> LaurentPoly:
    return LaurentPoly({(na, nb + extra_s, qs): c for (na, nb, qs), c in tally.items()})


def morse_sum(n: int, bound: int = ENUMERATION_BOUND) -> LaurentPoly:
    """Total weight of all words of length n-1."""
    if n < 1:
        raise ValueError("morse_sum needs n >= 1")
    _check_bound(n, bound)
    return _weight_total(_tally_words(n - 1))


def circular_coverings(n: int) -> Iterator[tuple[MorseWord, bool]]:
    """Coverings of a circle of circumference n.

    Yields ``(word, False)`` when the marked point starts a tile and
    ``(inner, True)`` when it splits a domino b1 ... b0 around ``inner``.
    """
    for w in morse_words(n):
        yield w, False
    if n >= 2:
        for w in morse_words(n - 2):
            yield w, True


def circular_sum(n: int, bound: int = ENUMERATION_BOUND) -> LaurentPoly:
    """Total weight of the circular coverings; a split domino contributes s and no q."""
    if n < 1:
        raise ValueError("circular_sum needs n >= 1")
    _check_bound(n, bound)
    anchored = _weight_total(_tally_words(n))
    if n < 2:
        return anchored
    return anchored + _weight_total(_tally_words(n - 2), extra_s=1)


# ------------------------------------------------------- special values at x=1

_S_VALUES = {"-1": -ONE, "-1/q": -(Q ** -1), "-q": -Q}
_BASES = ("q", "1/q")


def evaluate_at(p: LaurentPoly, s: str, base: str = "q") -> LaurentPoly:
    """p(1, s, base) by direct substitution, e.g. ``evaluate_at(L, "-q", "1/q")`` is L(1, -q, 1/q)."""
    if s not in _S_VALUES or base not in _BASES:
        raise UnsupportedSpec(f"unknown evaluation point s={s}, base={base}")
    q_img = Q if base == "q" else Q ** -1
    return p.substitute(x=1, s=_S_VALUES[s], q=q_img)


def _qp(sign: int, *exps: int) -> LaurentPoly:
    total = ZERO
    for e in exps:
        total = total + LaurentPoly.monomial(sign, q=e)
    return total


def _sgn(n: int) -> int:
    return -1 if n % 2 else 1


# Each table maps a family index to its closed form, or None when the index is
# outside the rows the table covers.


def _t515(i: int):
    n, r = divmod(i, 3)
    if r == 0:
        return ZERO
    if r == 1:
        return _qp(_sgn(n), n * (3 * n - 1) // 2)
    return _qp(_sgn(n), n * (3 * n + 1) // 2)


def _lucas_mod3(i: int, third_exp: Callable[[int], int], last_exp: Callable[[int], int]):
    if i < 1:
        return None
    n, r = divmod(i, 3)
    if r == 0:
        return _qp(_sgn(n), n * (3 * n - 1) // 2, third_exp(n))
    if r == 1:
        return _qp(_sgn(n), n * (3 * n + 1) // 2)
    n += 1
    return _qp(_sgn(n), last_exp(n))


def _t516(i: int):
    return _lucas_mod3(i, lambda n: n * (3 * n + 1) // 2, lambda n: n * (3 * n - 1) // 2)


def _t521(i: int):
    return _lucas_mod3(i, lambda n: n * (3 * n - 5) // 2, lambda n: (n - 2) * (3 * n - 1) // 2)


def _even_mod6(i: int, row0: Callable[[int], LaurentPoly], row2: Callable[[int], LaurentPoly], row4):
    if i < 0 or i % 2:
        return None
    if i == 0:
        return ONE
    n, r = divmod(i, 6)
    if r == 0:
        return row0(n)
    if r == 2:
        return row2(n)
    return row4(n + 1)


def _odd_mod6(i: int, row1, row3, row5):
    if i < 0 or i % 2 == 0:
        return None
    n, r = divmod(i, 6)
    if r == 1:
        return row1(n)
    if r == 3:
        return row3(n)
    return row5(n + 1)


def _t517(i: int):
    return _even_mod6(
        i,
        lambda n: _qp(1, 6 * n * n - n, 6 * n * n + n),
        lambda n: _qp(-1, 6 * n * n + 5 * n + 1),
        lambda n: _qp(-1, 6 * n * n - 5 * n + 1),
    )


def _t518(i: int, as_printed: bool = False):
    # printed second exponent of L*_{6n+3} reads 6n^2+7+2
    second = (lambda n: 6 * n * n + 9) if as_printed else (lambda n: 6 * n * n + 7 * n + 2)
    return _odd_mod6(
        i,
        lambda n: _qp(1, 6 * n * n + n),
        lambda n: _qp(-1, 6 * n * n + 5 * n + 1, second(n)),
        lambda n: _qp(1, 6 * n * n - n),
    )


def _t522(i: int):
    return _even_mod6(
        i,
        lambda n: _qp(1, 6 * n * n - n, 6 * n * n - 5 * n),
        lambda n: _qp(-1, 6 * n * n - n - 1),
        lambda n: _qp(-1, 6 * n * n - 5 * n + 1),
    )


def _t523(i: int):
    return _odd_mod6(
        i,
        lambda n: _qp(1, 6 * n * n + n),
        lambda n: _qp(-1, 6 * n * n + 5 * n + 1, 6 * n * n + n - 1),
        lambda n: _qp(1, 6 * n * n - 7 * n + 1),
    )


@dataclass(frozen=True)
class SpecialTable:
    key: str
    kind: FamilyKind
    s: str
    claim: Callable[[int], LaurentPoly | None]

    def actual(self, i: int) -> LaurentPoly:
        return evaluate_at(family(self.kind, i), self.s, "q")


SPECIAL_TABLES: dict[str, SpecialTable] = {
    "eq5.15": SpecialTable("eq5.15", FamilyKind.FIB, "-1/q", lambda i: _t515(i) if i >= 0 else None),
    "eq5.16": SpecialTable("eq5.16", FamilyKind.LUCAS, "-1", _t516),
    "eq5.17": SpecialTable("eq5.17", FamilyKind.LUCAS_STAR, "-1", _t517),
    "eq5.18": SpecialTable("eq5.18", FamilyKind.LUCAS_STAR, "-1", _t518),
    "eq5.21": SpecialTable("eq5.21", FamilyKind.LUCAS, "-1/q", _t521),
    "eq5.22": SpecialTable("eq5.22", FamilyKind.LUCAS_STAR, "-1/q", _t522),
    "eq5.23": SpecialTable("eq5.23", FamilyKind.LUCAS_STAR, "-1/q", _t523),
}

TABLE_ERRATA = {
    "eq5.18": (
        "second exponent of L*_{6n+3}(1,-1,q) is printed as 6n^2+7+2; "
        "direct evaluation gives 6n^2+7n+2 (the two agree only at n=1)"
    ),
}


def printed_table_value(key: str, i: int) -> LaurentPoly | None:
    """Closed form exactly as printed, typos included."""
    if key == "eq5.18":
        return _t518(i, as_printed=True)
    return SPECIAL_TABLES[key].claim(i)


def special_value(kind: FamilyKind, n: int, s: str, base: str = "q") -> LaurentPoly:
    """Closed-form value of F_n, L_n or L*_n at x = 1 and the given s, in base q or 1/q.

    Base 1/q is read off the base-q tables by q -> 1/q, which swaps s = -1/q
    with s = -q.
    """
    if n < 0:
        raise UnsupportedSpec("special values are tabulated for n >= 0 only")
    if base == "1/q":
        swap = {"-1": "-1", "-q": "-1/q"}
        if s not in swap:
            raise UnsupportedSpec(f"no table for s={s} in base 1/q")
        return special_value(kind, n, swap[s], "q").substitute(q=Q ** -1)
    if base != "q":
        raise UnsupportedSpec(f"unknown base {base!r}")
    for table in SPECIAL_TABLES.values():
        if table.kind is kind and table.s == s:
            v = table.claim(n)
            if v is not None:
                return v
    if kind is FamilyKind.LUCAS and n == 0 and s in ("-1", "-1/q"):
        return LaurentPoly.const(2)
    if kind is FamilyKind.LUCAS_STAR and n > 0:
        return special_value(FamilyKind.LUCAS, n, s, base)
    raise UnsupportedSpec(f"no table for {kind.value} at s={s}, base={base}")


def pentagonal_list(count: int, parity: int) -> list[LaurentPoly]:
    """First ``count`` values L*_{2k+parity}(1, -1, q), by direct evaluation."""
    return [evaluate_at(lucas(2 * k + parity, star=True), "-1") for k in range(count)]

