"""q-integers, Gaussian binomials, (q;q)_n, Rogers-Szego polynomials and q-calculus.

Memo tables are built behind ``functools.lru_cache`` (which serialises its own
bookkeeping), so concurrent callers see exactly the sequential results.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .exactalg import ONE, Q, S, X, ZERO, LaurentPoly

__all__ = [
    "q_int",
    "q_binomial",
    "q_binomial_by_division",
    "q_pochhammer",
    "p_poly",
    "p_poly_forms",
    "rogers_szego",
    "q_derivative",
    "umbral_power",
    "umbral_apply",
    "q_hermite",
    "q_catalan",
    "binom",
]


def binom(n: int, k: int) -> int:
    """Integer binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def q_int(n: int) -> LaurentPoly:
    """[n] = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise ValueError(f"q_int needs n >= 0, got {n}")
    return LaurentPoly.from_q_coeffs([1] * n)


@lru_cache(maxsize=None)
def _qbin_row(n: int) -> tuple[LaurentPoly, ...]:
    if n == 0:
        return (ONE,)
    prev = _qbin_row(n - 1)
    row = [ONE]
    for k in range(1, n):
        # [n,k] = [n-1,k-1] + q^k [n-1,k]
        row.append(prev[k - 1] + prev[k].shift(q=k))
    row.append(ONE)
    return tuple(row)


def q_binomial(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial [n choose k]_q; zero for k outside [0, n]."""
    if n < 0:
        raise ValueError(f"q_binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return ZERO
    return _qbin_row(n)[k]


@lru_cache(maxsize=None)
def q_pochhammer(n: int) -> LaurentPoly:
    """(q;q)_n = (1-q)(1-q^2)...(1-q^n)."""
    if n < 0:
        raise ValueError(f"q_pochhammer needs n >= 0, got {n}")
    if n == 0:
        return ONE
    return q_pochhammer(n - 1) * (ONE - Q ** n)


def q_binomial_by_division(n: int, k: int) -> LaurentPoly:
    """Same as :func:`q_binomial` but via exact division of Pochhammer products."""
    if k < 0 or k > n:
        return ZERO
    return q_pochhammer(n).exact_div(q_pochhammer(k) * q_pochhammer(n - k))


def p_poly_forms(n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """(product form, q-binomial sum form) of p_n(x, s)."""
    prod = ONE
    for j in range(n):
        prod = prod * (X + S.shift(q=j))
    total = ZERO
    for k in range(n + 1):
        total = total + q_binomial(n, k).shift(x=n - k, s=k, q=k * (k - 1) // 2)
    return prod, total


def p_poly(n: int) -> LaurentPoly:
    """p_n(x, s) = (x+s)(x+qs)...(x+q^(n-1)s), cross-checked against its q-binomial expansion."""
    prod, total = p_poly_forms(n)
    if prod != total:
        raise AssertionError(f"product and sum forms of p_{n} disagree")
    return prod


@lru_cache(maxsize=None)
def rogers_szego(n: int) -> LaurentPoly:
    """r_n(x, s) = sum_k [n,k] x^k s^(n-k)."""
    if n < 0:
        raise ValueError(f"rogers_szego needs n >= 0, got {n}")
    total = ZERO
    for k in range(n + 1):
        total = total + q_binomial(n, k).shift(x=k, s=n - k)
    return total


def q_derivative(p: LaurentPoly) -> LaurentPoly:
    """Jackson derivative in x: x^n -> [n] x^(n-1); s and q ride along as scalars."""
    out: dict = {}
    for (ex, es, eq), c in p.terms.items():
        for j in range(ex):
            key = (ex - 1, es, eq + j)
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return LaurentPoly(out)


_QM1_S = (Q - ONE) * S


def _apply_a(h: LaurentPoly) -> LaurentPoly:
    return X * h + _QM1_S * q_derivative(h)


@lru_cache(maxsize=None)
def umbral_power(k: int) -> LaurentPoly:
    """A^k(1) for A = x + (q-1) s D."""
    if k == 0:
        return ONE
    return _apply_a(umbral_power(k - 1))


def umbral_apply(p: LaurentPoly) -> LaurentPoly:
    """The linear map x^k s^j q^e -> s^j q^e A^k(1)."""
    by_x: dict[int, dict] = {}
    for (ex, es, eq), c in p.terms.items():
        by_x.setdefault(ex, {})[(0, es, eq)] = c
    total = ZERO
    for k, coeff in by_x.items():
        total = total + LaurentPoly(coeff) * umbral_power(k)
    return total


def q_hermite(n: int, s_value: LaurentPoly = S) -> LaurentPoly:
    """H_n(x, s|q) = (x - s D)^n 1.

    ``s_value`` replaces s inside the operator, so ``q_hermite(n, (Q - 1) * S)``
    is H_n(x, (q-1)s|q) without needing a polynomial-valued substitution.
    """
    h = ONE
    for _ in range(n):
        h = X * h - s_value * q_derivative(h)
    return h


def q_catalan(n: int) -> LaurentPoly:
    """C_n(q) = [2n choose n] / [n+1]."""
    return q_binomial(2 * n, n).exact_div(q_int(n + 1))
