"""Exact arithmetic: sparse Laurent polynomials in x, s, q and truncated q-series.

Coefficients are Python ints throughout, so nothing ever overflows or rounds.

A :class:`LaurentPoly` is a finite map from exponent triples ``(e_x, e_s, e_q)``
to nonzero integers.  ``e_x`` is never negative; ``e_s`` and ``e_q`` may be.
Storage is canonical (no zero coefficients), so two polynomials are equal
exactly when their term maps are equal.

A :class:`QSeries` is a power series in q known through ``q**order``.
"""

from __future__ import annotations

from collections import defaultdict
from types import MappingProxyType
from typing import Iterable, Mapping, Union

Exponent = tuple[int, int, int]

__all__ = [
    "LaurentPoly",
    "QSeries",
    "NonExactDivision",
    "NonUnitConstantTerm",
    "NegativeExponent",
    "SubstitutionError",
    "poly_arith",
    "series_arith",
    "X",
    "S",
    "Q",
    "ONE",
    "ZERO",
]


class NonExactDivision(ArithmeticError):
    """The divisor does not divide the dividend in the Laurent ring."""


class NonUnitConstantTerm(ArithmeticError):
    """A series with constant term other than +1 or -1 was inverted."""


class NegativeExponent(ValueError):
    """A negative power of q reached a place that only holds power series."""


class SubstitutionError(ValueError):
    """A substitution target is not a single integer-coefficient monomial."""


def _clean(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if v}


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None):
        clean = {}
        if terms:
            for (ex, es, eq), c in terms.items():
                if ex < 0:
                    raise NegativeExponent(f"negative power of x: {ex}")
                c = int(c)
                if c:
                    key = (int(ex), int(es), int(eq))
                    clean[key] = clean.get(key, 0) + c
            clean = _clean(clean)
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict) -> "LaurentPoly":
        # terms must already be canonical
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, coeff: int = 1, x: int = 0, s: int = 0, q: int = 0) -> "LaurentPoly":
        return cls({(x, s, q): coeff})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def from_q_coeffs(cls, coeffs: Mapping[int, int] | Iterable[int]) -> "LaurentPoly":
        """Polynomial in q alone; ``coeffs`` maps exponent -> coefficient or is a list from q^0."""
        if not isinstance(coeffs, Mapping):
            coeffs = dict(enumerate(coeffs))
        return cls({(0, 0, e): c for e, c in coeffs.items()})

    # ------------------------------------------------------------------ access

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return MappingProxyType(self._terms)

    def coefficient(self, ex: int = 0, es: int = 0, eq: int = 0) -> int:
        return self._terms.get((ex, es, eq), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_q_only(self) -> bool:
        return all(ex == 0 and es == 0 for ex, es, _ in self._terms)

    def q_coefficients(self) -> dict[int, int]:
        """Exponent -> coefficient map of a polynomial in q alone."""
        if not self.is_q_only():
            raise ValueError(f"not a polynomial in q alone: {self}")
        return {eq: c for (_, _, eq), c in self._terms.items()}

    def degree(self, var: str) -> int:
        i = "xsq".index(var)
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(k[i] for k in self._terms)

    def min_degree(self, var: str) -> int:
        i = "xsq".index(var)
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(k[i] for k in self._terms)

    # -------------------------------------------------------------- arithmetic

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) < len(other._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly._wrap(out)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: int) -> "LaurentPoly":
        if not c:
            return ZERO
        return LaurentPoly._wrap({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((bx, bs, bq), bc), = b.items()
            return LaurentPoly._wrap(
                {(ex + bx, es + bs, eq + bq): c * bc for (ex, es, eq), c in a.items()}
            )
        out: dict = defaultdict(int)
        for (bx, bs, bq), bc in b.items():
            for (ex, es, eq), c in a.items():
                out[(ex + bx, es + bs, eq + bq)] += c * bc
        return LaurentPoly._wrap(_clean(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise NonExactDivision(f"cannot invert non-monomial {self}")
            ((ex, es, eq), c), = self._terms.items()
            if c not in (1, -1) or ex:
                raise NonExactDivision(f"{self} is not a unit")
            return LaurentPoly._wrap({(0, es * n, eq * n): c ** (-n)})
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, x: int = 0, s: int = 0, q: int = 0) -> "LaurentPoly":
        """Multiply by the monomial x^x s^s q^q."""
        return LaurentPoly({(ex + x, es + s, eq + q): c for (ex, es, eq), c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # ------------------------------------------------------------ substitution

    def substitute(
        self,
        x: Union["LaurentPoly", int, None] = None,
        s: Union["LaurentPoly", int, None] = None,
        q: Union["LaurentPoly", int, None] = None,
    ) -> "LaurentPoly":
        """Simultaneously replace variables by single-term monomials (or 0).

        ``p.substitute(s=S * Q**-1)`` gives p(x, s/q, q); ``q=Q**-1`` sends q to 1/q.
        """
        images = []
        for name, target in (("x", x), ("s", s), ("q", q)):
            images.append(None if target is None else _monomial_image(name, target))

        out: dict = defaultdict(int)
        for key, c in self._terms.items():
            coeff = c
            ex = es = eq = 0
            for i, img in enumerate(images):
                e = key[i]
                if img is None:
                    if i == 0:
                        ex += e
                    elif i == 1:
                        es += e
                    else:
                        eq += e
                    continue
                tc, tx, ts, tq = img
                if tc == 0:
                    if e < 0:
                        raise SubstitutionError(f"{'xsq'[i]} -> 0 with negative exponent {e}")
                    if e > 0:
                        coeff = 0
                        break
                    continue
                if e < 0 and tc not in (1, -1):
                    raise SubstitutionError(
                        f"{'xsq'[i]}^{e} needs an invertible coefficient, got {tc}"
                    )
                coeff *= tc ** e if e >= 0 else tc ** (-e)
                ex += tx * e
                es += ts * e
                eq += tq * e
            if coeff:
                if ex < 0:
                    raise SubstitutionError("substitution produced a negative power of x")
                out[(ex, es, eq)] += coeff
        return LaurentPoly._wrap(_clean(out))

    # ------------------------------------------------------------------ division

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Return c with divisor * c == self, or raise NonExactDivision."""
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return ZERO
        # Strip monomial content so both sides are honest polynomials; then a
        # single-divisor division with a monomial order has zero remainder iff
        # the divisor divides.
        bx, bs, bq = (min(k[i] for k in divisor._terms) for i in range(3))
        ax, as_, aq = (min(k[i] for k in self._terms) for i in range(3))
        b = {(ex - bx, es - bs, eq - bq): c for (ex, es, eq), c in divisor._terms.items()}
        rem = {(ex - ax, es - as_, eq - aq): c for (ex, es, eq), c in self._terms.items()}
        lead = max(b)
        lead_c = b[lead]
        quot: dict = {}
        while rem:
            top = max(rem)
            tc = rem[top]
            mono = (top[0] - lead[0], top[1] - lead[1], top[2] - lead[2])
            if min(mono) < 0 or tc % lead_c:
                raise NonExactDivision(f"{divisor} does not divide {self}")
            qc = tc // lead_c
            quot[mono] = qc
            for (ex, es, eq), c in b.items():
                key = (ex + mono[0], es + mono[1], eq + mono[2])
                v = rem.get(key, 0) - qc * c
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        shift = (ax - bx, as_ - bs, aq - bq)
        result = {(ex + shift[0], es + shift[1], eq + shift[2]): c for (ex, es, eq), c in quot.items()}
        if any(k[0] < 0 for k in result):
            raise NonExactDivision(f"{divisor} does not divide {self} (x in denominator)")
        return LaurentPoly._wrap(result)

    # ---------------------------------------------------------------- printing

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms ordered by (e_x descending, e_s ascending, e_q ascending)."""
        return sorted(self._terms.items(), key=lambda kv: (-kv[0][0], kv[0][1], kv[0][2]))

    def render(self, max_groups: int | None = None) -> str:
        """Canonical text form, e.g. ``x^3 + (q^2+q)*s*x``.

        Terms sharing the same power of x and s are grouped; the group's
        q-polynomial is printed with descending powers of q.
        """
        if not self._terms:
            return "0"
        groups: dict[tuple[int, int], dict[int, int]] = {}
        for (ex, es, eq), c in self.sorted_terms():
            groups.setdefault((ex, es), {})[eq] = c
        pieces = []
        items = list(groups.items())
        truncated = max_groups is not None and len(items) > max_groups
        if truncated:
            items = items[:max_groups]
        for (ex, es), qc in items:
            pieces.append(_render_group(ex, es, qc, alone=len(groups) == 1))
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        if truncated:
            out += f" + ... ({len(groups) - max_groups} more)"
        return out

    __str__ = render

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r})"


def _monomial_image(name: str, target) -> tuple[int, int, int, int]:
    if isinstance(target, int):
        return (target, 0, 0, 0)
    if not isinstance(target, LaurentPoly):
        raise SubstitutionError(f"unsupported target for {name}: {target!r}")
    if target.is_zero():
        return (0, 0, 0, 0)
    if not target.is_monomial():
        raise SubstitutionError(f"target for {name} must be a single term, got {target}")
    ((tx, ts, tq), tc), = target._terms.items()
    return (tc, tx, ts, tq)


def _pow_str(var: str, e: int) -> str:
    return var if e == 1 else f"{var}^{e}"


def _render_qpoly(qc: dict[int, int]) -> str:
    out = ""
    for eq in sorted(qc, reverse=True):
        c = qc[eq]
        mag = abs(c)
        if eq == 0:
            body = str(mag)
        elif mag == 1:
            body = _pow_str("q", eq)
        else:
            body = f"{mag}*{_pow_str('q', eq)}"
        if not out:
            out = body if c > 0 else "-" + body
        else:
            out += ("+" if c > 0 else "-") + body
    return out


def _render_group(ex: int, es: int, qc: dict[int, int], alone: bool) -> str:
    mono = [_pow_str("s", es)] if es else []
    if ex:
        mono.append(_pow_str("x", ex))
    mono_str = "*".join(mono)
    if len(qc) == 1:
        ((eq, c),) = qc.items()
        parts = []
        if eq:
            parts.append(_pow_str("q", eq))
        if mono_str:
            parts.append(mono_str)
        body = "*".join(parts)
        if not body:
            return str(c)
        if c == 1:
            return body
        if c == -1:
            return "-" + body
        return f"{c}*{body}"
    coef = _render_qpoly(qc)
    if not mono_str:
        return coef if alone else f"({coef})"
    return f"({coef})*{mono_str}"


X = LaurentPoly.monomial(x=1)
S = LaurentPoly.monomial(s=1)
Q = LaurentPoly.monomial(q=1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def poly_arith(a: LaurentPoly, b, op: str) -> LaurentPoly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (b an int) on Laurent polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


class QSeries:
    """Power series in q truncated after ``q**order``.

    Binary operations between series of different orders produce a result
    of the smaller order; nothing past the order is ever consulted.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[int], order: int):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = [int(c) for c in coeffs][: order + 1]
        cs.extend([0] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls((1,), order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> "QSeries":
        if exponent < 0:
            raise NegativeExponent(f"q^{exponent} is not a power series term")
        cs = [0] * (order + 1)
        if exponent <= order:
            cs[exponent] = coeff
        return cls(cs, order)

    @classmethod
    def from_poly(cls, p: LaurentPoly, order: int) -> "QSeries":
        """Series of a polynomial in q alone with nonnegative exponents."""
        cs = [0] * (order + 1)
        for e, c in p.q_coefficients().items():
            if e < 0:
                raise NegativeExponent(f"q^{e} in {p}")
            if e <= order:
                cs[e] += c
        return cls(cs, order)

    def to_poly(self) -> LaurentPoly:
        return LaurentPoly.from_q_coeffs(self.coeffs)

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j]

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return QSeries(self.coeffs[: order + 1], order)

    def _align(self, other: "QSeries"):
        n = min(self.order, other.order)
        return n, self.coeffs[: n + 1], other.coeffs[: n + 1]

    def __add__(self, other: "QSeries") -> "QSeries":
        n, a, b = self._align(other)
        return QSeries([u + v for u, v in zip(a, b)], n)

    def __sub__(self, other: "QSeries") -> "QSeries":
        n, a, b = self._align(other)
        return QSeries([u - v for u, v in zip(a, b)], n)

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self.coeffs], self.order)

    def scale(self, c: int) -> "QSeries":
        return QSeries([c * v for v in self.coeffs], self.order)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, int):
            return self.scale(other)
        n, a, b = self._align(other)
        out = [0] * (n + 1)
        nz = [(j, v) for j, v in enumerate(b) if v]
        for i, u in enumerate(a):
            if not u:
                continue
            for j, v in nz:
                if i + j > n:
                    break
                out[i + j] += u * v
        return QSeries(out, n)

    __rmul__ = __mul__

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (k >= 0)."""
        if k < 0:
            raise NegativeExponent(f"shift by q^{k}")
        return QSeries([0] * k + list(self.coeffs[: max(self.order + 1 - k, 0)]), self.order)

    def inverse(self) -> "QSeries":
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise NonUnitConstantTerm(f"constant term {c0} is not a unit")
        a = self.coeffs
        n = self.order
        inv = [0] * (n + 1)
        inv[0] = c0
        for k in range(1, n + 1):
            acc = 0
            for j in range(1, k + 1):
                if a[j]:
                    acc += a[j] * inv[k - j]
            inv[k] = -c0 * acc
        return QSeries(inv, n)

    def valuation(self) -> int | None:
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def render(self, max_terms: int | None = None) -> str:
        nz = [(j, c) for j, c in enumerate(self.coeffs) if c]
        more = 0
        if max_terms is not None and len(nz) > max_terms:
            more = len(nz) - max_terms
            nz = nz[:max_terms]
        out = ""
        for j, c in nz:
            mag = abs(c)
            if j == 0:
                body = str(mag)
            elif mag == 1:
                body = _pow_str("q", j)
            else:
                body = f"{mag}*{_pow_str('q', j)}"
            if not out:
                out = body if c > 0 else "-" + body
            else:
                out += (" + " if c > 0 else " - ") + body
        if more:
            out += f" + ... ({more} more)"
        return (out or "0") + f" + O(q^{self.order + 1})"

    __str__ = render

    def __repr__(self) -> str:
        return f"QSeries({self.render(10)!r})"


def series_arith(a: QSeries, b, op: str, order: int | None = None) -> QSeries:
    """Dispatch ``add``, ``sub``, ``mul``, ``inverse`` (b ignored) or ``from_poly`` (a is a LaurentPoly)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inverse":
        return a.inverse()
    if op == "from_poly":
        if order is None:
            raise ValueError("from_poly needs an order")
        return QSeries.from_poly(a, order)
    raise ValueError(f"unknown op {op!r}")
