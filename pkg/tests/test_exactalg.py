import pytest
from hypothesis import given, settings, strategies as st

from qlucas.exactalg import (
    ONE,
    Q,
    S,
    X,
    ZERO,
    LaurentPoly,
    NegativeExponent,
    NonExactDivision,
    NonUnitConstantTerm,
    QSeries,
    SubstitutionError,
    poly_arith,
    series_arith,
)

F3 = X ** 2 + Q * S


def qpoly(*coeffs):
    return LaurentPoly.from_q_coeffs(list(coeffs))


# --- examples


def test_mul_monomials():
    assert poly_arith(X, X, "mul") == X ** 2
    assert (X * X).terms == {(2, 0, 0): 1}


def test_add_cancels_to_canonical_form():
    r = poly_arith(F3, -(Q * S), "add")
    assert r == X ** 2
    assert (0, 1, 1) not in r.terms


def test_mul_distributes():
    assert poly_arith(F3, X, "mul") == X ** 3 + Q * S * X


def test_substitute_examples():
    assert F3.substitute(s=S * Q ** -1) == X ** 2 + S
    assert F3.substitute(x=1, s=-(Q ** -1)) == ZERO
    assert (Q ** 2 + Q ** -1).substitute(q=Q ** -1) == Q ** -2 + Q


def test_substitute_is_simultaneous():
    assert (X * S).substitute(x=S, s=X) == X * S


def test_substitute_rejects_polynomial_targets():
    with pytest.raises(SubstitutionError):
        F3.substitute(s=S + Q)


def test_exact_div_examples():
    assert qpoly(1, 1, 2, 1, 1).exact_div(qpoly(1, 1, 1)) == qpoly(1, 0, 1)
    assert F3.exact_div(ONE) == F3
    with pytest.raises(NonExactDivision):
        qpoly(1, 1).exact_div(qpoly(1, -1))


def test_exact_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        F3.exact_div(ZERO)


def test_x_exponent_never_negative():
    with pytest.raises(NegativeExponent):
        LaurentPoly.monomial(x=-1)


def test_negative_power_of_unit_monomial():
    assert (S * Q) ** -2 == LaurentPoly.monomial(s=-2, q=-2)
    with pytest.raises(NonExactDivision):
        (ONE + Q) ** -1


def test_render_golden():
    p = X ** 4 + qpoly(1, 1, 1, 1) * S * X ** 2 + qpoly(0, 1, 0, 1) * S ** 2
    assert p.render() == "x^4 + (q^3+q^2+q+1)*s*x^2 + (q^3+q)*s^2"
    assert ZERO.render() == "0"
    assert (-X + 3).render() == "-x + 3"


def test_series_examples():
    geo = QSeries([1] * 11, 10)
    assert series_arith(QSeries.from_poly(ONE - Q, 10), geo, "mul") == QSeries.one(10)
    assert series_arith(QSeries.from_poly(ONE - Q, 4), None, "inverse") == QSeries([1] * 5, 4)
    poch3 = (ONE - Q) * (ONE - Q ** 2) * (ONE - Q ** 3)
    assert QSeries.from_poly(poch3, 3).inverse() == QSeries([1, 1, 2, 3], 3)


def test_series_inverse_needs_unit_constant():
    with pytest.raises(NonUnitConstantTerm):
        QSeries.from_poly(2 + Q, 5).inverse()
    with pytest.raises(NonUnitConstantTerm):
        QSeries.from_poly(Q, 5).inverse()


def test_series_rejects_negative_q_powers():
    with pytest.raises(NegativeExponent):
        QSeries.from_poly(Q ** -1, 5)


def test_series_truncates_at_order():
    s = QSeries.from_poly(ONE + Q ** 7, 5)
    assert s.to_poly() == ONE
    assert s.render().endswith("O(q^6)")


def test_mixed_order_uses_smaller():
    a = QSeries.one(10) + QSeries.one(4)
    assert a.order == 4


# --- properties

exps = st.integers(-5, 5)
monos = st.tuples(st.integers(0, 5), exps, exps)
polys = st.dictionaries(monos, st.integers(-9, 9), max_size=8).map(LaurentPoly)
q_only = st.dictionaries(st.integers(0, 12), st.integers(-9, 9), max_size=8).map(LaurentPoly.from_q_coeffs)


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == ZERO
    assert (a - a).terms == {}


# s and q may carry negative exponents, so their images must be units
unit_targets = st.sampled_from([1, -1, S, -S, Q ** -1, -(Q ** -1), S * Q ** 2, -(S ** -1)])
x_targets = st.sampled_from([0, 1, 2, -3, X, S * Q, X ** 2])


@settings(max_examples=60)
@given(polys, polys, polys, x_targets, unit_targets, unit_targets)
def test_substitute_is_homomorphism(a, b, c, vx, vs, vq):
    f = lambda p: p.substitute(x=vx, s=vs, q=vq)
    assert f(a * b + c) == f(a) * f(b) + f(c)


@given(polys, polys)
def test_exact_div_roundtrip(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a


@given(q_only, st.integers(0, 15))
def test_from_poly_coefficients(p, n):
    s = QSeries.from_poly(p, n)
    qc = p.q_coefficients()
    assert [s[i] for i in range(n + 1)] == [qc.get(i, 0) for i in range(n + 1)]


@given(q_only, q_only, st.integers(0, 12))
def test_series_mul_matches_poly_mul(a, b, n):
    assert QSeries.from_poly(a, n) * QSeries.from_poly(b, n) == QSeries.from_poly(a * b, n)


@given(q_only, st.integers(0, 12))
def test_series_inverse_roundtrip(p, n):
    u = ONE + Q * p
    assert QSeries.from_poly(u, n) * QSeries.from_poly(u, n).inverse() == QSeries.one(n)
