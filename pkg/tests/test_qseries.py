import pytest

from qlucas.exactalg import Q, LaurentPoly, NegativeExponent, QSeries
from qlucas.fiblucas import SPECIAL_TABLES, special_value
from qlucas.qseries import (
    BAILEY_PAIRS,
    COROLLARIES,
    MASTER_FORMULAS,
    S_CHOICES,
    ThetaSpec,
    bailey_check,
    bailey_pair,
    bailey_relation_sides,
    bailey_symbolic_sides,
    corollary_check,
    corollary_lhs,
    infinite_product,
    inv_pochhammer,
    lucas_value_sum,
    master_formula_check,
    master_formula_sides,
    pentagonal_check,
    pentagonal_sides,
    theta_sum,
    vandermonde_check,
    vandermonde_finite_sides,
    vandermonde_limit_sides,
)
from qlucas.qcore import q_pochhammer


def series(coeffs, order):
    return QSeries(list(coeffs) + [0] * (order + 1 - len(coeffs)), order)


def brute_theta(spec, order, reach=60):
    c = [0] * (order + 1)
    for sign, a, b, cc in spec.terms:
        for k in range(-reach, reach + 1):
            e = a * k * k + b * k + cc
            if 0 <= e <= order:
                c[e] += sign
    return QSeries(c, order)


# --- products and theta sums


def test_product_examples():
    assert infinite_product("euler", 7) == series([1, -1, -1, 0, 0, 1, 0, 1], 7)
    assert infinite_product("minus_q", 5) == series([1, 1, 1, 2, 2, 3], 5)
    assert infinite_product("q2_over_q", 5) == infinite_product("minus_q", 5)
    with pytest.raises(ValueError):
        infinite_product("nope", 5)


def test_euler_product_is_pentagonal():
    n = 200
    c = [0] * (n + 1)
    for k in range(-20, 21):
        e = k * (3 * k - 1) // 2
        if e <= n:
            c[e] += (-1) ** k
    assert infinite_product("euler", n) == QSeries(c, n)


def test_minus_q_counts_distinct_part_partitions():
    n = 40
    dp = [1] + [0] * n
    for part in range(1, n + 1):
        for t in range(n, part - 1, -1):
            dp[t] += dp[t - part]
    assert infinite_product("minus_q", n) == QSeries(dp, n)


def test_inv_pochhammer_matches_polynomial_inverse():
    for n in range(8):
        assert inv_pochhammer(n, 30) == QSeries.from_poly(q_pochhammer(n), 30).inverse()


def test_theta_examples():
    cor1 = COROLLARIES[1].theta
    assert theta_sum(cor1, 16) == series([1, 0, -1, 0, 0, 0, -1] + [0] * 7 + [1, 0, 1], 16)
    alt = ThetaSpec(((1, 12, -2, 0), (-1, 12, 10, 2)))
    # sum_k (-1)^k q^(3k^2-k) begins 1 - q^2 - q^4 + q^10 + q^14
    assert theta_sum(alt, 14) == series([1, 0, -1, 0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1], 14)
    assert theta_sum(cor1, 0) == QSeries.one(0)


def test_theta_spec_validation():
    with pytest.raises(ValueError):
        ThetaSpec(((1, 0, 1, 0),))
    with pytest.raises(ValueError):
        ThetaSpec(((2, 1, 1, 0),))
    with pytest.raises(NegativeExponent):
        theta_sum(ThetaSpec(((1, 1, 0, -1),)), 5)


@pytest.mark.parametrize("i", sorted(COROLLARIES))
def test_theta_window_is_sound(i):
    spec = COROLLARIES[i].theta
    for order in (0, 1, 7, 50, 150):
        assert theta_sum(spec, order) == brute_theta(spec, order)


# --- Bailey pairs and Vandermonde


def test_bailey_example_n1():
    # 1/(q;q)_1^2 - q/(q;q)_2 = 1/(q;q)_2
    n = 30
    lhs = inv_pochhammer(1, n) * inv_pochhammer(1, n) - inv_pochhammer(2, n).shift(1)
    assert lhs == inv_pochhammer(2, n)
    beta, total = bailey_relation_sides(bailey_pair("p5.4", "1"), 1, n)
    assert beta == total == lhs


def test_bailey_symbolic_small():
    lhs, rhs = bailey_symbolic_sides(0, 2)
    assert lhs == rhs
    assert bailey_check("p5_5", 0, 10).passed


@pytest.mark.parametrize("pair_id", BAILEY_PAIRS)
@pytest.mark.parametrize("s", S_CHOICES)
def test_bailey_pairs(pair_id, s):
    r = bailey_check(pair_id, 6, 40, s)
    assert r.passed, r.counterexample
    assert r.id == "eq" + pair_id[1:]


def test_bailey_pair_rejects_bad_input():
    with pytest.raises(ValueError):
        bailey_pair("p5.9")
    with pytest.raises(ValueError):
        bailey_pair("p5.4", "q")


def test_vandermonde_examples():
    lhs, rhs = vandermonde_finite_sides(2, 0, 0)
    assert lhs == rhs == LaurentPoly.from_q_coeffs([1, 1, 2, 1, 1])
    assert vandermonde_check(1, 0, 0, 10).passed
    lhs, rhs = vandermonde_limit_sides(1, 0, 20)
    assert lhs == rhs
    with pytest.raises(ValueError):
        vandermonde_finite_sides(1, 1, 0)


def test_vandermonde_limit_cutoff_is_sound():
    order = 40
    for i in range(4):
        for k in range(4):
            lhs, _ = vandermonde_limit_sides(i, k, order)
            longer = QSeries.zero(order)
            for s in range(i, 20):
                longer = longer + (inv_pochhammer(s - i, order) * inv_pochhammer(s + i + k, order)).shift(s * s + k * s)
            assert lhs == longer


# --- master formulas, corollaries, pentagonal


@pytest.mark.parametrize("which", sorted(MASTER_FORMULAS))
@pytest.mark.parametrize("m", [0, 1])
def test_master_formulas(which, m):
    r = master_formula_check(which, m, 40)
    assert r.passed, r.counterexample


def test_master_formula_accepts_underscore_ids():
    assert master_formula_check("eq5_11", 0, 20).id == "eq5.11"


@pytest.mark.parametrize("which", sorted(MASTER_FORMULAS))
def test_cutoffs_are_sound(which):
    for m in (0, 1):
        assert master_formula_sides(which, m, 60) == master_formula_sides(which, m, 60, extra=2)


@pytest.mark.parametrize("i", sorted(COROLLARIES))
def test_corollaries(i):
    r = corollary_check(i, 60)
    assert r.passed, r.counterexample
    assert corollary_lhs(i, 60) == corollary_lhs(i, 60, extra=2)


def test_corollary_6_small_order():
    assert corollary_lhs(6, 4) == series([1, 1, 1, 2, 2], 4)


def test_corollaries_6_and_7_agree_with_distinct_parts():
    n = 100
    dq = infinite_product("minus_q", n)
    assert corollary_lhs(6, n) == dq
    assert corollary_lhs(7, n) == dq


def test_corollary_index_range():
    with pytest.raises(ValueError):
        corollary_check(9)


def test_pentagonal_examples():
    assert infinite_product("euler", 15) == series([1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1], 15)
    assert pentagonal_check("even", 15).passed
    assert pentagonal_check("odd", 12).passed
    assert pentagonal_check("even", 0).passed
    for parity in (0, 1):
        assert pentagonal_sides(parity, 80) == pentagonal_sides(parity, 80, extra=2)


def test_lucas_value_sum_stops_after_quiet_tail():
    calls = []

    def w(i):
        calls.append(i)
        return Q ** (i * i)

    assert lucas_value_sum(w, 10) == series([1, 1, 0, 0, 1, 0, 0, 0, 0, 1], 10)
    assert max(calls) < 10


def test_tables_agree_with_direct_values_used_here():
    # the series side never reads the closed-form tables; make sure both agree anyway
    for key, table in SPECIAL_TABLES.items():
        for i in range(30):
            if table.claim(i) is not None:
                assert special_value(table.kind, i, table.s) == table.actual(i), (key, i)
