import dataclasses

import pytest

from qlucas.exactalg import Q, S, X
from qlucas.qcore import q_binomial
from qlucas.fiblucas import fib
from qlucas.identities import (
    REGISTRY,
    GridConfig,
    Identity,
    UnknownIdentity,
    check_carlitz,
    check_catalan,
    check_inversion,
    check_misc,
    check_shift,
    get_identity,
    iter_points,
    run_identity,
    run_many,
)
from qlucas.report import COUNTEREXAMPLE_TERMS, render_difference


def test_inversion_examples():
    for n in (0, 2):
        assert check_inversion("thm3_1", n).passed
    assert check_inversion("thm3_2", 3).passed


def test_catalan_examples():
    assert check_catalan("eq3_12", 0).passed
    assert check_catalan("eq3_12", 1).passed
    assert check_catalan("eq3_13", 2).passed


def test_carlitz_examples():
    for n in range(6):
        assert check_carlitz("eq4_5", n, 0).passed
    assert check_carlitz("eq4_5", 2, 1).passed
    assert check_carlitz("eq4_3", 2).passed


def test_shift_examples():
    assert check_shift("eq4_9", m=1).passed
    assert check_shift("eq4_7", n=1, m=0).passed
    assert check_shift("eq4_13", n=2).passed


def test_misc_examples():
    assert check_misc("eq2_12", 4).passed
    assert check_misc("eq5_31", 1, 0).passed
    assert check_misc("classical_q1", 10).passed


def test_symbolic_x_counterexample_is_surfaced():
    r = check_shift("eq4_9", m=1, symbolic_x=True)
    assert not r.passed
    assert r.counterexample == "x^2 - x"
    assert r.params == {"m": 1, "x": "symbolic"}
    # the same instance at x = 1 holds
    assert (fib(3) - fib(2)).substitute(x=1) == Q * S


def test_unknown_id():
    with pytest.raises(UnknownIdentity):
        get_identity("no.such.id")
    with pytest.raises(KeyError):
        run_identity("eq9.9", n=1)


def test_registry_metadata():
    assert len(REGISTRY) == len(set(REGISTRY))
    for ident in REGISTRY.values():
        assert ident.equation and ident.grid_doc and ident.summary
    assert REGISTRY["eq4.7"].x1_only and REGISTRY["eq4.7"].note
    assert not REGISTRY["eq3.1"].x1_only
    assert "6n^2+7n+2" in REGISTRY["eq5.18"].note
    for expected in ("eq3.1", "eq4.13", "cor5.6", "eq5.9", "eq5.31", "classical.q1"):
        assert expected in REGISTRY


def test_grid_respects_config():
    cfg = GridConfig(max_n=10)
    assert [p["n"] for p in REGISTRY["eq3.1"].points(cfg)] == list(range(11))
    assert REGISTRY["eq2.7"].points(GridConfig(max_n=40))[-1] == {"n": 16}
    ms = {p["m"] for p in REGISTRY["eq4.7"].points(GridConfig(max_n=2, m_values=(-3, 5)))}
    assert ms == {-3, 5}
    # m outside {0, 1} is filtered for identities that only have those cases
    assert REGISTRY["eq5.11"].points(GridConfig(m_values=(0, 7))) == [{"m": 0, "order": 100}]


def test_every_identity_passes_small_grid():
    cfg = GridConfig(max_n=6, order=30)
    failures = [r for r in run_many(iter_points(REGISTRY, cfg)) if not r.passed]
    assert failures == []


def test_reports_are_deterministic():
    cfg = GridConfig(max_n=5, order=20)
    pts = list(iter_points(["eq4.7", "cor5.3", "eq2.16"], cfg))
    a = [r.to_dict() for r in run_many(pts)]
    b = [r.to_dict() for r in run_many(pts)]
    for r in a + b:
        r.pop("elapsed_ms")
    assert a == b


def _perturbed(base_id: str, new_id: str) -> Identity:
    base = REGISTRY[base_id]

    def sides(**kw):
        # inject an off-by-one q exponent into the right side
        return [(lhs, rhs.shift(q=1)) for lhs, rhs in base.sides(**kw)]

    return dataclasses.replace(base, id=new_id, sides=sides)


@pytest.fixture
def perturbed(monkeypatch):
    monkeypatch.setitem(REGISTRY, "eq3.1.perturbed", _perturbed("eq3.1", "eq3.1.perturbed"))
    return "eq3.1.perturbed"


def test_perturbed_identity_fails(perturbed):
    r = run_identity(perturbed, n=3)
    assert not r.passed
    assert r.counterexample and r.counterexample != "0"


def test_counterexample_truncation():
    big = sum((X ** k for k in range(50)), X * 0)
    short = render_difference(big)
    assert short.count("+") < COUNTEREXAMPLE_TERMS + 2
    assert render_difference(big, full=True).count("+") == 49


def test_parallel_preserves_order():
    cfg = GridConfig(max_n=8, order=30)
    pts = list(iter_points(["eq4.5", "cor5.1", "eq3.1", "eq5.4"], cfg))
    serial = [(r.id, r.params, r.status) for r in run_many(pts)]
    par = [(r.id, r.params, r.status) for r in run_many(pts, parallel=True, workers=2)]
    assert par == serial


def test_every_identity_passes_default_grid():
    # the full declared grid at CLI defaults (max_n 20, order 100)
    failures = [(r.id, r.params, r.counterexample) for r in run_many(iter_points(REGISTRY, GridConfig())) if not r.passed]
    assert failures == []


def test_printed_mm_exponent_is_a_typo():
    from qlucas.identities import _c2

    def sides(n, m, exponent):
        lhs = sum(
            (q_binomial(n, k).shift(q=_c2(k)).scale((-1) ** k) * fib(2 * n + m - k) for k in range(n + 1)),
            X * 0,
        )
        rhs = fib(m).substitute(s=S * Q ** -n).shift(s=n, q=_c2(n) + exponent)
        return lhs.substitute(x=1), rhs.substitute(x=1)

    lhs, rhs = sides(2, 3, 3 * 2)
    assert lhs == rhs
    lhs, rhs = sides(2, 3, 3 * 3)
    assert lhs != rhs
