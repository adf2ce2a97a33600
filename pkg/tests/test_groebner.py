"""Budgeted Buchberger engine: bases, normal forms, membership, elimination."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from realforms.errors import BudgetExceeded
from realforms.gaussian import I, GaussianRational
from realforms.groebner import (
    BUDGET_ENV_VAR,
    LEX,
    Ideal,
    MonomialOrder,
    buchberger,
    certified_unit,
    elimination_order,
    exact_quotient,
    member_with_denominators,
    normal_form,
    step_budget,
)
from realforms.ring import Poly, VarTable, parse_poly

XY = VarTable(("x", "y"))
XYZ = VarTable(("x", "y", "z"))


def p2(text: str) -> Poly:
    return parse_poly(text, XY)


def p3(text: str) -> Poly:
    return parse_poly(text, XYZ)


def rand_poly(rng: random.Random, table: VarTable, terms: int = 3) -> Poly:
    out = Poly.zero(table)
    for _ in range(rng.randint(1, terms)):
        exps = tuple(rng.randint(0, 2) for _ in table.names)
        coeff = GaussianRational(
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
            Fraction(rng.randint(-2, 2)),
        )
        out = out + Poly(table, {exps: coeff})
    return out


# -- frozen basis oracles -------------------------------------------------------


def same_polys(basis, expected) -> bool:
    return len(basis) == len(expected) and all(
        any(g == e for g in basis) for e in expected
    )


def test_lex_basis_oracle():
    basis = buchberger([p2("x^2 - y"), p2("x*y - 1")])
    assert same_polys(basis, [p2("x - y^2"), p2("y^3 - 1")])


def test_single_generator_basis():
    assert list(buchberger([p2("x")])) == [p2("x")]


def test_unit_ideal_collapses_to_one():
    basis = buchberger([p2("x"), p2("x + 1")])
    assert list(basis) == [p2("1")]


def test_normal_forms_against_oracle():
    basis = buchberger([p2("x^2 - y"), p2("x*y - 1")])
    assert normal_form(p2("y^3"), basis) == p2("1")
    assert normal_form(p2("x"), basis) == p2("y^2")
    assert normal_form(Poly.zero(XY), basis).is_zero()
    # a variable outside the basis survives division untouched
    g = [p3("x - y^2"), p3("y^3 - 1")]
    assert normal_form(p3("z"), g) == p3("z")


def test_membership():
    ideal = Ideal([p2("x^2 - y"), p2("x*y - 1")])
    assert ideal.member(p2("y^3 - 1"))
    assert ideal.member(Poly.zero(XY))
    combo = p2("x^2 - y") * p2("x + y") + p2("x*y - 1") * p2("y^2")
    assert ideal.member(combo)
    assert not ideal.member(p2("x"))
    assert not Ideal([p2("x^2")]).member(p2("x"))


def test_ideal_equality():
    ideal = Ideal([p2("x^2 - y"), p2("x*y - 1")])
    assert ideal.equal(Ideal(list(buchberger(ideal.generators))))
    assert not Ideal([p2("x")]).equal(Ideal([p2("x^2")]))
    assert Ideal([p2("x^2")]).contains_ideal(Ideal([p2("x^3"), p2("x^2 * y")]))


def test_elimination_inverts_parametrization():
    table = VarTable(("t", "x", "y"))
    tx1 = parse_poly("t*x - 1", table)
    yt = parse_poly("y - t", table)
    eliminated = Ideal([tx1, yt]).eliminate(("t",))
    assert all(g.degree_in("t") == 0 for g in eliminated.generators)
    assert eliminated.equal(Ideal([parse_poly("x*y - 1", table)], table))


def test_elimination_blowup_chart():
    table = VarTable(("t", "x", "y", "T1", "T2"))
    gens = [
        parse_poly("T1 - x*t", table),
        parse_poly("T2 - y*t", table),
        parse_poly("1 - x*t", table),
    ]
    eliminated = Ideal(gens).eliminate(("t",))
    expected = Ideal(
        [parse_poly("T1 - 1", table), parse_poly("x*T2 - y", table)], table
    )
    assert eliminated.equal(expected)


def test_eliminate_nothing_returns_same_ideal():
    ideal = Ideal([p2("x^2 - y")])
    assert ideal.eliminate(()).equal(ideal)


def test_elimination_order_blocks():
    order = elimination_order(("x",))
    key = order.key_fn(XY)
    # any power of the front variable dominates the back block
    assert key((1, 0)) > key((0, 5))
    assert key((2, 0)) > key((1, 7))
    lex_key = LEX.key_fn(XY)
    assert lex_key((1, 0)) > lex_key((0, 5))
    with pytest.raises(ValueError):
        MonomialOrder("mystery-order")


def test_gaussian_coefficients_in_bases():
    basis = buchberger([p2("x - i*y"), p2("x + i*y")])
    assert same_polys(basis, [p2("x"), p2("y")])
    ideal = Ideal([p2("x^2 + y^2")])
    assert ideal.member(p2("x + i*y") * p2("x - i*y"))


# -- division helpers -------------------------------------------------------------


def test_exact_quotient():
    q = exact_quotient(p2("x^2 - y^2"), p2("x - y"))
    assert q == p2("x + y")
    assert exact_quotient(p2("x^2 + y"), p2("x")) is None
    assert exact_quotient(Poly.zero(XY), p2("x")).is_zero()
    scaled = exact_quotient(p2("2*x + 2*y"), p2("x + y"))
    assert scaled == p2("2")


def test_certified_unit():
    a = Poly.var(XY, "x")
    one_minus = 1 - a
    units = (a, one_minus)
    assert certified_unit(a * a * one_minus * 3, units)
    assert certified_unit(Poly.const(XY, Fraction(-7, 2)), units)
    assert not certified_unit(Poly.zero(XY), units)
    assert not certified_unit(a + 1, units)


def test_member_with_denominators():
    # y*v - a*b is in (y*v*x - a*b*x) only after clearing the unit x
    table = VarTable(("x", "y"))
    ideal = Ideal([parse_poly("x*y - x", table)])
    target = parse_poly("y - 1", table)
    assert member_with_denominators(target, ideal, [Poly.var(table, "x")]) == 1
    assert member_with_denominators(
        parse_poly("y", table), ideal, [Poly.var(table, "x")]
    ) is None
    inside = parse_poly("x*y - x", table)
    assert member_with_denominators(inside, ideal, [Poly.var(table, "x")]) == 0


# -- budget ----------------------------------------------------------------------


def test_step_budget_override(monkeypatch):
    monkeypatch.delenv(BUDGET_ENV_VAR, raising=False)
    assert step_budget() == 2_000_000
    monkeypatch.setenv(BUDGET_ENV_VAR, "123")
    assert step_budget() == 123
    monkeypatch.setenv(BUDGET_ENV_VAR, "zero")
    with pytest.raises(ValueError):
        step_budget()
    monkeypatch.setenv(BUDGET_ENV_VAR, "-5")
    with pytest.raises(ValueError):
        step_budget()


def test_budget_exhaustion_raises(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, "3")
    with pytest.raises(BudgetExceeded):
        buchberger([p2("x^3 - y^2"), p2("x*y^2 - x"), p2("y^4 - x^2")])


# -- randomized properties ---------------------------------------------------------


def _s_polynomial(f: Poly, g: Poly, key):
    lf = max(f.terms, key=key)
    lg = max(g.terms, key=key)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = Poly(f.table, {tuple(l - a for l, a in zip(lcm, lf)): f.terms[lf].inverse()})
    mg = Poly(g.table, {tuple(l - a for l, a in zip(lcm, lg)): g.terms[lg].inverse()})
    return mf * f - mg * g


def test_groebner_properties_random():
    """100 randomized rounds: every S-polynomial of a computed basis reduces
    to zero, normal forms are idempotent, and membership is stable under
    random generator combinations."""
    rng = random.Random(20260816)
    key = LEX.key_fn(XY)
    for _ in range(100):
        gens = [rand_poly(rng, XY) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        basis = buchberger(gens)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                s = _s_polynomial(basis[i], basis[j], key)
                assert normal_form(s, basis).is_zero()
        probe = rand_poly(rng, XY)
        reduced = normal_form(probe, basis)
        assert normal_form(reduced, basis) == reduced
        ideal = Ideal(gens)
        combo = gens[0] * rand_poly(rng, XY)
        for g in gens[1:]:
            combo = combo + g * rand_poly(rng, XY)
        assert ideal.member(combo)
        assert ideal.member(probe) == ideal.member(probe + combo)
