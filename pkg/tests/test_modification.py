"""Rees-style presentation of the modified plane, its fibers, and smoothness."""
from __future__ import annotations

from fractions import Fraction

import pytest

from realforms.errors import FNotInIdeal, ForbiddenParameter, PointNotOnVariety
from realforms.gaussian import GaussianRational, I
from realforms.groebner import Ideal
from realforms.modification import (
    ModificationSpec,
    fiber_presentation,
    fiber_to_surface_map,
    jacobian_rank_at,
    match_fiber_to_surface,
    rees_presentation,
    rees_report,
    smoothness_report,
    standard_modification,
    surface_chart_point,
    surface_to_fiber_map,
)
from realforms.ring import Poly, VarTable, parse_poly
from realforms.surfaces import make_surface


# -- presentation of the modification ------------------------------------------


def test_rees_memberships_symbolic():
    rees = rees_presentation(standard_modification("symbolic"))
    table = rees.table
    assert rees.scale_vars == ("T1", "T2", "T3")
    t1, t2, t3 = (Poly.var(table, n) for n in rees.scale_vars)
    x, y = Poly.var(table, "x"), Poly.var(table, "y")
    assert rees.ideal.member(t1 - 1)
    assert rees.ideal.member(y * t2 - x * t3)


def test_rees_memberships_rational():
    for alpha in (2, Fraction(1, 2), -1):
        rees = rees_presentation(standard_modification(alpha))
        table = rees.table
        t1, t2, t3 = (Poly.var(table, n) for n in rees.scale_vars)
        x, y = Poly.var(table, "x"), Poly.var(table, "y")
        assert rees.ideal.member(t1 - 1)
        assert rees.ideal.member(y * t2 - x * t3)


def test_rees_report():
    assert rees_report().passed
    assert rees_report(standard_modification(3)).passed


def test_rees_blowup_chart_example():
    """Blowing up the plane origin and trivializing along f = x gives the
    classical chart relations T1 = 1, x*T2 = y."""
    table = VarTable(("x", "y"))
    x, y = Poly.var(table, "x"), Poly.var(table, "y")
    spec = ModificationSpec(
        table=table, base_vars=("x", "y"), generators=(x, y), divisor=x, units=()
    )
    rees = rees_presentation(spec)
    big = rees.table
    t1, t2 = (Poly.var(big, n) for n in rees.scale_vars)
    xx, yy = Poly.var(big, "x"), Poly.var(big, "y")
    expected = Ideal([t1 - 1, xx * t2 - yy], big)
    assert rees.ideal.equal(expected)


def test_divisor_must_lie_in_center_ideal():
    table = VarTable(("x", "y"))
    x, y = Poly.var(table, "x"), Poly.var(table, "y")
    with pytest.raises(FNotInIdeal):
        ModificationSpec(
            table=table, base_vars=("x", "y"),
            generators=(x, y), divisor=x + 1, units=(),
        )


def test_spec_from_json():
    spec = ModificationSpec.from_json({
        "vars": ["x", "y"],
        "generators": ["x^2 + y^2", "x"],
        "f": "x^2 + y^2",
        "constraints": [],
    })
    assert spec.divisor == parse_poly("x^2 + y^2", spec.table)
    assert len(spec.generators) == 2
    rees = rees_presentation(spec)
    assert rees.ideal.member(Poly.var(rees.table, "T1") - 1)


def test_standard_modification_forbids_bad_parameters():
    with pytest.raises(ForbiddenParameter):
        standard_modification(1)
    with pytest.raises(ForbiddenParameter):
        fiber_presentation(0)


# -- fibers ----------------------------------------------------------------------


def test_fiber_presentation_shape():
    fiber = fiber_presentation(2)
    assert "T1" not in fiber.table.names
    assert {"x", "y", "T2", "T3"} <= set(fiber.table.names)
    assert fiber.ideal.generators
    data = fiber.to_json()
    assert data["alpha"] == "2"
    assert data["relations"]


def test_match_fiber_to_surface_samples():
    for alpha in (2, 3, -1):
        report = match_fiber_to_surface(alpha)
        assert report.passed, [i.claim_id for i in report.failures()]


def test_match_fiber_symbolic():
    assert match_fiber_to_surface("symbolic").passed


def test_chart_maps_send_zero_to_zero():
    fiber = fiber_presentation(2)
    surface = make_surface(2, 2)
    to_surface = fiber_to_surface_map(fiber, surface)
    to_fiber = surface_to_fiber_map(surface, fiber)
    assert to_surface(Poly.zero(fiber.table)).is_zero()
    assert to_fiber(Poly.zero(surface.table)).is_zero()


# -- smoothness -------------------------------------------------------------------


def test_surface_chart_point_lies_on_surface():
    surface = make_surface(2, 2)
    point = surface_chart_point(2, 3, -1)
    for g in surface.generators:
        assert g.evaluate(point).is_zero()


def test_jacobian_rank_on_surface():
    surface = make_surface(2, 2)
    point = surface_chart_point(2, 1, 1)
    assert jacobian_rank_at(surface, point) == 2


def test_jacobian_rank_zero_locus():
    table = VarTable(("x", "y"))
    ideal = Ideal([Poly.var(table, "x") * Poly.var(table, "y")])
    assert jacobian_rank_at(ideal, {"x": 0, "y": 0}) == 0
    assert jacobian_rank_at(ideal, {"x": 0, "y": 5}) == 1


def test_jacobian_requires_point_on_variety():
    table = VarTable(("x", "y"))
    ideal = Ideal([Poly.var(table, "x") * Poly.var(table, "y")])
    with pytest.raises(PointNotOnVariety):
        jacobian_rank_at(ideal, {"x": 1, "y": 1})


def test_smoothness_reports():
    for alpha in (2, 3, -1, Fraction(1, 2)):
        report = smoothness_report(alpha)
        assert report.passed
        assert len(report.items) == 5


def test_gaussian_chart_points():
    surface = make_surface(2, 2)
    point = surface_chart_point(2, I, GaussianRational(1, 1))
    for g in surface.generators:
        assert g.evaluate(point).is_zero()
    assert jacobian_rank_at(surface, point) == 2
