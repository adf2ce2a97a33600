"""Divisor lattice, explicit lines, and the negative-curve enumeration."""
from __future__ import annotations

from fractions import Fraction

import pytest

from realforms.errors import IdenticalPoints, NotACurveClass
from realforms.gaussian import I
from realforms.intersection import (
    CLASS_AT_INFINITY,
    KIND_BOUNDARY,
    KIND_EXCEPTIONAL,
    KIND_LINE,
    DivisorClass,
    boundary_zigzag_report,
    canonical_form,
    conic_pencil_report,
    doubled_arithmetic_genus,
    enumerate_negative_classes,
    exceptional_class,
    form_at_center,
    intersection_matrix,
    intersection_number,
    line_class,
    line_through,
    negative_curves_report,
)
from realforms.ring import Poly
from realforms.surfaces import modified_plane_config

EXPECTED_LABELS = [
    "E(0,0)", "E(1,i)", "E(a,ai)", "E(1,-i)", "E(a,-ai)",
    "L(x+iy)", "L(x-iy)", "L(x-z)",
    "L((a+1)x-(a-1)iy-2az)", "L((a+1)x+(a-1)iy-2az)", "L(x-az)",
]

EXPECTED_CLASSES = [
    (0, (-1, 0, 0, 0, 0)),
    (0, (0, -1, 0, 0, 0)),
    (0, (0, 0, -1, 0, 0)),
    (0, (0, 0, 0, -1, 0)),
    (0, (0, 0, 0, 0, -1)),
    (1, (1, 1, 1, 0, 0)),
    (1, (1, 0, 0, 1, 1)),
    (1, (0, 1, 0, 1, 0)),
    (1, (0, 1, 0, 0, 1)),
    (1, (0, 0, 1, 1, 0)),
    (1, (0, 0, 1, 0, 1)),
]

# rows/columns ordered as EXPECTED_LABELS plus the line at infinity last
FROZEN_MATRIX = [
    [-1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0],
    [0, 0, -1, 0, 0, 1, 0, 0, 0, 1, 1, 0],
    [0, 0, 0, -1, 0, 0, 1, 1, 0, 1, 0, 0],
    [0, 0, 0, 0, -1, 0, 1, 0, 1, 0, 1, 0],
    [1, 1, 1, 0, 0, -2, 0, 0, 0, 0, 0, 1],
    [1, 0, 0, 1, 1, 0, -2, 0, 0, 0, 0, 1],
    [0, 1, 0, 1, 0, 0, 0, -1, 0, 0, 1, 1],
    [0, 1, 0, 0, 1, 0, 0, 0, -1, 1, 0, 1],
    [0, 0, 1, 1, 0, 0, 0, 0, 1, -1, 0, 1],
    [0, 0, 1, 0, 1, 0, 0, 1, 0, 0, -1, 1],
    [0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1],
]


# -- the lattice ------------------------------------------------------------


def test_exceptional_self_intersection():
    for i in range(5):
        assert exceptional_class(i).self_intersection() == -1


def test_line_class_intersections():
    boundary = line_class(0, 1, 2)
    assert boundary.self_intersection() == -2
    assert intersection_number(exceptional_class(0), boundary) == 1
    assert intersection_number(exceptional_class(3), boundary) == 0
    assert CLASS_AT_INFINITY.self_intersection() == 1
    assert intersection_number(CLASS_AT_INFINITY, exceptional_class(2)) == 0
    assert intersection_number(line_class(1, 3), line_class(2, 4)) == 1


def test_class_validation_and_text():
    with pytest.raises(ValueError):
        DivisorClass(1, (0, 0))
    assert str(line_class(0, 1, 2)) == "(1; 1,1,1,0,0)"


def test_doubled_genus():
    assert doubled_arithmetic_genus(line_class()) == 0
    assert doubled_arithmetic_genus(line_class(0, 1)) == 0
    assert doubled_arithmetic_genus(DivisorClass(3, (1, 1, 1, 1, 1))) == 2
    assert doubled_arithmetic_genus(DivisorClass(2, (0,) * 5)) == 0
    with pytest.raises(NotACurveClass):
        doubled_arithmetic_genus(exceptional_class(0))


# -- explicit lines -----------------------------------------------------------


def test_line_through_isotropic_points():
    config = modified_plane_config("symbolic", "symbolic", real_params=True)
    tbl = config.table
    x, y, z = (Poly.var(tbl, n) for n in ("x", "y", "z"))
    a = Poly.var(tbl, "a")

    plus = line_through(config.centers[0], config.centers[1])
    assert plus == canonical_form(x + y * I)
    assert form_at_center(plus, config.centers[2]).is_zero()

    cross = line_through(config.centers[3], config.centers[2])
    expected = (a + 1) * x + (a - 1) * y * I - 2 * a * z
    assert cross == canonical_form(expected)

    with pytest.raises(IdenticalPoints):
        line_through(config.centers[1], config.centers[1])


def test_line_through_rational_points():
    config = modified_plane_config(2, 2, real_params=True)
    tbl = config.table
    x, y, z = (Poly.var(tbl, n) for n in ("x", "y", "z"))
    cross = line_through(config.centers[3], config.centers[2])
    assert cross == canonical_form(3 * x + y * I - 4 * z)


# -- enumeration ----------------------------------------------------------------


def test_enumeration_symbolic_eleven_records():
    result = enumerate_negative_classes("symbolic")
    assert [r.label for r in result.records] == EXPECTED_LABELS
    got = [(r.cls.degree, r.cls.mults) for r in result.records]
    assert got == EXPECTED_CLASSES
    kinds = [r.kind for r in result.records]
    assert kinds == [KIND_EXCEPTIONAL] * 5 + [KIND_BOUNDARY] * 2 + [KIND_LINE] * 4
    assert not result.undetermined
    assert result.line_at_infinity.label == "L(z)"


def test_enumeration_surviving_line_patterns():
    result = enumerate_negative_classes("symbolic")
    patterns = {
        r.cls.mults[1:] for r in result.records if r.kind == KIND_LINE
    }
    assert patterns == {(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 0, 1), (0, 1, 1, 0)}


def test_enumeration_stable_under_degree_sweep():
    base = [r.label for r in enumerate_negative_classes("symbolic", d_max=1).records]
    for d_max in range(1, 7):
        result = enumerate_negative_classes("symbolic", d_max=d_max)
        assert [r.label for r in result.records] == base
        assert not result.undetermined


def test_enumeration_realizations_vanish_exactly_as_claimed():
    result = enumerate_negative_classes("symbolic")
    centers = result.config.centers
    for r in result.records:
        if r.form is None:
            continue
        for k, center in enumerate(centers):
            value = form_at_center(r.form, center)
            if k in r.through:
                assert value.is_zero(), (r.label, k)
            else:
                assert not value.is_zero(), (r.label, k)


def test_enumeration_rational_parameters():
    for alpha in (2, Fraction(1, 2), -1, Fraction(5, 2)):
        result = enumerate_negative_classes(alpha)
        assert len(result.records) == 11
        assert not result.undetermined


def test_frozen_intersection_matrix():
    result = enumerate_negative_classes("symbolic")
    matrix = intersection_matrix(result.vertices())
    assert matrix == FROZEN_MATRIX
    n = len(matrix)
    assert all(matrix[i][j] == matrix[j][i] for i in range(n) for j in range(n))
    assert [matrix[i][i] for i in range(n)] == [
        -1, -1, -1, -1, -1, -2, -2, -1, -1, -1, -1, 1
    ]


def test_matrix_matches_lattice_pairings():
    result = enumerate_negative_classes(2)
    verts = result.vertices()
    matrix = intersection_matrix(verts)
    for i, r in enumerate(verts):
        for j, s in enumerate(verts):
            assert matrix[i][j] == r.cls.intersect(s.cls)


# -- certified reports -------------------------------------------------------------


def test_boundary_zigzag():
    report = boundary_zigzag_report(2)
    assert report.passed
    assert boundary_zigzag_report("symbolic").passed


def test_conic_pencil():
    config = modified_plane_config("symbolic", "symbolic", real_params=True)
    assert conic_pencil_report(config).passed
    assert conic_pencil_report(
        modified_plane_config(3, 3, real_params=True)
    ).passed


def test_negative_curves_report_passes():
    assert negative_curves_report("symbolic").passed
    assert negative_curves_report(Fraction(2, 5)).passed


def test_enumeration_json_shape():
    result = enumerate_negative_classes(2, d_max=2)
    data = result.to_json()
    assert {"records", "line_at_infinity", "candidates_scanned",
            "intersection_matrix", "assumptions", "d_max"} <= set(data)
    assert len(data["records"]) == 11
    assert data["records"][0]["class"] == {
        "degree": 0, "multiplicities": [-1, 0, 0, 0, 0]
    }
