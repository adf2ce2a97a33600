"""Affine modification: pulling the plane apart along a divisor.

Given an ideal I = (g_1, ..., g_k) in the coordinate ring of the plane and a
member f of I, the modified surface is presented by scale variables T_i tied
to the ratios g_i/f.  The presentation is computed exactly by eliminating an
inverse variable t from the relations T_i - g_i*t and 1 - f*t.

The distinguished example here modifies the plane along
I = (x^2 + y^2, x*(x-1)*(x-a), y*(x-1)*(x-a)) with f = x^2 + y^2; its fibers
over admissible parameter values match the diagonal member of the surface
family, and the match is certified by explicit mutually inverse maps.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FNotInIdeal, PointNotOnVariety
from .gaussian import GaussianRational, I as IMAG
from .groebner import Ideal, member_with_denominators
from .reports import CertifiedReport
from .ring import Poly, RatFunc, RingMap, VarTable, compose, parse_poly
from .surfaces import (
    ALPHA,
    COORDS,
    SurfacePresentation,
    _cook_param,
    _param_names,
    _param_poly,
    _param_units,
    make_surface,
    param_str,
)

SCALE_PREFIX = "T"
INVERSE_NAME = "t"


def _transport(p: Poly, table: VarTable) -> Poly:
    """Rewrite p over another table containing all its variables."""
    positions = []
    for name in p.table.names:
        positions.append(table.index(name) if name in table.names else None)
    terms: dict = {}
    for e, c in p.terms.items():
        new_e = [0] * len(table)
        for k, exp in enumerate(e):
            if not exp:
                continue
            if positions[k] is None:
                raise ValueError(f"variable {p.table.names[k]} missing from target table")
            new_e[positions[k]] = exp
        terms[tuple(new_e)] = c
    return Poly(table, terms)


@dataclass(frozen=True)
class ModificationSpec:
    """Plane ideal, chosen divisor, and parameter constraints."""

    table: VarTable
    base_vars: tuple[str, ...]
    generators: tuple[Poly, ...]
    divisor: Poly
    units: tuple[Poly, ...]

    def __post_init__(self):
        ideal = Ideal(list(self.generators), self.table)
        if member_with_denominators(self.divisor, ideal, self.units) is None:
            raise FNotInIdeal("the divisor must lie in the center ideal")

    @staticmethod
    def from_json(data: dict) -> "ModificationSpec":
        names = tuple(data["vars"])
        table = VarTable(names)
        generators = tuple(parse_poly(s, table) for s in data["generators"])
        divisor = parse_poly(data["f"], table)
        units = tuple(parse_poly(s, table) for s in data.get("constraints", ()))
        base = tuple(data.get("base_vars", names))
        return ModificationSpec(table, base, generators, divisor, units)


def standard_modification(alpha=ALPHA) -> ModificationSpec:
    """The distinguished modification of the plane."""
    cooked = _cook_param(alpha, ALPHA)
    names = ("x", "y") + _param_names(cooked)
    table = VarTable(names)
    x = Poly.var(table, "x")
    y = Poly.var(table, "y")
    a = _param_poly(table, cooked)
    tangency = (x - 1) * (x - a)
    return ModificationSpec(
        table=table,
        base_vars=("x", "y"),
        generators=(x * x + y * y, x * tangency, y * tangency),
        divisor=x * x + y * y,
        units=_param_units(table, (cooked,)),
    )


@dataclass
class ReesPresentation:
    table: VarTable
    ideal: Ideal
    scale_vars: tuple[str, ...]
    spec: ModificationSpec

    def to_json(self) -> dict:
        return {
            "variables": list(self.table.names),
            "scale_variables": list(self.scale_vars),
            "relations": [str(g) for g in self.ideal.generators],
        }


def rees_presentation(spec: ModificationSpec) -> ReesPresentation:
    """Eliminate the inverse variable from T_i - g_i*t, 1 - f*t."""
    k = len(spec.generators)
    scale = tuple(f"{SCALE_PREFIX}{i + 1}" for i in range(k))
    base = tuple(spec.base_vars)
    # any non-base names (symbolic parameters) go last, where lex is cheapest
    extras = tuple(n for n in spec.table.names if n not in base)
    big = VarTable((INVERSE_NAME,) + base + scale + extras,
                   generic=spec.table.generic)
    t = Poly.var(big, INVERSE_NAME)
    relations = []
    for i, g in enumerate(spec.generators):
        relations.append(Poly.var(big, scale[i]) - _transport(g, big) * t)
    relations.append(Poly.const(big, 1) - _transport(spec.divisor, big) * t)
    eliminated = Ideal(relations, big).eliminate((INVERSE_NAME,))
    small = VarTable(base + scale + extras, generic=spec.table.generic)
    basis = [_transport(g, small) for g in eliminated.generators]
    return ReesPresentation(small, Ideal(basis, small), scale, spec)


def rees_report(spec: ModificationSpec | None = None) -> CertifiedReport:
    """Structural facts of the distinguished modification's presentation."""
    report = CertifiedReport("def-3.4-rees", "def-3.4-rees")
    if spec is None:
        spec = standard_modification()
    ideal = Ideal(list(spec.generators), spec.table)
    report.add(
        "divisor-in-center-ideal",
        member_with_denominators(spec.divisor, ideal, spec.units) is not None,
        witness=str(spec.divisor),
    )
    rees = rees_presentation(spec)
    report.add(
        "presentation-computed",
        len(rees.ideal.generators) > 0,
        witness=rees.to_json(),
    )
    table = rees.table
    t1 = Poly.var(table, rees.scale_vars[0])
    report.add(
        "first-scale-variable-is-one",
        rees.ideal.member(t1 - 1),
        witness=f"{rees.scale_vars[0]} - 1",
    )
    x = Poly.var(table, "x")
    y = Poly.var(table, "y")
    t2 = Poly.var(table, rees.scale_vars[1])
    t3 = Poly.var(table, rees.scale_vars[2])
    report.add(
        "scale-syzygy",
        rees.ideal.member(y * t2 - x * t3),
        witness=f"y*{rees.scale_vars[1]} - x*{rees.scale_vars[2]}",
    )
    return report


# ---------------------------------------------------------------------------
# fibers of the modified family
# ---------------------------------------------------------------------------


@dataclass
class FiberPresentation:
    table: VarTable
    ideal: Ideal
    alpha: object
    denominators: tuple[Poly, ...]

    def to_json(self) -> dict:
        return {
            "alpha": param_str(self.alpha),
            "variables": list(self.table.names),
            "relations": [str(g) for g in self.ideal.generators],
        }


def fiber_presentation(alpha) -> FiberPresentation:
    """The affine chart of the modification where the first scale is 1."""
    cooked = _cook_param(alpha, ALPHA)
    spec = standard_modification(cooked)
    rees = rees_presentation(spec)
    first = rees.scale_vars[0]
    kept = rees.scale_vars[1:]
    base = tuple(spec.base_vars)
    extras = tuple(n for n in spec.table.names if n not in base)
    small = VarTable(base + kept + extras, generic=spec.table.generic)
    basis = []
    for g in rees.ideal.generators:
        h = g.specialize({first: 1})
        if not h.is_zero():
            basis.append(_transport(h, small))
    x = Poly.var(small, "x")
    y = Poly.var(small, "y")
    return FiberPresentation(
        table=small,
        ideal=Ideal(basis, small),
        alpha=cooked,
        denominators=(x * x + y * y,),
    )


def fiber_to_surface_map(fiber: FiberPresentation,
                         surface: SurfacePresentation) -> RingMap:
    """Pullback along the chart identification from the surface to the fiber."""
    tbl = surface.table
    x = RatFunc.var(tbl, "x")
    u = RatFunc.var(tbl, "u")
    a = RatFunc(_param_poly(tbl, surface.alpha))
    plane_x = x + u
    plane_y = x * IMAG - u * IMAG
    cubic = plane_x * (plane_x - 1) * (plane_x - a)
    denom = 4 * x * u
    images = {
        "x": plane_x,
        "y": plane_y,
        "T2": cubic / denom,
        "T3": plane_y * (plane_x - 1) * (plane_x - a) / denom,
    }
    return RingMap(
        fiber.table, tbl,
        [images[n] if n in images else RatFunc.var(tbl, n)
         for n in fiber.table.names],
    )


def surface_to_fiber_map(surface: SurfacePresentation,
                         fiber: FiberPresentation) -> RingMap:
    """Pullback along the inverse identification from the fiber to the surface."""
    tbl = fiber.table
    x = RatFunc.var(tbl, "x")
    y = RatFunc.var(tbl, "y")
    a = RatFunc(_param_poly(tbl, fiber.alpha))
    half = Fraction(1, 2)
    first = (x - y * IMAG) * half
    second = (x + y * IMAG) * half
    images = {
        "x": first,
        "u": second,
        "y": first * (first - 1) * (first - a) / second,
        "v": second * (second - 1) * (second - a) / first,
    }
    return RingMap(
        surface.table, tbl,
        [images[n] if n in images else RatFunc.var(tbl, n)
         for n in surface.table.names],
    )


def match_fiber_to_surface(alpha) -> CertifiedReport:
    """Certify that the scale-one chart of the modification and the diagonal
    surface are isomorphic away from the chart divisors, by explicit mutually
    inverse maps."""
    report = CertifiedReport("def-3.4-fiber", "def-3.4-fiber")
    fiber = fiber_presentation(alpha)
    surface = make_surface(fiber.alpha, fiber.alpha,
                           real_params=not isinstance(fiber.alpha, Fraction))
    to_surface = fiber_to_surface_map(fiber, surface)
    to_fiber = surface_to_fiber_map(surface, fiber)

    surface_denoms = tuple(surface.denominators) + (
        Poly.var(surface.table, "x"), Poly.var(surface.table, "u"),
    )
    fiber_denoms = tuple(fiber.denominators)

    ok = True
    powers = []
    for g in fiber.ideal.generators:
        image = to_surface(g)
        k = member_with_denominators(image.num, surface.ideal, surface_denoms)
        powers.append(k)
        ok = ok and k is not None
    report.add("fiber-relations-pull-back", ok, witness={"powers": powers})

    vanish = all(to_fiber(g).is_zero() for g in surface.generators)
    report.add("surface-relations-vanish-identically", vanish)

    divisor_image = to_surface(
        Poly.var(fiber.table, "x") ** 2 + Poly.var(fiber.table, "y") ** 2
    )
    four_xu = 4 * Poly.var(surface.table, "x") * Poly.var(surface.table, "u")
    report.add("divisor-pulls-back-to-chart-product",
               divisor_image == RatFunc(four_xu),
               witness=str(divisor_image.num))

    round_fiber = compose(to_surface, to_fiber)
    ok = True
    for name, image in zip(round_fiber.source.names, round_fiber.images):
        delta = image.num - Poly.var(fiber.table, name) * image.den
        if member_with_denominators(delta, fiber.ideal, fiber_denoms) is None:
            ok = False
            break
    report.add("roundtrip-fixes-fiber-chart", ok)

    round_surface = compose(to_fiber, to_surface)
    ok = True
    for name, image in zip(round_surface.source.names, round_surface.images):
        delta = image.num - Poly.var(surface.table, name) * image.den
        if member_with_denominators(delta, surface.ideal, surface_denoms) is None:
            ok = False
            break
    report.add("roundtrip-fixes-surface-chart", ok)
    return report


# ---------------------------------------------------------------------------
# smoothness spot checks
# ---------------------------------------------------------------------------


def _as_scalar(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational(Fraction(value))


def surface_chart_point(alpha, x0, u0, beta=None) -> dict:
    """An exact point of the surface from chart coordinates with x0*u0 != 0."""
    alpha = _as_scalar(alpha)
    beta = alpha if beta is None else _as_scalar(beta)
    x0 = _as_scalar(x0)
    u0 = _as_scalar(u0)
    y0 = x0 * (x0 - _as_scalar(1)) * (x0 - alpha) * u0.inverse()
    v0 = u0 * (u0 - _as_scalar(1)) * (u0 - beta) * x0.inverse()
    return {"x": x0, "y": y0, "u": u0, "v": v0}


def _rank(rows: list[list[GaussianRational]]) -> int:
    work = [list(r) for r in rows]
    rank = 0
    cols = len(work[0]) if work else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(work)) if not work[r][col].is_zero()), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = work[rank][col].inverse()
        work[rank] = [v * inv for v in work[rank]]
        for r in range(len(work)):
            if r != rank and not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [v - factor * pv for v, pv in zip(work[r], work[rank])]
        rank += 1
    return rank


def jacobian_rank_at(presentation, point: dict, coords=None) -> int:
    """Exact rank of the Jacobian of the presentation's relations at a point.

    The point must satisfy every relation (PointNotOnVariety otherwise) and
    must give a value to every variable occurring in them.
    """
    if isinstance(presentation, Ideal):
        generators = presentation.generators
    else:
        generators = presentation.ideal.generators
    values = {n: _as_scalar(v) for n, v in point.items()}
    if coords is None:
        coords = [n for n in generators[0].table.names if n in values]
    for g in generators:
        if not g.evaluate(values).is_zero():
            raise PointNotOnVariety(f"relation {g} does not vanish at the point")
    rows = [
        [g.derivative(n).evaluate(values) for n in coords]
        for g in generators
    ]
    return _rank(rows)


DEFAULT_CHART_SAMPLES = ((1, 1), (2, 1), (-1, 1), (-1, 2), (3, -1))


def smoothness_report(alpha, samples=DEFAULT_CHART_SAMPLES) -> CertifiedReport:
    """Jacobian rank 2 at exact sample points of the diagonal surface."""
    report = CertifiedReport("def-3.4-fiber", "def-3.4-fiber")
    alpha = Fraction(alpha)
    surface = make_surface(alpha, alpha)
    for x0, u0 in samples:
        point = surface_chart_point(alpha, x0, u0)
        rank = jacobian_rank_at(surface, point)
        report.add(
            f"jacobian-rank-2-at-({x0},{u0})",
            rank == 2,
            witness={name: str(val) for name, val in point.items()},
        )
    return report
