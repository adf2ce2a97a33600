"""Budgeted Buchberger engine over Q(i) with lex and block-elimination orders.

All computations are exact.  An Ideal caches one reduced Groebner basis per
monomial order; caches are write-once, so sharing Ideal objects across threads
is safe (recomputing a basis is idempotent).

A global reduction-step budget guards against runaway eliminations; it can be
overridden with the REALFORMS_STEP_BUDGET environment variable.
"""
from __future__ import annotations

import os
from typing import Callable, Iterable, Sequence

from .errors import BudgetExceeded
from .gaussian import GaussianRational, ONE
from .ring import Poly, VarTable

DEFAULT_STEP_BUDGET = 2_000_000
BUDGET_ENV_VAR = "REALFORMS_STEP_BUDGET"


def step_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_STEP_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV_VAR} must be positive")
    return value


class MonomialOrder:
    """lex over the VarTable order, or a block order with front variables first.

    The block order compares the front exponents lexicographically; ties are
    broken by graded reverse lex on the remaining exponents.  Any monomial
    containing a front variable outranks every monomial free of them, which is
    what elimination needs, and the graded tail keeps eliminations tractable.
    """

    __slots__ = ("kind", "front")

    def __init__(self, kind: str, front: Iterable[str] = ()):
        if kind not in ("lex", "elim"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.front = tuple(front)
        if kind == "elim" and not self.front:
            raise ValueError("elimination order needs front variables")

    def key_fn(self, table: VarTable) -> Callable[[tuple], tuple]:
        if self.kind == "lex":
            return lambda exps: exps
        front_idx = tuple(table.index(n) for n in self.front)
        front_set = set(front_idx)
        back_idx = tuple(k for k in range(len(table)) if k not in front_set)
        back_rev = tuple(reversed(back_idx))

        def key(exps: tuple) -> tuple:
            back_degree = sum(exps[k] for k in back_idx)
            return (
                tuple(exps[k] for k in front_idx),
                back_degree,
                tuple(-exps[k] for k in back_rev),
            )

        return key

    def cache_token(self):
        return (self.kind, self.front)

    def __eq__(self, other):
        if not isinstance(other, MonomialOrder):
            return NotImplemented
        return self.cache_token() == other.cache_token()

    def __hash__(self):
        return hash(self.cache_token())

    def __repr__(self):
        if self.kind == "lex":
            return "MonomialOrder(lex)"
        return f"MonomialOrder(elim, front={self.front!r})"


LEX = MonomialOrder("lex")


def elimination_order(front: Iterable[str]) -> MonomialOrder:
    return MonomialOrder("elim", front)


# ---------------------------------------------------------------------------
# division
# ---------------------------------------------------------------------------


class _Budget:
    __slots__ = ("left",)

    def __init__(self, limit: int):
        self.left = limit

    def spend(self, amount: int = 1):
        self.left -= amount
        if self.left < 0:
            raise BudgetExceeded(
                f"Groebner step budget exhausted (set {BUDGET_ENV_VAR} to raise it)"
            )


def _leading(terms: dict, key) -> tuple:
    return max(terms, key=key)


def _divides(d: tuple, e: tuple) -> bool:
    return all(a <= b for a, b in zip(d, e))


def normal_form(p: Poly, basis: Sequence[Poly], order: MonomialOrder = LEX,
                budget: _Budget | None = None) -> Poly:
    """Full multivariate division remainder of p by the basis list."""
    if budget is None:
        budget = _Budget(step_budget())
    key = order.key_fn(p.table)
    prepared = [
        (_leading(g.terms, key), g) for g in basis if not g.is_zero()
    ]
    work = dict(p.terms)
    remainder: dict = {}
    while work:
        e = _leading(work, key)
        c = work[e]
        for lt, g in prepared:
            if _divides(lt, e):
                budget.spend()
                shift = tuple(a - b for a, b in zip(e, lt))
                factor = c / g.terms[lt]
                for ge, gc in g.terms.items():
                    te = tuple(a + b for a, b in zip(ge, shift))
                    s = work.get(te)
                    s = -(factor * gc) if s is None else s - factor * gc
                    if s.is_zero():
                        work.pop(te, None)
                    else:
                        work[te] = s
                break
        else:
            remainder[e] = c
            del work[e]
    return Poly(p.table, remainder)


def _monic(p: Poly, key) -> Poly:
    lt = _leading(p.terms, key)
    c = p.terms[lt]
    if c.is_one():
        return p
    inv = c.inverse()
    return Poly(p.table, {e: k * inv for e, k in p.terms.items()})


def _s_polynomial(f: Poly, g: Poly, key) -> Poly:
    lf = _leading(f.terms, key)
    lg = _leading(g.terms, key)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    cf = f.terms[lf]
    cg = g.terms[lg]
    tf = Poly(f.table, {mf: ONE / cf})
    tg = Poly(g.table, {mg: ONE / cg})
    return tf * f - tg * g


def buchberger(generators: Sequence[Poly], order: MonomialOrder = LEX,
               budget_limit: int | None = None) -> list[Poly]:
    """Reduced Groebner basis (monic, sorted descending by leading monomial).

    Classic Buchberger with the product and chain criteria and normal pair
    selection.  Raises BudgetExceeded when the step budget runs out.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return []
    table = gens[0].table
    key = order.key_fn(table)
    budget = _Budget(budget_limit if budget_limit is not None else step_budget())

    basis: list[Poly] = []
    for g in gens:
        r = normal_form(g, basis, order, budget)
        if not r.is_zero():
            basis.append(_monic(r, key))

    lead = [_leading(g.terms, key) for g in basis]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    done: set = set()

    def lcm_of(i: int, j: int) -> tuple:
        return tuple(max(a, b) for a, b in zip(lead[i], lead[j]))

    while pairs:
        i, j = min(pairs, key=lambda ij: key(lcm_of(*ij)))
        pairs.remove((i, j))
        done.add((i, j))
        budget.spend()
        lcm = lcm_of(i, j)
        # product criterion: coprime leading monomials
        if all(a + b == c for a, b, c in zip(lead[i], lead[j], lcm)):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lead[k], lcm):
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 in done and p2 in done:
                skip = True
                break
        if skip:
            continue
        s = _s_polynomial(basis[i], basis[j], key)
        r = normal_form(s, basis, order, budget)
        if r.is_zero():
            continue
        r = _monic(r, key)
        basis.append(r)
        lead.append(_leading(r.terms, key))
        new_index = len(basis) - 1
        for k in range(new_index):
            pairs.add((k, new_index))

    # minimalize: drop elements whose leading monomial another one divides
    order_idx = sorted(range(len(basis)), key=lambda k: key(lead[k]))
    keep: list[int] = []
    for k in order_idx:
        if not any(_divides(lead[m], lead[k]) for m in keep):
            keep.append(k)
    minimal = [basis[k] for k in keep]

    # tail-reduce each element against the others
    reduced: list[Poly] = []
    for idx, g in enumerate(minimal):
        others = [h for m, h in enumerate(minimal) if m != idx]
        r = normal_form(g, others, order, budget)
        if not r.is_zero():
            reduced.append(_monic(r, key))
    reduced.sort(key=lambda g: key(_leading(g.terms, key)), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


class Ideal:
    """Finitely generated ideal with cached reduced Groebner bases.

    The zero ideal (no generators) is allowed; membership then means being
    the zero polynomial.
    """

    __slots__ = ("table", "generators", "_bases")

    def __init__(self, generators: Sequence[Poly], table: VarTable | None = None):
        gens = tuple(generators)
        if table is None:
            if not gens:
                raise ValueError("zero ideal needs an explicit table")
            table = gens[0].table
        for g in gens:
            if g.table != table:
                raise ValueError("VarTable mismatch among generators")
        self.table = table
        self.generators = gens
        self._bases: dict = {}

    def groebner(self, order: MonomialOrder = LEX) -> tuple[Poly, ...]:
        token = order.cache_token()
        cached = self._bases.get(token)
        if cached is None:
            cached = tuple(buchberger(self.generators, order))
            self._bases[token] = cached  # idempotent write-once
        return cached

    def normal_form(self, p: Poly, order: MonomialOrder = LEX) -> Poly:
        return normal_form(p, self.groebner(order), order)

    def member(self, p: Poly, order: MonomialOrder = LEX) -> bool:
        if p.table != self.table:
            raise ValueError("VarTable mismatch")
        if p.is_zero():
            return True
        if not self.generators:
            return False
        # cheap sufficient test: divide by the raw generators first
        if normal_form(p, self.generators, order).is_zero():
            return True
        return self.normal_form(p, order).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.member(g) for g in other.generators)

    def equal(self, other: "Ideal") -> bool:
        if self.table != other.table:
            raise ValueError("VarTable mismatch")
        return self.contains_ideal(other) and other.contains_ideal(self)

    def eliminate(self, front: Iterable[str]) -> "Ideal":
        """Intersection with the subring omitting the front variables."""
        front = tuple(front)
        if not front:
            return Ideal(list(self.generators), self.table)
        order = elimination_order(front)
        basis = self.groebner(order)
        front_idx = [self.table.index(n) for n in front]
        kept = [g for g in basis if all(all(e[k] == 0 for k in front_idx) for e in g.terms)]
        return Ideal(kept, self.table)

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"<Ideal ({gens})>"


def exact_quotient(p: Poly, d: Poly, order: MonomialOrder = LEX) -> Poly | None:
    """Quotient p / d when the division is exact, else None."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    key = order.key_fn(p.table)
    lt = _leading(d.terms, key)
    lc = d.terms[lt]
    work = dict(p.terms)
    quotient: dict = {}
    while work:
        e = _leading(work, key)
        if not _divides(lt, e):
            return None
        shift = tuple(a - b for a, b in zip(e, lt))
        factor = work[e] / lc
        quotient[shift] = factor
        for ge, gc in d.terms.items():
            te = tuple(a + b for a, b in zip(ge, shift))
            s = work.get(te)
            s = -(factor * gc) if s is None else s - factor * gc
            if s.is_zero():
                work.pop(te, None)
            else:
                work[te] = s
    return Poly(p.table, quotient)


def certified_unit(p: Poly, units: Sequence[Poly]) -> bool:
    """Is p a nonzero constant times a product of the given unit polynomials?

    Certifies that p cannot vanish wherever the units are invertible, by
    peeling unit factors off with exact division until a nonzero constant
    remains.
    """
    if p.is_zero():
        return False
    peelable = [u for u in units if not u.is_constant()]
    while not p.is_constant():
        for u in peelable:
            q = exact_quotient(p, u)
            if q is not None:
                p = q
                break
        else:
            return False
    return not p.constant_value().is_zero()


def member_with_denominators(p: Poly, ideal: Ideal, denominators: Sequence[Poly],
                             max_power: int = 6, order: MonomialOrder = LEX) -> int | None:
    """Least k with (d1*...*dm)^k * p in the ideal, or None.

    Realizes membership over the localization at the multiplicative set the
    denominators generate.
    """
    if p.table != ideal.table:
        raise ValueError("VarTable mismatch")
    product = Poly.const(ideal.table, 1)
    for d in denominators:
        product = product * d
    candidate = p
    for k in range(max_power + 1):
        if ideal.member(candidate, order):
            return k
        candidate = candidate * product
    return None
