"""Sparse multivariate polynomials and rational functions over Q(i).

A VarTable fixes the ordered list of variable names once; every Poly carries a
reference to its table and stores terms as a map from exponent vectors to
nonzero Q(i) coefficients.  Conjugation acts on coefficients and fixes
"real"-flagged variables; variables flagged generic have no defined conjugate
and any conjugation touching them raises ConjugationUndefined.

RatFunc is an unreduced fraction of two Polys; equality is decided by
cross-multiplication, so no multivariate gcd is ever required.  A cheap
content/monomial strip keeps the representations small.

RingMap is a substitution homomorphism: one RatFunc image per source-table
variable, plus a flag that conjugates coefficients before substituting.  Maps
compose by substitution chaining; conjugation flags compose by XOR.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .errors import ConjugationUndefined
from .gaussian import GaussianRational, ONE, ZERO, coefficient_str

REAL = "real"
GENERIC = "generic"


class VarTable:
    """Ordered variable names with per-variable conjugation flags."""

    __slots__ = ("names", "generic", "_index")

    def __init__(self, names: Iterable[str], generic: Iterable[str] = ()):
        self.names = tuple(names)
        self.generic = frozenset(generic)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        unknown = self.generic - set(self.names)
        if unknown:
            raise ValueError(f"generic flags for unknown variables: {sorted(unknown)}")
        self._index = {n: k for k, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        return self._index[name]

    def flag(self, name: str) -> str:
        return GENERIC if name in self.generic else REAL

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        if not isinstance(other, VarTable):
            return NotImplemented
        return self.names == other.names and self.generic == other.generic

    def __hash__(self):
        return hash((self.names, self.generic))

    def __repr__(self):
        return f"VarTable({self.names!r}, generic={sorted(self.generic)!r})"


def _coerce_scalar(value) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return None


class Poly:
    """Sparse polynomial over Q(i) in the variables of one VarTable."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: Mapping[tuple, GaussianRational] | None = None):
        self.table = table
        self.terms = {e: c for e, c in (terms or {}).items() if not c.is_zero()}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(table: VarTable) -> "Poly":
        return Poly(table)

    @staticmethod
    def const(table: VarTable, value) -> "Poly":
        c = _coerce_scalar(value)
        if c is None:
            raise TypeError(f"not a scalar: {value!r}")
        zero_exp = (0,) * len(table)
        return Poly(table, {zero_exp: c} if not c.is_zero() else {})

    @staticmethod
    def var(table: VarTable, name: str, power: int = 1) -> "Poly":
        exps = [0] * len(table)
        exps[table.index(name)] = power
        return Poly(table, {tuple(exps): ONE})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        zero_exp = (0,) * len(self.table)
        return self.terms.get(zero_exp, ZERO)

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.table != other.table:
            raise ValueError("VarTable mismatch")

    def __add__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            terms = dict(self.terms)
            for e, c in other.terms.items():
                s = terms.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
            return Poly(self.table, terms)
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self + Poly.const(self.table, c)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, Poly):
            return self + (-other)
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self + Poly.const(self.table, -c)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            terms: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    c = c1 * c2
                    s = terms.get(e)
                    s = c if s is None else s + c
                    if s.is_zero():
                        terms.pop(e, None)
                    else:
                        terms[e] = s
            return Poly(self.table, terms)
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        if c.is_zero():
            return Poly.zero(self.table)
        return Poly(self.table, {e: k * c for e, k in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.table, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, c: GaussianRational) -> "Poly":
        return self * c

    # -- structure ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.table == other.table and self.terms == other.terms
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self == Poly.const(self.table, c)

    __hash__ = None  # mutable dict inside; use sorted term tuples if needed

    def variables_present(self) -> set:
        names = self.table.names
        out = set()
        for e in self.terms:
            for k, power in enumerate(e):
                if power:
                    out.add(names[k])
        return out

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        k = self.table.index(name)
        if not self.terms:
            return -1
        return max(e[k] for e in self.terms)

    def coefficient(self, exps: tuple) -> GaussianRational:
        return self.terms.get(tuple(exps), ZERO)

    # -- conjugation ---------------------------------------------------------

    def conjugate(self) -> "Poly":
        """Conjugate coefficients; real-flagged variables are fixed.

        Raises ConjugationUndefined if any generic-flagged variable occurs.
        """
        if self.table.generic:
            bad = self.variables_present() & self.table.generic
            if bad:
                raise ConjugationUndefined(
                    f"conjugation undefined on generic variables {sorted(bad)}"
                )
        return Poly(self.table, {e: c.conjugate() for e, c in self.terms.items()})

    # -- evaluation -----------------------------------------------------------

    def specialize(self, values: Mapping[str, object]) -> "Poly":
        """Substitute scalars for a subset of the variables."""
        cooked = {}
        for name, v in values.items():
            c = _coerce_scalar(v)
            if c is None:
                raise TypeError(f"not a scalar for {name}: {v!r}")
            cooked[self.table.index(name)] = c
        terms: dict = {}
        for e, c in self.terms.items():
            coef = c
            new_e = list(e)
            for k, val in cooked.items():
                if e[k]:
                    coef = coef * val ** e[k]
                    new_e[k] = 0
            key = tuple(new_e)
            s = terms.get(key)
            s = coef if s is None else s + coef
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return Poly(self.table, terms)

    def evaluate(self, values: Mapping[str, object]) -> GaussianRational:
        return self.specialize(values).constant_value()

    def derivative(self, name: str) -> "Poly":
        k = self.table.index(name)
        terms: dict = {}
        for e, c in self.terms.items():
            if e[k]:
                new_e = list(e)
                new_e[k] -= 1
                terms[tuple(new_e)] = c * e[k]
        return Poly(self.table, terms)

    # -- text form -------------------------------------------------------------

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"<Poly {poly_str(self)}>"


# ---------------------------------------------------------------------------
# canonical text form
# ---------------------------------------------------------------------------


def _monomial_str(table: VarTable, exps: tuple) -> str:
    parts = []
    for name, e in zip(table.names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_str(p: Poly, key=None) -> str:
    """Canonical text: terms sorted descending by the active order (default lex)."""
    if not p.terms:
        return "0"
    if key is None:
        key = lambda e: e  # lex over the table order
    out = []
    for e in sorted(p.terms, key=key, reverse=True):
        c = p.terms[e]
        mono = _monomial_str(p.table, e)
        negative = c.im == 0 and c.re < 0 or (c.re == 0 and c.im < 0)
        body_coef = -c if negative else c
        if not mono:
            body = coefficient_str(body_coef)
        elif body_coef.is_one():
            body = mono
        else:
            body = f"{coefficient_str(body_coef)}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return ""
        return self.text[self.pos]

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.take(ch):
            raise ValueError(f"expected {ch!r} at position {self.pos} in {self.text!r}")

    def number(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ValueError(f"expected digits at position {start} in {self.text!r}")
        return int(self.text[start:self.pos])

    def name(self) -> str:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if start == self.pos:
            raise ValueError(f"expected a name at position {start} in {self.text!r}")
        return self.text[start:self.pos]


def _parse_rational(tk: _Tokens) -> Fraction:
    sign = 1
    if tk.take("-"):
        sign = -1
    elif tk.take("+"):
        pass
    num = tk.number()
    if tk.take("/"):
        den = tk.number()
        return Fraction(sign * num, den)
    return Fraction(sign * num)


def _parse_paren_scalar(tk: _Tokens) -> GaussianRational:
    """Parse after '(': rational ')' ['i'] or '(q)+(q)i' group form."""
    if tk.peek() == "(":
        # mixed form ((p)+(q)i)
        tk.expect("(")
        re = _parse_rational(tk)
        tk.expect(")")
        sign = 1
        if tk.take("-"):
            sign = -1
        else:
            tk.expect("+")
        tk.expect("(")
        im = _parse_rational(tk)
        tk.expect(")")
        if not tk.take("i"):
            raise ValueError("expected i in mixed scalar")
        tk.expect(")")
        return GaussianRational(re, sign * im)
    value = _parse_rational(tk)
    tk.expect(")")
    if tk.take("i"):
        return GaussianRational(0, value)
    return GaussianRational(value)


def _parse_factor(tk: _Tokens, table: VarTable) -> Poly:
    ch = tk.peek()
    if ch == "(":
        tk.expect("(")
        return Poly.const(table, _parse_paren_scalar(tk))
    if ch.isdigit():
        return Poly.const(table, _parse_rational(tk))
    if ch == "i" and not _next_is_name_char(tk):
        tk.expect("i")
        return Poly.const(table, GaussianRational(0, 1))
    name = tk.name()
    if name not in table._index:
        raise ValueError(f"unknown variable {name!r}")
    power = 1
    if tk.take("^"):
        power = tk.number()
    return Poly.var(table, name, power)


def _next_is_name_char(tk: _Tokens) -> bool:
    # distinguishes the imaginary unit from a variable name starting with i
    pos = tk.pos
    tk.peek()
    here = tk.pos
    ok = here + 1 < len(tk.text) and (tk.text[here + 1].isalnum() or tk.text[here + 1] == "_")
    tk.pos = pos
    return ok


def parse_poly(text: str, table: VarTable) -> Poly:
    """Parse the canonical text form back into a Poly (round-trips poly_str)."""
    tk = _Tokens(text)
    result = Poly.zero(table)
    first = True
    while True:
        ch = tk.peek()
        if not ch:
            if first:
                raise ValueError("empty polynomial text")
            break
        sign = 1
        if tk.take("-"):
            sign = -1
        elif tk.take("+"):
            pass
        elif not first:
            raise ValueError(f"expected +/- at position {tk.pos} in {text!r}")
        term = _parse_factor(tk, table)
        while tk.take("*"):
            term = term * _parse_factor(tk, table)
        result = result + term * sign
        first = False
    return result


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


def _int_content_scale(polys):
    """Scale factor that clears all denominators and divides out the integer gcd."""
    L = 1
    for p in polys:
        for c in p.terms.values():
            for d in (c.re.denominator, c.im.denominator):
                L = L * d // gcd(L, d)
    G = 0
    for p in polys:
        for c in p.terms.values():
            G = gcd(G, abs(c.re.numerator * (L // c.re.denominator)))
            G = gcd(G, abs(c.im.numerator * (L // c.im.denominator)))
    if G == 0:
        return Fraction(1)
    return Fraction(L, G)


class RatFunc:
    """Unreduced fraction of two polynomials; equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.table, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        self.num, self.den = _strip(num, den)

    @staticmethod
    def from_poly(p: Poly) -> "RatFunc":
        return RatFunc(p)

    @staticmethod
    def const(table: VarTable, value) -> "RatFunc":
        return RatFunc(Poly.const(table, value))

    @staticmethod
    def var(table: VarTable, name: str) -> "RatFunc":
        return RatFunc(Poly.var(table, name))

    @property
    def table(self) -> VarTable:
        return self.num.table

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("denominator is not constant")
        return self.num * self.den.constant_value().inverse()

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        c = _coerce_scalar(other)
        if c is not None:
            return RatFunc(Poly.const(self.table, c))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return (RatFunc(self.den, self.num)) ** (-exponent)
        return RatFunc(self.num ** exponent, self.den ** exponent)

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def conjugate(self) -> "RatFunc":
        return RatFunc(self.num.conjugate(), self.den.conjugate())

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None

    def __str__(self):
        if self.den == Poly.const(self.table, 1):
            return poly_str(self.num)
        return f"({poly_str(self.num)})/({poly_str(self.den)})"

    def __repr__(self):
        return f"<RatFunc {self}>"


def _strip(num: Poly, den: Poly):
    """Cheap size control: common monomial factor and rational content."""
    if num.is_zero():
        return num, Poly.const(den.table, 1)
    common = None
    for p in (num, den):
        local = None
        for e in p.terms:
            if local is None:
                local = list(e)
            else:
                local = [min(a, b) for a, b in zip(local, e)]
        if common is None:
            common = local
        else:
            common = [min(a, b) for a, b in zip(common, local)]
    if common and any(common):
        shift = tuple(common)

        def unshift(p: Poly) -> Poly:
            return Poly(p.table, {tuple(a - b for a, b in zip(e, shift)): c for e, c in p.terms.items()})

        num, den = unshift(num), unshift(den)
    scale = _int_content_scale((num, den))
    if scale != 1:
        num = num * scale
        den = den * scale
    return num, den


# ---------------------------------------------------------------------------
# substitution homomorphisms
# ---------------------------------------------------------------------------


class RingMap:
    """Substitution map: one image per source-table variable.

    conjugates_coefficients=True means coefficients (and real-flagged
    variables, trivially) are conjugated before the substitution; applying
    such a map to a polynomial containing generic variables raises.
    As geometry, a RingMap source->target is the pullback of a point map
    Spec(target) -> Spec(source).
    """

    __slots__ = ("source", "target", "images", "conjugates_coefficients")

    def __init__(self, source: VarTable, target: VarTable, images, conjugates_coefficients=False):
        self.source = source
        self.target = target
        imgs = []
        for im in images:
            if isinstance(im, Poly):
                im = RatFunc(im)
            if im.table != target:
                raise ValueError("image not over the target table")
            imgs.append(im)
        if len(imgs) != len(source):
            raise ValueError("one image per source variable required")
        self.images = tuple(imgs)
        self.conjugates_coefficients = bool(conjugates_coefficients)

    @staticmethod
    def identity(table: VarTable) -> "RingMap":
        return RingMap(table, table, [RatFunc.var(table, n) for n in table.names])

    @staticmethod
    def conjugation(table: VarTable) -> "RingMap":
        """Coordinatewise conjugation as a substitution with identity images."""
        return RingMap(
            table, table, [RatFunc.var(table, n) for n in table.names],
            conjugates_coefficients=True,
        )

    def image_of(self, name: str) -> RatFunc:
        return self.images[self.source.index(name)]

    def __call__(self, value):
        """Apply the substitution to a Poly or RatFunc over the source table."""
        if isinstance(value, RatFunc):
            if value.table != self.source:
                raise ValueError("VarTable mismatch")
            if self.conjugates_coefficients:
                value = value.conjugate()
            num = self._subst(value.num)
            den = self._subst(value.den)
            if den.is_zero():
                raise ZeroDivisionError("denominator maps to zero")
            return num / den
        if isinstance(value, Poly):
            if value.table != self.source:
                raise ValueError("VarTable mismatch")
            if self.conjugates_coefficients:
                value = value.conjugate()
            return self._subst(value)
        raise TypeError(f"cannot substitute into {value!r}")

    def _subst(self, p: Poly) -> RatFunc:
        result = RatFunc(Poly.zero(self.target))
        power_cache: dict = {}
        for e, c in p.terms.items():
            term = RatFunc(Poly.const(self.target, c))
            for k, power in enumerate(e):
                if not power:
                    continue
                key = (k, power)
                if key not in power_cache:
                    power_cache[key] = self.images[k] ** power
                term = term * power_cache[key]
            result = result + term
        return result

    def is_identity(self) -> bool:
        if self.source != self.target or self.conjugates_coefficients:
            return False
        return all(
            im == RatFunc.var(self.target, n) for im, n in zip(self.images, self.source.names)
        )

    def __repr__(self):
        arrow = "~>" if self.conjugates_coefficients else "->"
        pieces = ", ".join(f"{n} {arrow} {im}" for n, im in zip(self.source.names, self.images))
        return f"<RingMap {pieces}>"


def compose(*maps: RingMap) -> RingMap:
    """Composite of point maps listed outermost first.

    compose(f, g) is the point map f∘g (g applied first); on the ring side the
    images of f are pushed through g.  Conjugation flags XOR.
    """
    if not maps:
        raise ValueError("compose needs at least one map")
    current = maps[0]
    for nxt in maps[1:]:
        if current.target != nxt.source:
            raise ValueError("tables do not chain")
        images = [nxt(im) for im in current.images]
        current = RingMap(
            current.source,
            nxt.target,
            images,
            conjugates_coefficients=current.conjugates_coefficients ^ nxt.conjugates_coefficients,
        )
    return current
