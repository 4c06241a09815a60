"""Graded line bookkeeping for twisted Milnor-Witt classes.

Line bundles never appear as geometric objects: a twist is an ordered word of
named basis atoms with a unit prefactor, plus an integer grade when the signed
commutativity rule matters.  Atoms in use on curves:

* ``m`` atoms  -- the canonical basis p-bar (or its dual p-bar^*) of the
  (co)tangent line at the closed point cut out by a monic irreducible p;
* ``dt`` atoms -- the basis dt of the module of differentials of F(t);
* ``chart``    -- the chart-0 / chart-infinity bases of O(d) on the projective
  line (transition unit t^d);
* ``sec``      -- the canonical basis attached to a global function or section
  (used by divisor classes).

Rebasing by a unit u multiplies the expression by <u> and divides the basis
prefactor by u; the class is unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import mw
from .errors import DomainError, ScopeError


@dataclass(frozen=True)
class LineAtom:
    kind: str          # "m" | "dt" | "chart" | "sec"
    tag: str           # rendered uniformizer / chart label / section label
    dual: bool = False

    def render(self):
        if self.kind == "dt":
            return "dt*" if self.dual else "dt"
        tag = self.tag
        if any(op in tag for op in "+-/^") and not tag.startswith("("):
            tag = f"({tag})"
        return f"{tag}{'*' if self.dual else ''}"

    def __str__(self):
        return self.render()


def m_atom(tag, dual=True):
    return LineAtom("m", tag, dual)


def chart_atom(chart, d, dual=False):
    return LineAtom("chart", f"e{chart}({d})", dual)


def section_atom(label):
    return LineAtom("sec", label)


@dataclass(frozen=True)
class GradedLine:
    """A word of atoms together with the integer grade."""

    word: tuple
    shift: int

    def render(self):
        if not self.word:
            return "1"
        return ",".join(a.render() for a in self.word)


def tensor(g: GradedLine, h: GradedLine) -> GradedLine:
    return GradedLine(g.word + h.word, g.shift + h.shift)


def dual_line(g: GradedLine) -> GradedLine:
    return GradedLine(tuple(replace(a, dual=not a.dual) for a in g.word), -g.shift)


def swap_sign(g: GradedLine, h: GradedLine) -> int:
    """Sign of the symmetry isomorphism (L,a)(L',a') = (L',a')(L,a)."""
    return -1 if (g.shift * h.shift) % 2 else 1


def dual_pairing_sign(g: GradedLine) -> int:
    """Sign of the left-inverse pairing (L^v,-a)(L,a) -> unit."""
    return -1 if g.shift % 2 else 1


class TwistedMW:
    """An expression tensored with a basis word carrying a unit prefactor."""

    __slots__ = ("expr", "unit", "word")

    def __init__(self, expr, word=(), unit=None):
        self.expr = expr
        self.word = tuple(word)
        self.unit = expr.field.one if unit is None else unit
        if self.unit.is_zero():
            raise DomainError("twist prefactor must be a unit")

    @property
    def field(self):
        return self.expr.field

    def normalized(self):
        """Absorb the prefactor into the expression: alpha (x) u l = <u> alpha (x) l."""
        if self.unit == self.field.one:
            return self
        return TwistedMW(mw.mw_mul(mw.angle(self.field, self.unit), self.expr), self.word)

    def rebase(self, u):
        """Representation change along the unit action; the class is unchanged."""
        u = self.field.elem(u)
        if u.is_zero():
            raise DomainError("cannot rebase by zero")
        return TwistedMW(mw.mw_mul(mw.angle(self.field, u), self.expr),
                         self.word, self.unit / u)

    def __str__(self):
        body = mw.render_expr(self.normalized().expr)
        if not self.word:
            return body
        return f"{body} @ {','.join(a.render() for a in self.word)}"

    def __repr__(self):
        return f"TwistedMW({self})"


def twisted_compare(x: TwistedMW, y: TwistedMW) -> mw.Equality:
    if x.word != y.word:
        raise ScopeError("cannot compare twisted classes with different basis words")
    return mw.mw_compare(x.normalized().expr, y.normalized().expr)


def twisted_equal(x: TwistedMW, y: TwistedMW) -> bool:
    return twisted_compare(x, y) is mw.Equality.EQUAL


def rewrite_dt_at_point(x: TwistedMW, p, reduce_map) -> TwistedMW:
    """Trade a dt atom for the canonical cotangent atom at the point cut out by p.

    On a curve the conormal line at V(p) maps to the restricted differentials by
    p-bar -> p'(x) dt, so the basis conversion acts on the class by <p'(x)>
    (the same square class in either direction, and for either dual flag).
    """
    deriv = p.derivative()
    if deriv.is_zero():
        raise DomainError("inseparable local equation")
    pprime = reduce_map(deriv)
    new_word = []
    converted = False
    for atom in x.word:
        if atom.kind == "dt" and not converted:
            new_word.append(m_atom(p.render(), dual=atom.dual))
            converted = True
        else:
            new_word.append(atom)
    if not converted:
        raise DomainError("no dt atom to rewrite")
    x = x.normalized()
    return TwistedMW(mw.mw_mul(mw.angle(x.field, pprime), x.expr), tuple(new_word))


def chart_transition(x: TwistedMW, d: int, t_elem, to_chart="inf") -> TwistedMW:
    """Rewrite the O(d) chart atom across the t^d transition; acts as <t^d>."""
    source = "0" if to_chart == "inf" else "inf"
    new_word = []
    converted = False
    for atom in x.word:
        if atom.kind == "chart" and atom.tag.startswith(f"e{source}") and not converted:
            new_word.append(chart_atom(to_chart, d, dual=atom.dual))
            converted = True
        else:
            new_word.append(atom)
    if not converted:
        raise DomainError(f"no chart-{source} atom to rewrite")
    x = x.normalized()
    if d % 2 == 0:
        return TwistedMW(x.expr, tuple(new_word))   # <t^d> = <1> for even d
    return TwistedMW(mw.mw_mul(mw.angle(x.field, t_elem), x.expr), tuple(new_word))
