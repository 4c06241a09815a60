"""Rost-Schmid cochain complexes on Spec F, the affine line and the projective
line over a finite field, twisted by the chart model of O(d).

Conventions (fixed once, used everywhere):

* points of the affine line are the monic irreducible polynomials; the
  projective line adds the point at infinity with uniformizer -1/t;
* a codimension-0 cochain is a single expression over F(t) at the generic
  point, stored in the chart-0 trivialization of O(d);
* a codimension-1 cochain assigns to finitely many closed points expressions
  over their residue fields, stored in the canonical cotangent-dual basis
  p-bar^* (resp. (-1/t)-bar^* at infinity) tensor chart basis -- chart 0 at
  finite points, chart infinity at the infinite point;
* the differential takes twisted residues; at the infinite point of the
  projective line the generic value is first rebased across the chart
  transition, which acts by <t^d>;
* the Milnor-Witt degree pushes a codimension-1 cochain to the base field by
  geometric transfers in these canonical coordinates (the infinite point is
  rational, so it contributes identically).

Weights: a cochain of weight j has generic values of degree j and closed-point
values of degree j - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import mw
from .errors import DomainError, ScopeError
from .fields import Poly, ValuationSpec, factor, function_field, residue_field
from .lines import TwistedMW, chart_atom, m_atom, section_atom
from .residues import (
    constant_part_via_residue,
    geometric_transfer,
    pullback,
    residue,
    support_places,
)

GENERIC = "gen"
INFINITY = "inf"


@dataclass(frozen=True)
class SchemeTag:
    kind: str            # "point" | "A1" | "P1"
    base: object         # finite coefficient field

    def __post_init__(self):
        if self.kind not in ("point", "A1", "P1"):
            raise DomainError(f"unsupported scheme {self.kind}")
        if not self.base.is_finite:
            raise DomainError("schemes are defined over finite fields only")

    def function_field(self):
        if self.kind == "point":
            raise DomainError("Spec F has no function field in this encoding")
        return function_field(self.base)

    def has_infinity(self):
        return self.kind == "P1"

    def __str__(self):
        return {"point": f"Spec({self.base.name})", "A1": f"A1({self.base.name})",
                "P1": f"P1({self.base.name})"}[self.kind]


def affine_line(base):
    return SchemeTag("A1", base)


def proj_line(base):
    return SchemeTag("P1", base)


@dataclass
class RSCochain:
    """Finitely supported cochain; values keyed by GENERIC, monic irreducible
    polynomials, or INFINITY, stored in the canonical bases described above."""

    scheme: SchemeTag
    codim: int
    weight: int
    twist: int = 0                  # O(d); omega is d = -2
    values: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.codim not in (0, 1, 2):
            raise DomainError("curves carry codimension 0 and 1 only")
        if self.codim == 2 and self.values:
            raise DomainError("no codimension-2 points on a curve")
        if self.twist != 0 and self.scheme.kind != "P1":
            raise DomainError("only the projective line carries nontrivial twists")
        for point, expr in self.values.items():
            if self.codim == 0 and point != GENERIC:
                raise DomainError("codimension 0 lives at the generic point")
            if self.codim == 1 and point == GENERIC:
                raise DomainError("codimension 1 lives at closed points")
            if point == INFINITY and not self.scheme.has_infinity():
                raise DomainError("the affine line has no point at infinity")

    def generic(self):
        ft = self.scheme.function_field()
        return self.values.get(GENERIC, mw.mw_zero(ft, self.weight))

    def value_at(self, point):
        if point in self.values:
            return self.values[point]
        kappa = point_residue_field(self.scheme, point)
        return mw.mw_zero(kappa, self.weight - self.codim)

    def support(self):
        return [p for p, v in self.values.items() if not v.is_zero_expr()]

    def is_zero_cochain(self):
        return all(mw.mw_is_zero(v) for v in self.values.values())

    def __str__(self):
        if not self.values:
            return "0"
        parts = []
        for point, expr in sorted(self.values.items(), key=lambda kv: _point_key(kv[0])):
            word = point_twist_word(self.scheme, self.codim, self.twist, point)
            label = point if isinstance(point, str) else point.render()
            rendered = str(TwistedMW(expr, word))
            parts.append(f"{label}: {rendered}")
        return "; ".join(parts)


def _point_key(point):
    if point == GENERIC:
        return (0, ())
    if point == INFINITY:
        return (2, ())
    return (1, point.key())


def point_residue_field(scheme, point):
    base = scheme.base
    if point == GENERIC:
        return scheme.function_field()
    if point == INFINITY:
        return base
    return residue_field(function_field(base), point).field


def point_twist_word(scheme, codim, twist, point):
    """Canonical basis word of the stored value at a point."""
    word = []
    if codim == 1:
        tag = "(-1/t)" if point == INFINITY else point.render()
        word.append(m_atom(tag, dual=True))
    if twist != 0:
        chart = "inf" if point == INFINITY else "0"
        word.append(chart_atom(chart, twist))
    return tuple(word)


def cochain0(scheme, expr, twist=0):
    """Codimension-0 cochain from a generic expression over F(t)."""
    ft = scheme.function_field()
    if expr.field != ft:
        raise DomainError("generic value must live over the function field")
    return RSCochain(scheme, 0, expr.degree, twist, {GENERIC: expr})


def pullback_flat(alpha, scheme, twist=0):
    """Flat pull-back of a constant class: the extension image at the generic point."""
    ft = scheme.function_field()
    return cochain0(scheme, pullback(alpha, ft), twist)


def differential(x: RSCochain) -> RSCochain:
    """Total twisted residue; zero on codimension-1 cochains (top degree)."""
    if x.codim >= 1:
        return RSCochain(x.scheme, x.codim + 1, x.weight, x.twist, {})
    ft = x.scheme.function_field()
    alpha = x.generic()
    values = {}
    for p in support_places(alpha):
        r = residue(alpha, ValuationSpec.padic(p))
        if not r.is_zero_expr():
            values[p] = r
    if x.scheme.has_infinity():
        at_inf = alpha
        if x.twist % 2 != 0:
            at_inf = mw.mw_mul(mw.angle(ft, ft.t), alpha)   # chart transition <t^d>
        r = residue(at_inf, ValuationSpec.infinity())
        if not r.is_zero_expr():
            values[INFINITY] = r
    return RSCochain(x.scheme, 1, x.weight, x.twist, values)


def pushforward_point(x: RSCochain) -> mw.MWExpr:
    """Milnor-Witt degree: transfer every closed-point value to the base field.

    In the canonical cotangent-dual coordinates the finite points contribute by
    the geometric transfer and the rational point at infinity identically; on
    cocycles of the untwisted complex this computes the degree map.
    """
    if x.codim != 1:
        raise DomainError("push-forward of points applies to codimension-1 cochains")
    base = x.scheme.base
    out = mw.mw_zero(base, x.weight - 1)
    for point, value in x.values.items():
        if point == INFINITY:
            out = mw.mw_add(out, value)
        else:
            out = mw.mw_add(out, geometric_transfer(value, point))
    return out


def degree_tilde(x: RSCochain):
    return mw.mw0_to_gw(pushforward_point(x)) if x.weight - 1 == 0 else pushforward_point(x)


def h0_membership(x: RSCochain):
    """The constant c with x = pullback(c) when x is closed; None otherwise."""
    if x.scheme.kind != "A1":
        raise ScopeError("homotopy-invariance certificates are for the affine line")
    if x.codim != 0:
        raise DomainError("membership test applies to codimension-0 cochains")
    alpha = x.generic()
    for p in support_places(alpha):
        if not mw.mw_is_zero(residue(alpha, ValuationSpec.padic(p))):
            return None
    return constant_part_via_residue(alpha)


def mu_f(x: RSCochain, f) -> RSCochain:
    """Divisor-level pull-back: the V(f)-supported part of d(<(-1)^i>[f] x (x) f).

    For a codimension-0 cochain on the complement of V(f) this multiplies the
    generic value by [f], extends the twist by the canonical basis f of
    D(f)^{-1}, and keeps the components of the residue supported on V(f).
    """
    if x.codim != 0:
        raise ScopeError("only the codimension-0 case occurs on curves")
    ft = x.scheme.function_field()
    f = ft.elem(f)
    if f.is_zero():
        raise DomainError("mu_f needs a nonzero function")
    num, den = f.payload
    if num.degree() < 1 and den.degree() < 1:
        return RSCochain(x.scheme, 1, x.weight + 1, x.twist, {})   # f invertible: empty support
    alpha = mw.mw_mul(mw.bracket(ft, f), x.generic())   # <(-1)^0> = <1>
    _, zero_factors = factor(num) if num.degree() >= 1 else (None, [])
    zero_places = {p for p, _ in zero_factors}
    values = {}
    for p in support_places(alpha):
        if p not in zero_places:
            continue
        r = residue(alpha, ValuationSpec.padic(p))
        if not r.is_zero_expr():
            values[p] = r
    return RSCochain(x.scheme, 1, x.weight + 1, x.twist, values)


def mu_f_twisted_value(x: RSCochain, f, point):
    """The mu_f value at a point together with its full twist word."""
    out = mu_f(x, f)
    ft = x.scheme.function_field()
    word = point_twist_word(x.scheme, 1, x.twist, point) + (section_atom(ft.render(ft.elem(f))),)
    return TwistedMW(out.value_at(point), word)


def ord_tilde(f, scheme) -> RSCochain:
    """The divisor class of a global rational function: d_x([f] (x) f) at every
    zero and pole; the twist word gains the canonical section atom f."""
    ft = scheme.function_field()
    f = ft.elem(f)
    if f.is_zero():
        raise DomainError("ord-tilde of 0")
    sym = mw.bracket(ft, f) if f != ft.one else mw.mw_zero(ft, 1)
    values = {}
    for p in support_places(sym):
        r = residue(sym, ValuationSpec.padic(p))
        if not r.is_zero_expr():
            values[p] = r
    if scheme.has_infinity() and not sym.is_zero_expr():
        r = residue(sym, ValuationSpec.infinity())
        if not r.is_zero_expr():
            values[INFINITY] = r
    return RSCochain(scheme, 1, 1, 0, values)


@dataclass
class ChowWittClass:
    """A certified divisor-level cocycle on the projective line with its invariants."""

    cochain: RSCochain
    chow_degree: int
    degree_value: mw.MWExpr

    def __str__(self):
        return f"ChowWitt[{self.cochain}] (chow={self.chow_degree})"


def euler_class_line(d: int, section: Poly) -> ChowWittClass:
    """Euler class of O(d) on the projective line from a nonzero global section.

    The section is a polynomial of degree <= d in the chart-0 coordinate;
    it is normalised to a monic local equation (the class depends only on the
    divisor of the section).  The value at a finite zero p is the residue of
    [s_0] there; the infinite point carries the chart-infinity local equation
    s_0 * t^(-d).
    """
    if section.is_zero():
        raise DomainError("zero section has no divisor")
    if section.degree() > d:
        raise DomainError("section degree exceeds the twist")
    base = section.field
    scheme = proj_line(base)
    ft = function_field(base)
    s0 = ft.from_polys(section.monic())
    values = {}
    if section.degree() >= 1:
        sym = mw.bracket(ft, s0)
        for p in support_places(sym):
            r = residue(sym, ValuationSpec.padic(p))
            if not r.is_zero_expr():
                values[p] = r
    if section.degree() < d:
        t_to_minus_d = ft.from_polys(Poly(base, [base.one]),
                                     Poly(base, [base.zero] * d + [base.one]))
        s_inf = s0 * t_to_minus_d
        r = residue(mw.bracket(ft, s_inf), ValuationSpec.infinity())
        if not r.is_zero_expr():
            values[INFINITY] = r
    cochain = RSCochain(scheme, 1, 1, -d, values)
    chow = chow_degree(cochain)
    return ChowWittClass(cochain, chow, pushforward_point(cochain))


def chow_comparison(x: RSCochain):
    """Classical cycle data: the Milnor quotient pointwise."""
    out = {}
    for point, value in x.values.items():
        milnor = mw.to_milnor(value)
        if x.codim == 1:
            out[point] = mw.milnor_invariant(milnor)
        else:
            out[point] = milnor
    return out


def chow_degree(x: RSCochain) -> int:
    """Degree of the underlying classical cycle (multiplicities times residue degrees)."""
    if x.codim != 1 or x.weight != 1:
        raise DomainError("cycle degree applies to codimension-1 cochains of weight 1")
    total = 0
    for point, value in x.values.items():
        mult = mw.milnor_invariant(mw.to_milnor(value))
        deg = 1 if point == INFINITY else point.degree()
        total += mult * deg
    return total


def localization_boundary(x: RSCochain):
    """Connecting value at the origin for the complement of 0 in the affine line."""
    if x.codim != 0 or x.scheme.kind != "A1":
        raise ScopeError("localization boundary is computed on the punctured affine line")
    ft = x.scheme.function_field()
    origin = Poly(ft.base, [ft.base.zero, ft.base.one])
    value = residue(x.generic(), ValuationSpec.padic(origin))
    return TwistedMW(value, (m_atom("t", dual=True),))


# ------------------------------------------------------------------ exterior products

@dataclass(frozen=True)
class PointedValue:
    """A twisted value at a point of a factor scheme: the data entering the
    exterior product."""

    expr: mw.MWExpr
    codim: int
    word: tuple = ()


def exterior_product(a: PointedValue, b: PointedValue) -> PointedValue:
    """Concatenation product alpha . beta (x) joined basis words.

    Supported case: one factor lives over the base field (codimension 0 of
    Spec F); the general closed-point times closed-point case needs surfaces.
    """
    if a.codim > 0 and b.codim > 0:
        raise ScopeError("products of two positive-codimension values need a surface")
    if a.expr.field == b.expr.field:
        prod = mw.mw_mul(a.expr, b.expr)
    else:
        # extend the constant factor into the other field
        if a.expr.field.is_finite and not b.expr.field.is_finite:
            prod = mw.mw_mul(_extend(a.expr, b.expr.field), b.expr)
        elif b.expr.field.is_finite and not a.expr.field.is_finite:
            prod = mw.mw_mul(a.expr, _extend(b.expr, a.expr.field))
        else:
            ext = b.expr.field if b.expr.field.order > a.expr.field.order else a.expr.field
            x = a.expr if a.expr.field == ext else _extend(a.expr, ext)
            y = b.expr if b.expr.field == ext else _extend(b.expr, ext)
            prod = mw.mw_mul(x, y)
    return PointedValue(prod, a.codim + b.codim, a.word + b.word)


def scale_by_constant(alpha: mw.MWExpr, x: RSCochain) -> RSCochain:
    """The exterior product of a class over the base field with a cochain:
    pointwise extension-and-multiply, the curve-level supported case."""
    if alpha.field != x.scheme.base:
        raise DomainError("scaling class must live over the base field")
    values = {}
    for point, value in x.values.items():
        extended = _extend(alpha, value.field)
        values[point] = mw.mw_mul(extended, value)
    return RSCochain(x.scheme, x.codim, x.weight + alpha.degree, x.twist, values)


def _extend(expr, target):
    terms = {}
    for (m, slots), coeff in expr.terms.items():
        key = (m, tuple(target.elem(s) for s in slots))
        terms[key] = terms.get(key, 0) + coeff
    return mw.MWExpr(target, expr.degree, terms)


def exterior_swap_sign(a: PointedValue, b: PointedValue, field):
    """eps^{rs} <(-1)^{ii'}>: the commutation factor of the exterior product."""
    sign = mw.mw_int(field, 1)
    for _ in range(abs(a.expr.degree * b.expr.degree) % 2):
        sign = mw.mw_mul(sign, mw.eps_mw(field))
    if (a.codim * b.codim) % 2:
        sign = mw.mw_mul(sign, mw.angle(field, -1))
    return sign
