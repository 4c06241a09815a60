"""Residue homomorphisms, the split residue sequence of F(t), and transfers.

The residue of a symbol is computed by the decomposition pipeline: write each
slot as unit * pi^n for the chosen uniformizer, expand multilinearly using
[u pi^n] = [u] + <u>(n_eps)[pi], commute the pi slots to the front (each
adjacent swap contributes a central factor eps), collapse repeated pi via
[pi,pi] = [pi,-1], and finally apply

    d([pi, u_1, ..., u_n]) = [u_1-bar, ..., u_n-bar],    d([u_1, ..., u_n]) = 0,

reducing units into the residue field.  Degree-0 coefficients built from units
pass through the residue (d(<u> a) = <u-bar> d(a)), which keeps the whole
computation free of uncontrolled term growth.

Transfers: the geometric transfer is computed by lift-and-correct degree
descent; the canonical transfer is the separable twist <p'> of the geometric
one.  The Scharlau form transfer (functional t^(d-1) -> 1) is kept as an
independent oracle.
"""

from __future__ import annotations

from itertools import product as iter_product

from . import forms, mw
from .errors import DomainError, ExtendScalarsError, UnsupportedFieldError
from .fields import (
    Poly,
    ValuationSpec,
    factor,
    function_field,
    residue_field,
    valuation,
    valuation_and_unit,
)
from .lines import TwistedMW, m_atom


class _Place:
    """A valuation together with its residue field and reduction map."""

    def __init__(self, ft, v):
        self.ft = ft
        self.v = v
        if v.is_infinity():
            self.kappa = ft.base
            self.rf = None
        else:
            self.rf = residue_field(ft, v.poly)
            self.kappa = self.rf.field

    def reduce_unit(self, u):
        if self.v.is_infinity():
            num, den = u.payload
            if num.degree() != den.degree():
                raise DomainError("not a unit at infinity")
            return num.leading() * den.leading().inv()
        return self.rf.reduce(u)

    def atom(self):
        """Canonical cotangent-dual basis atom: p-bar^* resp. (-1/t)-bar^*."""
        tag = "(-1/t)" if self.v.is_infinity() else self.v.poly.render()
        return m_atom(tag, dual=True)


def _require_function_field(x):
    if not x.field.is_rational_function:
        raise UnsupportedFieldError("residues are defined over rational function fields only")
    return x.field


def residue(x: mw.MWExpr, v: ValuationSpec, pi=None) -> mw.MWExpr:
    """The uniformizer-dependent residue of x at the place v."""
    ft = _require_function_field(x)
    place = _Place(ft, v)
    if pi is None:
        pi = v.uniformizer(ft)
    elif valuation(ft.elem(pi), v) != 1:
        raise DomainError("supplied element is not a uniformizer at the place")
    kappa = place.kappa
    out = mw.mw_zero(kappa, x.degree - 1)
    eps_k = mw.eps_mw(kappa)
    one = mw.mw_int(kappa, 1)

    for (m, slots), coeff in x.terms.items():
        options_per_slot = []
        for a in slots:
            n, u = valuation_and_unit(a, v, pi)
            opts = []
            if u != ft.one:
                opts.append(("U", u))
            if n != 0:
                opts.append(("P", (u, n)))
            if not opts:
                break   # slot equals 1; cannot happen after construction
            options_per_slot.append(opts)
        if len(options_per_slot) != len(slots):
            continue
        for choice in iter_product(*options_per_slot):
            k = 0
            units = []
            has_pi = False
            central = one
            for sym, data in choice:
                if sym == "U":
                    units.append(data)
                else:
                    u, n = data
                    k += len(units)
                    if has_pi:
                        units.insert(0, ft.elem(-1))   # [pi,pi] = [pi,-1]
                    else:
                        has_pi = True
                    if u != ft.one:
                        central = mw.mw_mul(central, mw.angle(kappa, place.reduce_unit(u)))
                    if n != 1:
                        central = mw.mw_mul(central, mw.n_eps_mw(kappa, n))
            if not has_pi:
                continue
            if k % 2:
                central = mw.mw_mul(central, eps_k)
            tail = tuple(place.reduce_unit(u) for u in units)
            term = mw.symbol(kappa, coeff, m, tail)
            out = mw.mw_add(out, mw.mw_mul(central, term))
    return out


def residue_twisted(x: TwistedMW, v: ValuationSpec) -> TwistedMW:
    """Uniformizer-free residue: compute with the canonical uniformizer and
    record the cotangent-dual basis atom in the twist word."""
    ft = _require_function_field(x.expr)
    place = _Place(ft, v)
    value = residue(x.normalized().expr, v)
    return TwistedMW(value, (place.atom(),) + x.word)


def support_places(x: mw.MWExpr):
    """Monic irreducible polynomials showing up in any slot, in canonical order."""
    seen = {}
    for (m, slots), _ in x.terms.items():
        for a in slots:
            for poly in a.payload:   # numerator and denominator
                if poly.degree() < 1:
                    continue
                _, factors = factor(poly)
                for p, _mult in factors:
                    seen[p] = True
    return sorted(seen.keys(), key=lambda p: p.key())


def total_residue(x: mw.MWExpr):
    """Residues at every place in the support; finitely many by factorization."""
    out = {}
    for p in support_places(x):
        r = residue(x, ValuationSpec.padic(p))
        if not r.is_zero_expr():
            out[p] = r
    return out


def pullback(alpha: mw.MWExpr, ft) -> mw.MWExpr:
    """Image of a constant class along F c F(t)."""
    if alpha.field != ft.base:
        raise DomainError("pullback expects a class over the constant field")
    terms = {}
    for (m, slots), coeff in alpha.terms.items():
        key = (m, tuple(ft.elem(a) for a in slots))
        terms[key] = terms.get(key, 0) + coeff
    return mw.MWExpr(ft, alpha.degree, terms)


def constant_part(x: mw.MWExpr) -> mw.MWExpr:
    """Specialization at the least rational place where every slot is a unit.

    This retracts the pullback (exactly, not just up to class); on classes with
    vanishing total residue it computes the constant of the split sequence.
    """
    ft = _require_function_field(x)
    base = ft.base
    slots_seen = {a for (m, slots), _ in x.terms.items() for a in slots}
    for c in sorted(base.elements(), key=lambda e: e.sort_key()):
        good = True
        for a in slots_seen:
            num, den = a.payload
            if num.eval(c).is_zero() or den.eval(c).is_zero():
                good = False
                break
        if not good:
            continue
        terms = {}
        for (m, slots), coeff in x.terms.items():
            evaluated = tuple(a.payload[0].eval(c) * a.payload[1].eval(c).inv() for a in slots)
            key = (m, evaluated)
            terms[key] = terms.get(key, 0) + coeff
        return mw.MWExpr(base, x.degree, terms)
    raise ExtendScalarsError(
        "every rational place is ramified for this class; extend the constant field")


def constant_part_via_residue(x: mw.MWExpr) -> mw.MWExpr:
    """The retraction d_t^t([t] x); exact on classes with vanishing total residue."""
    ft = _require_function_field(x)
    t_sym = mw.bracket(ft, ft.t)
    return residue(mw.mw_mul(t_sym, x), ValuationSpec.padic(Poly(ft.base, [ft.base.zero, ft.base.one])))


def function_field_is_zero(x: mw.MWExpr) -> bool:
    """Equality oracle over F(t): all residues vanish and the constant part vanishes."""
    for p in support_places(x):
        r = residue(x, ValuationSpec.padic(p))
        if not mw.mw_is_zero(r):
            return False
    return mw.mw_is_zero(constant_part_via_residue(x))


# ------------------------------------------------------------------ the section

def lift_symbolwise(beta: mw.MWExpr, p: Poly, ft) -> mw.MWExpr:
    """The Bass-Tate style lift: eta^m [b...] -> eta^m [p, lift(b)...].

    Its residue at p is beta on the nose, and every other residue sits at a
    place of degree strictly below deg p.
    """
    rf = residue_field(ft, p)
    if beta.field != rf.field:
        raise DomainError("class does not live over the residue field of the place")
    p_elem = ft.from_polys(p)
    terms = {}
    for (m, slots), coeff in beta.terms.items():
        lifted = (p_elem,) + tuple(rf.lift(a) for a in slots)
        terms[(m, lifted)] = terms.get((m, lifted), 0) + coeff
    return mw.MWExpr(ft, beta.degree + 1, terms)


def reconstruct(x: mw.MWExpr):
    """Split the class of x as pullback(constant) + lift of its total residue.

    Returns (constant over F, lift L over F(t)) with x mw-equal pullback + L;
    places are cleared in decreasing degree, so the corrections terminate.
    """
    ft = _require_function_field(x)
    remaining = {p: r for p, r in total_residue(x).items()}
    lift = mw.mw_zero(ft, x.degree)
    while True:
        alive = [p for p, r in remaining.items() if not mw.mw_is_zero(r)]
        if not alive:
            break
        p = max(alive, key=lambda q: q.key())
        beta = remaining.pop(p)
        alpha = lift_symbolwise(beta, p, ft)
        lift = mw.mw_add(lift, alpha)
        for q, r in total_residue(alpha).items():
            if q == p:
                corrected = mw.mw_add(beta, mw.mw_neg(r))
                if not corrected.is_zero_expr():
                    remaining[q] = mw.mw_add(remaining.get(q, corrected * 0), corrected)
                continue
            prev = remaining.get(q)
            r_neg = mw.mw_neg(r)
            remaining[q] = r_neg if prev is None else mw.mw_add(prev, r_neg)
    constant = constant_part_via_residue(mw.mw_add(x, mw.mw_neg(lift)))
    return constant, lift


# ------------------------------------------------------------------ transfers

def geometric_transfer(beta: mw.MWExpr, p: Poly) -> mw.MWExpr:
    """Transfer along F[t]/(p) over F by lift-and-correct degree descent."""
    base = p.field
    if not p.is_monic():
        raise DomainError("transfer place must be monic irreducible")
    ft = function_field(base)
    rf = residue_field(ft, p)
    if beta.field != rf.field:
        raise DomainError("class does not live over F[t]/(p)")
    if p.degree() == 1:
        return beta   # residue field is F itself
    alpha = lift_symbolwise(beta, p, ft)
    out = mw.mw_neg(residue(alpha, ValuationSpec.infinity()))
    for q, r in total_residue(alpha).items():
        if q == p:
            continue
        out = mw.mw_add(out, mw.mw_neg(geometric_transfer(r, q)))
    return out


def derivative_class(p: Poly, rf):
    """p'(t-bar) in the residue field; nonzero by separability."""
    deriv = p.derivative()
    if deriv.is_zero():
        raise DomainError("inseparable place (impossible over a finite field)")
    if p.degree() == 1:
        return deriv.coeffs[0]
    return rf.field.from_poly(deriv)


def canonical_transfer_expr(beta: mw.MWExpr, p: Poly) -> mw.MWExpr:
    """The separable canonical transfer: tau(<p'> beta) in the trivialized twist."""
    base = p.field
    ft = function_field(base)
    rf = residue_field(ft, p)
    pprime = derivative_class(p, rf)
    return geometric_transfer(mw.mw_mul(mw.angle(rf.field, pprime), beta), p)


def canonical_transfer(x: TwistedMW, p: Poly) -> TwistedMW:
    """Canonical transfer with pass-through of any constant twist word.

    The differentials of a finite extension of a finite field vanish, so the
    omega-part of the twist is canonically trivial and only extra constant
    atoms survive the descent.
    """
    value = canonical_transfer_expr(x.normalized().expr, p)
    return TwistedMW(value, x.word)


def scharlau_transfer(form: forms.GWForm, p: Poly) -> forms.GWForm:
    """Form transfer along the functional sending t^(d-1) to 1 and lower powers to 0."""
    base = p.field
    d = p.degree()
    ft = function_field(base)
    rf = residue_field(ft, p)
    if form.field != rf.field:
        raise DomainError("form does not live over F[t]/(p)")
    if d == 1:
        return forms.GWForm(base, form.plus, form.minus)

    ext = rf.field
    gen = ext.from_poly(Poly(base, [base.zero, base.one]))

    def functional(y):
        return ext.coeff_vector(y)[d - 1]

    def transfer_entry(a):
        gram = [[functional(a * ext.pow(gen, i + j)) for j in range(d)] for i in range(d)]
        return forms.diagonalize_symmetric(gram, base)

    plus = []
    minus = []
    for a in form.plus:
        plus.extend(transfer_entry(a))
    for a in form.minus:
        minus.extend(transfer_entry(a))
    return forms.GWForm(base, tuple(plus), tuple(minus))


def reciprocity_defect(x: mw.MWExpr) -> mw.MWExpr:
    """sum_p tau_p(d_p x) + d_infinity(x); zero for every x by the uniqueness lemma."""
    ft = _require_function_field(x)
    out = residue(x, ValuationSpec.infinity())
    for p, r in total_residue(x).items():
        out = mw.mw_add(out, geometric_transfer(r, p))
    return out
