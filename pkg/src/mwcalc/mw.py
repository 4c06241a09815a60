"""The Milnor-Witt symbol algebra.

Expressions are integer combinations of generators eta^m [a_1,...,a_r] with
nonzero slots a_i, kept homogeneous of degree r - m.  Construction merges
identical generators and kills any term containing the slot 1 (the class [1]
vanishes).  ``simplify`` is a sound partial reducer; decidable equality is the
job of ``mw_equal``, which goes through complete invariants:

* finite fields -- the Milnor part together with the Witt-level image of the
  fundamental-ideal map decide equality (the fiber-product description of the
  degree-n part over the graded pieces);
* rational function fields -- all residues plus the constant part, recursively;
* the real model -- three-valued: syntactic equality after simplify, invariant
  mismatch, or undecided.
"""

from __future__ import annotations

import enum

from . import forms
from .errors import DomainError, HomogeneityError, UndecidedEqualityError, UnsupportedFieldError


class Equality(enum.Enum):
    EQUAL = "equal"
    DIFFERENT = "different"
    UNDECIDED = "undecided"


class MWExpr:
    """Homogeneous Z-combination of symbols eta^m [a_1,...,a_r]."""

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field, degree, terms):
        clean = {}
        for (m, slots), coeff in terms.items():
            if coeff == 0:
                continue
            if m < 0:
                raise DomainError("negative eta power")
            if len(slots) - m != degree:
                raise HomogeneityError(
                    f"term eta^{m}[{len(slots)} slots] has degree {len(slots) - m}, expected {degree}")
            keep = True
            for a in slots:
                if a.is_zero():
                    raise DomainError("zero slot in a symbol")
                if a == field.one:
                    keep = False   # [1] = 0
                    break
            if keep:
                clean[(m, slots)] = clean.get((m, slots), 0) + coeff
        self.field = field
        self.degree = degree
        self.terms = {k: v for k, v in clean.items() if v != 0}

    def is_zero_expr(self):
        """Syntactically zero (no terms); not a decision procedure."""
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def __add__(self, other):
        return mw_add(self, other)

    def __sub__(self, other):
        return mw_add(self, mw_neg(other))

    def __neg__(self):
        return mw_neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return mw_scale(self, other)
        return mw_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return mw_scale(self, other)
        return mw_mul(other, self)

    def __str__(self):
        return render_expr(self)

    def __repr__(self):
        return f"MWExpr({render_expr(self)} over {self.field})"


def _term_key(key):
    m, slots = key
    return (m, len(slots), tuple(a.sort_key() for a in slots))


def mw_zero(field, degree=0):
    return MWExpr(field, degree, {})


def mw_int(field, n):
    return MWExpr(field, 0, {(0, ()): n})


def symbol(field, coeff, eta_pow, slots):
    slots = tuple(field.elem(a) for a in slots)
    return MWExpr(field, len(slots) - eta_pow, {(eta_pow, slots): coeff})


def bracket(field, *slots):
    """[a_1,...,a_r], degree r."""
    return symbol(field, 1, 0, slots)


def eta(field):
    return symbol(field, 1, 1, ())


def angle(field, u):
    """<u> = 1 + eta[u], degree 0."""
    u = field.elem(u)
    if u.is_zero():
        raise DomainError("zero slot in <u>")
    return mw_int(field, 1) + symbol(field, 1, 1, (u,))


def eps_mw(field):
    """eps = -<-1>."""
    return mw_neg(angle(field, -1))


def hyperbolic_mw(field):
    """h = <1> + <-1> = 2 + eta[-1]."""
    return mw_int(field, 2) + symbol(field, 1, 1, (field.elem(-1),))


def n_eps_mw(field, n):
    """n_eps as a degree-0 expression."""
    if n == 0:
        return mw_zero(field, 0)
    body = mw_zero(field, 0)
    for i in range(1, abs(n) + 1):
        body = body + angle(field, 1 if (i - 1) % 2 == 0 else -1)
    return body if n > 0 else mw_mul(eps_mw(field), body)


def mw_add(x: MWExpr, y: MWExpr) -> MWExpr:
    if x.field != y.field:
        raise DomainError("expressions live over different fields")
    if x.is_zero_expr() and x.degree != y.degree:
        return MWExpr(y.field, y.degree, dict(y.terms))
    if y.is_zero_expr() and x.degree != y.degree:
        return MWExpr(x.field, x.degree, dict(x.terms))
    if x.degree != y.degree:
        raise HomogeneityError(f"cannot add degree {x.degree} to degree {y.degree}")
    terms = dict(x.terms)
    for k, v in y.terms.items():
        terms[k] = terms.get(k, 0) + v
    return MWExpr(x.field, x.degree, terms)


def mw_neg(x: MWExpr) -> MWExpr:
    return MWExpr(x.field, x.degree, {k: -v for k, v in x.terms.items()})


def mw_scale(x: MWExpr, n: int) -> MWExpr:
    return MWExpr(x.field, x.degree, {k: n * v for k, v in x.terms.items()})


def mw_mul(x: MWExpr, y: MWExpr) -> MWExpr:
    if x.field != y.field:
        raise DomainError("expressions live over different fields")
    terms = {}
    for (m1, s1), c1 in x.terms.items():
        for (m2, s2), c2 in y.terms.items():
            key = (m1 + m2, s1 + s2)
            terms[key] = terms.get(key, 0) + c1 * c2
    return MWExpr(x.field, x.degree + y.degree, terms)


def simplify(x: MWExpr) -> MWExpr:
    """Sound partial reduction: Steinberg and [a,-a] kill terms, [a,a] -> [-1,a].

    The output is mw-equal to the input; no completeness is claimed.
    """
    field = x.field
    minus_one = field.elem(-1)
    terms = {}
    for (m, slots), coeff in x.terms.items():
        slots = list(slots)
        changed = True
        dead = False
        while changed and not dead:
            changed = False
            for i in range(len(slots) - 1):
                a, b = slots[i], slots[i + 1]
                if (a + b) == field.one or (a + b).is_zero():
                    dead = True     # [a,1-a] = 0 and [a,-a] = 0
                    break
                if a == b and a != minus_one:
                    slots[i] = minus_one   # [a,a] = [-1,a]
                    changed = True
                    break
        if dead:
            continue
        key = (m, tuple(slots))
        terms[key] = terms.get(key, 0) + coeff
    return MWExpr(field, x.degree, terms)


# ------------------------------------------------------------------ invariants

def to_milnor(x: MWExpr) -> MWExpr:
    """Image in Milnor K-theory: kill every term with a positive eta power."""
    terms = {k: v for k, v in x.terms.items() if k[0] == 0}
    return MWExpr(x.field, x.degree, terms)


def milnor_invariant(x: MWExpr):
    """Canonical value of the Milnor part over a finite field.

    Degree 0: the integer rank.  Degree 1: discrete log of the product of the
    slots, modulo q-1.  Degree >= 2 and all negative degrees: 0 (the Milnor
    K-groups of a finite field vanish there).
    """
    field = x.field
    if not field.is_finite:
        raise UnsupportedFieldError("canonical Milnor values are only defined over finite fields")
    n = x.degree
    if n == 0:
        return sum(v for (m, _), v in x.terms.items() if m == 0)
    if n == 1:
        total = 0
        for (m, slots), coeff in x.terms.items():
            if m == 0:
                total += coeff * field.dlog(slots[0])
        return total % (field.order - 1)
    return 0


def milnor_sign_bit(x: MWExpr) -> int:
    """Mod-2 Milnor invariant over the real model: a symbol counts iff all slots are negative."""
    total = 0
    for (m, slots), coeff in x.terms.items():
        if m != 0:
            continue
        if all(a.payload < 0 for a in slots):
            total += coeff
    return total % 2


def j_witt(x: MWExpr) -> forms.GWForm:
    """The fundamental-ideal image: eta^m [a_1,...,a_r] -> <<a_1,...,a_r>>, read in W.

    Builds the literal Pfister sum (rank 2^r per term); fine for small inputs,
    but the equality oracle uses j_invariants to avoid the exponential rank.
    """
    field = x.field
    out = forms.zero_form(field)
    for (m, slots), coeff in x.terms.items():
        out = forms.gw_add(out, forms.gw_scale(forms.pfister(field, *slots), coeff))
    return out


def j_invariants(x: MWExpr) -> forms.GWInvariants:
    """Invariants of j_witt(x) computed termwise without expanding Pfister forms.

    <<a_1,...,a_r>> has rank 2^r; its discriminant is -a for r = 1 and a square
    for every other r; its real signature is 0 as soon as some slot is positive
    and (-2)^r otherwise.
    """
    field = x.field
    rank = 0
    if field.is_real:
        sig = 0
        for (m, slots), coeff in x.terms.items():
            r = len(slots)
            rank += coeff * (2 ** r)
            if all(a.payload < 0 for a in slots):
                sig += coeff * ((-2) ** r)
        return forms.GWInvariants(rank, None, sig)
    disc_bit = 0   # parity of nonsquare factors in the discriminant
    for (m, slots), coeff in x.terms.items():
        r = len(slots)
        rank += coeff * (2 ** r)
        if r == 1 and coeff % 2 != 0:
            if not field.is_square(-slots[0]):
                disc_bit ^= 1
    return forms.GWInvariants(rank, disc_bit == 0, None)


def gw_to_mw0(form: forms.GWForm) -> MWExpr:
    """<a> -> 1 + eta[a], extended to virtual forms."""
    field = form.field
    out = mw_zero(field, 0)
    for a in form.plus:
        out = out + angle(field, a)
    for a in form.minus:
        out = out - angle(field, a)
    return out


def mw0_to_gw(x: MWExpr) -> forms.GWForm:
    """Inverse of gw_to_mw0 on classes: rebuild a form from (rank, Witt class)."""
    if x.degree != 0:
        raise DomainError("only degree-0 expressions correspond to GW classes")
    field = x.field
    rank = milnor_invariant(x) if field.is_finite else \
        sum(v for (m, _), v in x.terms.items() if m == 0)
    rep = forms.witt_class_from_invariants(field, j_invariants(x))
    gap = rank - rep.rank()
    if gap % 2 != 0:
        raise DomainError("rank does not match the Witt class parity")
    return forms.gw_add(rep, forms.gw_scale(forms.hyperbolic(field), gap // 2))


def h_n(field, slots) -> MWExpr:
    """Hyperbolic lift of a Milnor symbol: {a_1,...,a_n} -> [a_1^2,a_2,...,a_n]."""
    slots = [field.elem(a) for a in slots]
    if not slots:
        return mw_int(field, 2) + symbol(field, 1, 1, (field.elem(-1),))  # h itself
    squared = [slots[0] * slots[0]] + slots[1:]
    return symbol(field, 1, 0, squared)


def canonical_class_rep(x: MWExpr) -> MWExpr:
    """A short canonical representative of the class of x over a finite field.

    Degree >= 2 classes vanish; degree 1 is the unit group (a primitive-root
    power); degree 0 rebuilds the form; negative degrees carry eta-powers of
    the canonical Witt representative.  Over other fields this falls back to
    the partial simplifier.
    """
    field = x.field
    if not field.is_finite:
        return simplify(x)
    n = x.degree
    if n >= 2:
        return mw_zero(field, n)
    if n == 1:
        d = milnor_invariant(x)
        if d == 0:
            return mw_zero(field, 1)
        return bracket(field, field.pow(field.primitive_root(), d))
    if n == 0:
        return gw_to_mw0(mw0_to_gw(x))
    rep = gw_to_mw0(forms.witt_class_from_invariants(field, j_invariants(x)))
    out = rep
    for _ in range(-n):
        out = mw_mul(eta(field), out)
    return out


# ------------------------------------------------------------------ equality

def mw_compare(x: MWExpr, y: MWExpr) -> Equality:
    """Three-valued equality; EQUAL/DIFFERENT are definitive over every field."""
    if x.field != y.field:
        raise DomainError("expressions live over different fields")
    if not x.is_zero_expr() and not y.is_zero_expr() and x.degree != y.degree:
        # distinct graded pieces: equal exactly when both classes vanish
        a, b = _compare_zero(x), _compare_zero(y)
        if Equality.UNDECIDED in (a, b):
            return Equality.UNDECIDED
        return Equality.EQUAL if a is b is Equality.EQUAL else Equality.DIFFERENT
    diff = x - y
    return _compare_zero(diff)


def _compare_zero(diff: MWExpr) -> Equality:
    field = diff.field
    if not diff.terms:
        return Equality.EQUAL
    if field.is_finite:
        if milnor_invariant(diff) != 0:
            return Equality.DIFFERENT
        if not forms.witt_zero_from_invariants(field, j_invariants(diff)):
            return Equality.DIFFERENT
        return Equality.EQUAL
    if field.is_rational_function:
        from . import residues
        return Equality.EQUAL if residues.function_field_is_zero(diff) else Equality.DIFFERENT
    if field.is_real:
        reduced = simplify(diff)
        if not reduced.terms:
            return Equality.EQUAL
        n = reduced.degree
        sig = j_invariants(reduced).signature
        if sig != 0:
            return Equality.DIFFERENT
        if n <= 0:
            rank = sum(v for (m, _), v in reduced.terms.items() if m == 0) if n == 0 else 0
            if n == 0 and rank != 0:
                return Equality.DIFFERENT
            return Equality.EQUAL     # (rank, signature) is complete in degrees <= 0
        if milnor_sign_bit(reduced) != 0:
            return Equality.DIFFERENT
        return Equality.UNDECIDED
    raise UnsupportedFieldError(f"no equality oracle over {field}")


def mw_equal(x: MWExpr, y: MWExpr) -> bool:
    """Decidable equality; raises UndecidedEqualityError in the undecided real-model cases."""
    verdict = mw_compare(x, y)
    if verdict is Equality.UNDECIDED:
        raise UndecidedEqualityError(
            "equality undecided over the real model; use mw_compare for the three-valued answer")
    return verdict is Equality.EQUAL


def mw_is_zero(x: MWExpr) -> bool:
    return mw_equal(x, mw_zero(x.field, x.degree))


# ------------------------------------------------------------------ printing

def render_expr(x: MWExpr) -> str:
    if not x.terms:
        return "0"
    parts = []
    for (m, slots), coeff in x.sorted_terms():
        body = []
        if m == 1:
            body.append("eta")
        elif m > 1:
            body.append(f"eta^{m}")
        if slots:
            body.append("[" + ",".join(x.field.render(a) for a in slots) + "]")
        mag = abs(coeff)
        if not body:
            core = str(mag)
        elif mag == 1:
            core = "*".join(body)
        else:
            core = "*".join([str(mag)] + body)
        if not parts:
            parts.append(core if coeff > 0 else "-" + core)
        else:
            parts.append((" + " if coeff > 0 else " - ") + core)
    return "".join(parts)
