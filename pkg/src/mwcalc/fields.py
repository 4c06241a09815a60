"""Exact arithmetic for the supported coefficient fields.

Four kinds of field are available:

* ``PrimeField(p)``        -- GF(p) for an odd prime p, elements stored as least
  nonnegative residues;
* ``ExtField(base, m)``    -- base[x]/(m) for a monic irreducible m over a finite
  base (towers allowed), elements stored as coefficient tuples of degree < deg m;
* ``RationalFunctionField(base)`` -- base(t) with elements kept as reduced
  fractions of polynomials, monic denominator;
* ``RealField()``          -- the formal real model: nonzero exact rationals,
  square class = sign.

Characteristic 2 is rejected at construction.  All values are immutable.
Elements print with least nonnegative coefficients except that -1 always
prints as ``-1`` (to stay legible against hand computations).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DomainError


class FieldElem:
    """An element of one of the supported fields; arithmetic delegates to the owner field."""

    __slots__ = ("field", "payload")

    def __init__(self, field, payload):
        self.field = field
        self.payload = payload

    def __add__(self, other):
        return self.field.add(self, self.field.elem(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field.sub(self, self.field.elem(other))

    def __rsub__(self, other):
        return self.field.sub(self.field.elem(other), self)

    def __mul__(self, other):
        return self.field.mul(self, self.field.elem(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.field.div(self, self.field.elem(other))

    def __rtruediv__(self, other):
        return self.field.div(self.field.elem(other), self)

    def __pow__(self, n):
        return self.field.pow(self, n)

    def __neg__(self):
        return self.field.neg(self)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.payload == other.payload
        if isinstance(other, (int, Fraction)):
            return self == self.field.elem(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.payload))

    def is_zero(self):
        return self == self.field.zero

    def inv(self):
        return self.field.inv(self)

    def sort_key(self):
        return self.field.sort_key(self)

    def __str__(self):
        return self.field.render(self)

    def __repr__(self):
        return f"{self.field.render(self)} in {self.field}"


class Field:
    """Common interface of the coefficient fields."""

    is_finite = False
    is_real = False
    is_rational_function = False

    def elem(self, value) -> FieldElem:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def sort_key(self, a):
        raise NotImplementedError

    def render(self, a) -> str:
        raise NotImplementedError

    def render_raw(self, a) -> str:
        """Rendering without the ``-1`` shortcut; used inside polynomial output."""
        return self.render(a)

    def __eq__(self, other):
        return self is other or self.descriptor() == getattr(other, "descriptor", lambda: None)()

    def __hash__(self):
        return hash(self.descriptor())

    def descriptor(self):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class FiniteFieldMixin:
    """Shared behaviour of GF(p) and its extensions."""

    is_finite = True

    def units(self):
        """All nonzero elements in canonical (sort key) order (cached)."""
        cached = getattr(self, "_units", None)
        if cached is None:
            cached = sorted((x for x in self.elements() if not x.is_zero()),
                            key=lambda x: x.sort_key())
            self._units = cached
        return cached

    def is_square(self, a):
        """Euler criterion; 0 is rejected."""
        if a.is_zero():
            raise DomainError("square class of 0 is undefined")
        return self.pow(a, (self.order - 1) // 2) == self.one

    def least_nonsquare(self):
        for u in self.units():
            if not self.is_square(u):
                return u
        raise DomainError("every unit is a square; field of order <= 2?")

    def primitive_root(self):
        """Least primitive root in canonical element order (cached)."""
        if getattr(self, "_primitive_root", None) is None:
            n = self.order - 1
            for g in self.units():
                order = 1
                acc = g
                while acc != self.one:
                    acc = self.mul(acc, g)
                    order += 1
                if order == n:
                    self._primitive_root = g
                    break
        return self._primitive_root

    def dlog(self, u):
        """Discrete log of a unit with respect to the least primitive root (table cached)."""
        if u.is_zero():
            raise DomainError("dlog of 0")
        if getattr(self, "_dlog_table", None) is None:
            g = self.primitive_root()
            table = {}
            acc = self.one
            for k in range(self.order - 1):
                table[acc.payload] = k
                acc = self.mul(acc, g)
            self._dlog_table = table
        return self._dlog_table[u.payload]

    def random_unit(self, rng):
        units = self.units()
        return units[rng.randrange(len(units))]


class PrimeField(FiniteFieldMixin, Field):
    """GF(p) for an odd prime p."""

    def __init__(self, p):
        if p < 3 or not _is_prime(p):
            raise DomainError(f"{p} is not an odd prime (characteristic 2 is out of scope)")
        self.p = p
        self.char = p
        self.order = p
        self.degree = 1
        self.name = f"F{p}"
        self.zero = FieldElem(self, 0)
        self.one = FieldElem(self, 1)
        self._primitive_root = None
        self._dlog_table = None
        self._units = None

    def descriptor(self):
        return ("prime", self.p)

    def elem(self, value):
        if isinstance(value, FieldElem):
            if value.field is self:
                return value
            if value.field == self:
                return FieldElem(self, value.payload)
            raise DomainError(f"cannot coerce element of {value.field} into {self}")
        if isinstance(value, int):
            return FieldElem(self, value % self.p)
        raise DomainError(f"cannot build an element of {self} from {value!r}")

    def elements(self):
        return [FieldElem(self, v) for v in range(self.p)]

    def add(self, a, b):
        return FieldElem(self, (a.payload + b.payload) % self.p)

    def mul(self, a, b):
        return FieldElem(self, (a.payload * b.payload) % self.p)

    def neg(self, a):
        return FieldElem(self, (-a.payload) % self.p)

    def inv(self, a):
        if a.payload == 0:
            raise DomainError("division by zero")
        return FieldElem(self, pow(a.payload, self.p - 2, self.p))

    def sort_key(self, a):
        return (a.payload,)

    def render(self, a):
        if a.payload == self.p - 1:
            return "-1"
        return str(a.payload)

    def render_raw(self, a):
        return str(a.payload)


class ExtField(FiniteFieldMixin, Field):
    """base[x]/(modulus) for monic irreducible modulus over a finite base field."""

    def __init__(self, base, modulus, gen_name="x"):
        if not base.is_finite:
            raise DomainError("extension base must be finite")
        if not modulus.is_monic() or modulus.degree() < 1:
            raise DomainError("modulus must be monic of positive degree")
        if not is_irreducible(modulus):
            raise DomainError(f"modulus {modulus} is reducible over {base}")
        self.base = base
        self.modulus = modulus
        self.gen_name = gen_name
        self.char = base.char
        self.degree = modulus.degree() * base.degree
        self.order = base.char ** self.degree
        self.rel_degree = modulus.degree()
        self.name = f"F{self.order}"
        d = modulus.degree()
        self.zero = FieldElem(self, (base.zero.payload,) * d)
        one = [base.one.payload] + [base.zero.payload] * (d - 1)
        self.one = FieldElem(self, tuple(one))
        self.gen = FieldElem(self, tuple(
            (base.one.payload if i == 1 else base.zero.payload) for i in range(d))) \
            if d > 1 else FieldElem(self, (base.neg(modulus.coeffs[0]).payload,))
        self._primitive_root = None
        self._dlog_table = None
        self._units = None

    def descriptor(self):
        return ("ext", self.base.descriptor(), self.modulus.key())

    def elem(self, value):
        if isinstance(value, FieldElem):
            if value.field is self:
                return value
            if value.field == self:
                return FieldElem(self, value.payload)
            if value.field == self.base:
                pad = (self.base.zero.payload,) * (self.rel_degree - 1)
                return FieldElem(self, (value.payload,) + pad)
            raise DomainError(f"cannot coerce element of {value.field} into {self}")
        if isinstance(value, int):
            return self.elem(self.base.elem(value))
        if isinstance(value, (tuple, list)):
            coeffs = [self.base.elem(c) for c in value]
            if len(coeffs) > self.rel_degree:
                poly = Poly(self.base, coeffs)
                poly = poly.mod(self.modulus)
                coeffs = list(poly.coeffs)
            coeffs += [self.base.zero] * (self.rel_degree - len(coeffs))
            return FieldElem(self, tuple(c.payload for c in coeffs[: self.rel_degree]))
        raise DomainError(f"cannot build an element of {self} from {value!r}")

    def coeff_vector(self, a):
        """Coefficients of a over the immediate base, constant term first."""
        return [FieldElem(self.base, c) for c in a.payload]

    def from_poly(self, poly):
        """Reduce a polynomial over the base modulo the modulus."""
        r = poly.mod(self.modulus)
        coeffs = list(r.coeffs) + [self.base.zero] * (self.rel_degree - len(r.coeffs))
        return FieldElem(self, tuple(c.payload for c in coeffs))

    def to_poly(self, a):
        """The degree < [E:base] representative of a in base[x]."""
        return Poly(self.base, self.coeff_vector(a))

    def elements(self):
        elems = [[]]
        for _ in range(self.rel_degree):
            elems = [e + [c.payload] for e in elems for c in self.base.elements()]
        return [FieldElem(self, tuple(e)) for e in elems]

    def add(self, a, b):
        base = self.base
        return FieldElem(self, tuple(
            base.add(FieldElem(base, x), FieldElem(base, y)).payload
            for x, y in zip(a.payload, b.payload)))

    def neg(self, a):
        base = self.base
        return FieldElem(self, tuple(base.neg(FieldElem(base, x)).payload for x in a.payload))

    def mul(self, a, b):
        prod = self.to_poly(a).mul(self.to_poly(b))
        return self.from_poly(prod)

    def inv(self, a):
        if a.is_zero():
            raise DomainError("division by zero")
        g, s, _ = self.to_poly(a).xgcd(self.modulus)
        if g.degree() != 0:
            raise DomainError("modulus not irreducible (inverse failed)")
        return self.from_poly(s.scale(g.coeffs[0].inv()))

    def sort_key(self, a):
        return tuple(FieldElem(self.base, c).sort_key() for c in a.payload)

    def render(self, a):
        if a == -self.one:
            return "-1"
        return self.to_poly(a).render(self.gen_name)

    def render_raw(self, a):
        poly = self.to_poly(a)
        if poly.num_terms() > 1:
            return f"({poly.render(self.gen_name)})"
        return poly.render(self.gen_name)


class RationalFunctionField(Field):
    """base(t) for a finite base field; elements are reduced fractions with monic denominator."""

    is_rational_function = True

    def __init__(self, base, var="t"):
        if not base.is_finite:
            raise DomainError("function field base must be finite")
        self.base = base
        self.var = var
        self.char = base.char
        self.name = f"{base.name}({var})"
        zero_pair = (Poly(base, []), Poly(base, [base.one]))
        self.zero = FieldElem(self, zero_pair)
        self.one = FieldElem(self, (Poly(base, [base.one]), Poly(base, [base.one])))
        self.t = FieldElem(self, (Poly(base, [base.zero, base.one]), Poly(base, [base.one])))

    def descriptor(self):
        return ("ratfun", self.base.descriptor(), self.var)

    def from_polys(self, num, den=None):
        if den is None:
            den = Poly(self.base, [self.base.one])
        if den.is_zero():
            raise DomainError("zero denominator")
        if num.is_zero():
            return self.zero
        g = num.gcd(den)
        num, den = num.div(g)[0], den.div(g)[0]
        lc = den.coeffs[-1]
        num, den = num.scale(lc.inv()), den.scale(lc.inv())
        return FieldElem(self, (num, den))

    def elem(self, value):
        if isinstance(value, FieldElem):
            if value.field is self:
                return value
            if value.field == self:
                return FieldElem(self, value.payload)
            if value.field == self.base:
                return self.from_polys(Poly(self.base, [value]))
            raise DomainError(f"cannot coerce element of {value.field} into {self}")
        if isinstance(value, int):
            return self.elem(self.base.elem(value))
        if isinstance(value, Poly):
            return self.from_polys(value)
        if isinstance(value, tuple) and len(value) == 2 and isinstance(value[0], Poly):
            return self.from_polys(value[0], value[1])
        raise DomainError(f"cannot build an element of {self} from {value!r}")

    def num(self, a):
        return a.payload[0]

    def den(self, a):
        return a.payload[1]

    def add(self, a, b):
        n1, d1 = a.payload
        n2, d2 = b.payload
        return self.from_polys(n1.mul(d2).add(n2.mul(d1)), d1.mul(d2))

    def mul(self, a, b):
        n1, d1 = a.payload
        n2, d2 = b.payload
        return self.from_polys(n1.mul(n2), d1.mul(d2))

    def neg(self, a):
        n, d = a.payload
        return FieldElem(self, (n.scale(-self.base.one), d))

    def inv(self, a):
        n, d = a.payload
        if n.is_zero():
            raise DomainError("division by zero")
        return self.from_polys(d, n)

    def sort_key(self, a):
        n, d = a.payload
        return (n.key(), d.key())

    def render(self, a):
        n, d = a.payload
        if d.degree() == 0:
            if n.degree() <= 0:
                const = self.base.zero if n.is_zero() else n.coeffs[0]
                return self.base.render(const)
            return n.render(self.var)
        if n.degree() == 0:
            num = self.base.render(n.coeffs[0])
        else:
            num = n.render(self.var)
            if n.num_terms() > 1:
                num = f"({num})"
        den = d.render(self.var)
        if d.num_terms() > 1:
            den = f"({den})"
        return f"{num}/{den}"


class RealField(Field):
    """Formal model of the real numbers: exact nonzero rationals, square class = sign."""

    is_real = True

    def __init__(self):
        self.char = 0
        self.name = "R"
        self.zero = FieldElem(self, Fraction(0))
        self.one = FieldElem(self, Fraction(1))

    def descriptor(self):
        return ("real",)

    def elem(self, value):
        if isinstance(value, FieldElem):
            if value.field == self:
                return FieldElem(self, value.payload)
            raise DomainError(f"cannot coerce element of {value.field} into {self}")
        if isinstance(value, (int, Fraction)):
            return FieldElem(self, Fraction(value))
        raise DomainError(f"cannot build an element of {self} from {value!r}")

    def add(self, a, b):
        return FieldElem(self, a.payload + b.payload)

    def mul(self, a, b):
        return FieldElem(self, a.payload * b.payload)

    def neg(self, a):
        return FieldElem(self, -a.payload)

    def inv(self, a):
        if a.payload == 0:
            raise DomainError("division by zero")
        return FieldElem(self, 1 / a.payload)

    def is_square(self, a):
        if a.payload == 0:
            raise DomainError("square class of 0 is undefined")
        return a.payload > 0

    def sort_key(self, a):
        return (a.payload,)

    def render(self, a):
        return str(a.payload)

    def random_unit(self, rng):
        pool = [Fraction(n) for n in (1, -1, 2, -2, 3, -3, 5, -7)] + \
               [Fraction(1, 2), Fraction(-1, 2), Fraction(4, 9), Fraction(-3, 5)]
        return FieldElem(self, pool[rng.randrange(len(pool))])


_REAL = RealField()


def real_field():
    return _REAL


_FIELD_CACHE = {}


def ext_field(base, modulus, gen_name="x"):
    """Interned extension fields, so derived caches (dlog tables) are shared."""
    key = ("ext", base.descriptor(), modulus.key(), gen_name)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = ExtField(base, modulus, gen_name)
    return _FIELD_CACHE[key]


def function_field(base, var="t"):
    key = ("ratfun", base.descriptor(), var)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = RationalFunctionField(base, var)
    return _FIELD_CACHE[key]


class Poly:
    """Univariate polynomial over a finite field; coefficients constant term first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = [field.elem(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def num_terms(self):
        return sum(1 for c in self.coeffs if not c.is_zero())

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def leading(self):
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self):
        if self.is_zero():
            raise DomainError("cannot normalise the zero polynomial")
        return self.scale(self.leading().inv())

    def add(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        f = self.field
        get = lambda cs, i: cs[i] if i < len(cs) else f.zero
        return Poly(f, [get(self.coeffs, i) + get(other.coeffs, i) for i in range(n)])

    def sub(self, other):
        return self.add(other.scale(-self.field.one))

    def scale(self, c):
        c = self.field.elem(c)
        return Poly(self.field, [c * a for a in self.coeffs])

    def mul(self, other):
        if self.is_zero() or other.is_zero():
            return Poly(self.field, [])
        f = self.field
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(f, out)

    def div(self, other):
        """Exact division with remainder: self = q*other + r, deg r < deg other."""
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        q = [f.zero] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = other.leading().inv()
        while len(rem) >= len(other.coeffs):
            c = rem[-1] * inv_lead
            k = len(rem) - len(other.coeffs)
            q[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(f, q), Poly(f, rem)

    def mod(self, other):
        return self.div(other)[1]

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.mod(b)
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other):
        """Extended gcd: returns (g, s, t) with s*self + t*other = g."""
        f = self.field
        r0, r1 = self, other
        s0, s1 = Poly(f, [f.one]), Poly(f, [])
        t0, t1 = Poly(f, []), Poly(f, [f.one])
        while not r1.is_zero():
            q, r = r0.div(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0.sub(q.mul(s1))
            t0, t1 = t1, t0.sub(q.mul(t1))
        return r0, s0, t0

    def pow_mod(self, n, modulus):
        f = self.field
        result = Poly(f, [f.one])
        base = self.mod(modulus)
        while n:
            if n & 1:
                result = result.mul(base).mod(modulus)
            base = base.mul(base).mod(modulus)
            n >>= 1
        return result

    def derivative(self):
        f = self.field
        return Poly(f, [f.elem(i) * c for i, c in enumerate(self.coeffs)][1:])

    def eval(self, x):
        acc = x.field.zero if isinstance(x, FieldElem) else self.field.zero
        owner = x.field if isinstance(x, FieldElem) else self.field
        for c in reversed(self.coeffs):
            acc = acc * x + owner.elem(c)
        return acc

    def key(self):
        """Canonical total order: degree first, then coefficients from the top down."""
        return (self.degree(), tuple(c.sort_key() for c in reversed(self.coeffs)))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and \
            self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, tuple(c.payload for c in self.coeffs)))

    def render(self, var="t"):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree(), -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            if i == 0:
                parts.append(self.field.render_raw(c))
                continue
            mono = var if i == 1 else f"{var}^{i}"
            if c == self.field.one:
                parts.append(mono)
            else:
                parts.append(f"{self.field.render_raw(c)}*{mono}")
        return "+".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Poly({self.render()})"


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(n ** 0.5) + 1):
        if n % d == 0:
            return False
    return True


def is_irreducible(f):
    """Rabin's test over the finite coefficient field of f."""
    if f.is_zero() or f.degree() < 1:
        return False
    n = f.degree()
    field = f.field
    q = field.order
    x = Poly(field, [field.zero, field.one])
    # x^(q^n) == x mod f
    acc = x
    for _ in range(n):
        acc = acc.pow_mod(q, f)
    if not acc.sub(x).mod(f).is_zero():
        return False
    for r in set(_prime_factors(n)):
        acc = x
        for _ in range(n // r):
            acc = acc.pow_mod(q, f)
        if f.gcd(acc.sub(x)).degree() != 0:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


_FACTOR_CACHE = {}


def factor(f, seed=0):
    """Factor a nonzero polynomial over a finite field.

    Distinct-degree decomposition followed by Cantor-Zassenhaus equal-degree
    splitting; the splitting randomness is driven entirely by ``seed`` so runs
    are reproducible.  Returns ``(unit, [(monic irreducible, multiplicity),...])``
    with factors sorted by (degree, coefficient order).
    """
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    cache_key = (f, seed)
    if cache_key in _FACTOR_CACHE:
        return _FACTOR_CACHE[cache_key]
    field = f.field
    unit = f.leading()
    rng = random.Random(seed)
    work = f.monic()
    found = {}
    element_pool = None

    def record(p, mult):
        found[p] = found.get(p, 0) + mult

    def squarefree_decompose(g):
        """Full squarefree decomposition handling p-th power parts."""
        out = []
        der = g.derivative()
        if der.is_zero():
            p = field.char
            root_coeffs = []
            for i in range(0, g.degree() + 1, p):
                c = g.coeffs[i] if i < len(g.coeffs) else field.zero
                root_coeffs.append(field.pow(c, field.order // p))
            for part, mult in squarefree_decompose(Poly(field, root_coeffs)):
                out.append((part, mult * p))
            return out
        c = g.gcd(der)
        w = g.div(c)[0]
        mult = 1
        while w.degree() > 0:
            y = w.gcd(c)
            z = w.div(y)[0]
            if z.degree() > 0:
                out.append((z, mult))
            w = y
            c = c.div(y)[0]
            mult += 1
        if c.degree() > 0:
            # c collects the factors of multiplicity divisible by char; it is a
            # p-th power, so the recursion lands in the zero-derivative branch
            # which already scales multiplicities by char.
            out.extend(squarefree_decompose(c))
        return out

    def distinct_degree(g):
        """Split squarefree monic g into products of irreducibles of equal degree."""
        q = field.order
        x = Poly(field, [field.zero, field.one])
        h = x
        d = 0
        rest = g
        while rest.degree() > 0:
            d += 1
            if 2 * d > rest.degree():
                yield rest, rest.degree()
                return
            h = h.pow_mod(q, rest)
            common = rest.gcd(h.sub(x))
            if common.degree() > 0:
                yield common, d
                rest = rest.div(common)[0]
                h = h.mod(rest)

    def equal_degree_split(g, d):
        """Cantor-Zassenhaus: split monic squarefree g, all of whose factors have degree d."""
        nonlocal element_pool
        if g.degree() == d:
            return [g]
        if element_pool is None:
            element_pool = field.elements()
        exponent = (field.order ** d - 1) // 2
        while True:
            r = Poly(field, [element_pool[rng.randrange(len(element_pool))]
                             for _ in range(g.degree())])
            if r.degree() < 1:
                continue
            candidate = r.pow_mod(exponent, g).sub(Poly(field, [field.one]))
            h = g.gcd(candidate)
            if 0 < h.degree() < g.degree():
                return equal_degree_split(h, d) + equal_degree_split(g.div(h)[0], d)

    for squarefree, mult in squarefree_decompose(work):
        for product, d in distinct_degree(squarefree.monic()):
            for irr in equal_degree_split(product, d):
                record(irr, mult)

    factors = sorted(found.items(), key=lambda kv: kv[0].key())
    _FACTOR_CACHE[cache_key] = (unit, factors)
    return unit, factors


class ValuationSpec:
    """A place of base(t): either the p-adic place of a monic irreducible p, or infinity.

    The uniformizer at infinity is fixed to -1/t.
    """

    __slots__ = ("kind", "poly")

    def __init__(self, kind, poly=None):
        if kind not in ("padic", "infinity"):
            raise DomainError(f"unknown valuation kind {kind!r}")
        if kind == "padic":
            if poly is None or not poly.is_monic() or not is_irreducible(poly):
                raise DomainError("p-adic place needs a monic irreducible polynomial")
        self.kind = kind
        self.poly = poly

    @staticmethod
    def padic(poly):
        return ValuationSpec("padic", poly)

    @staticmethod
    def infinity():
        return ValuationSpec("infinity")

    def is_infinity(self):
        return self.kind == "infinity"

    def uniformizer(self, field):
        """The canonical uniformizer as an element of the function field."""
        if self.kind == "padic":
            return field.from_polys(self.poly)
        one = Poly(field.base, [field.base.one])
        t = Poly(field.base, [field.base.zero, field.base.one])
        return field.from_polys(one.scale(-field.base.one), t)  # -1/t

    def __eq__(self, other):
        return isinstance(other, ValuationSpec) and self.kind == other.kind and \
            self.poly == other.poly

    def __hash__(self):
        return hash((self.kind, self.poly))

    def __repr__(self):
        return "inf" if self.kind == "infinity" else f"({self.poly.render()})"


def valuation(f_elem, v):
    """The value of v on a nonzero element of base(t)."""
    if f_elem.is_zero():
        raise DomainError("valuation of 0")
    field = f_elem.field
    num, den = f_elem.payload
    if v.is_infinity():
        return den.degree() - num.degree()
    return _ord_at(num, v.poly) - _ord_at(den, v.poly)


def _ord_at(poly, p):
    n = 0
    while True:
        q, r = poly.div(p)
        if not r.is_zero():
            return n
        poly = q
        n += 1


def valuation_and_unit(f_elem, v, pi=None):
    """Write f = u * pi^n exactly with v(u) = 0; pi defaults to the canonical uniformizer."""
    if f_elem.is_zero():
        raise DomainError("valuation of 0")
    field = f_elem.field
    if pi is None:
        pi = v.uniformizer(field)
    elif valuation(pi, v) != 1:
        raise DomainError("supplied uniformizer does not have valuation 1")
    n = valuation(f_elem, v)
    unit = f_elem * field.pow(pi, -n)
    return n, unit


class ResidueFieldData:
    """Residue field of a p-adic place together with reduction and lift maps."""

    __slots__ = ("place", "field", "function_field")

    def __init__(self, function_field, p):
        if not p.is_monic() or not is_irreducible(p):
            raise DomainError("residue field requires a monic irreducible polynomial")
        self.function_field = function_field
        self.place = p
        if p.degree() == 1:
            self.field = function_field.base
        else:
            self.field = ext_field(function_field.base, p, gen_name="s")

    def reduce(self, elem):
        """Reduce an element of base(t) with p-unit denominator into the residue field."""
        num, den = elem.payload
        p = self.place
        if p.degree() == 1:
            c = -p.coeffs[0]
            dv = den.eval(c)
            if dv.is_zero():
                raise DomainError("element has a pole at the place")
            return num.eval(c) * dv.inv()
        dv = self.field.from_poly(den)
        if dv.is_zero():
            raise DomainError("element has a pole at the place")
        return self.field.from_poly(num) * dv.inv()

    def lift(self, elem):
        """The unique representative of degree < deg p, as an element of base(t)."""
        if self.place.degree() == 1:
            return self.function_field.from_polys(Poly(self.function_field.base, [elem]))
        return self.function_field.from_polys(self.field.to_poly(elem))


def residue_field(function_field, p):
    return ResidueFieldData(function_field, p)


def frobenius_trace(ext_field, a):
    """Trace of a from an extension down to its immediate base field."""
    q = ext_field.base.order
    acc = a
    total = a
    for _ in range(ext_field.rel_degree - 1):
        acc = ext_field.pow(acc, q)
        total = total + acc
    vec = ext_field.coeff_vector(total)
    if any(not c.is_zero() for c in vec[1:]):
        raise DomainError("trace did not land in the base field")
    return vec[0]


def flatten_to_prime(elem):
    """Coefficients of elem over the prime field, flattening any extension tower."""
    field = elem.field
    if isinstance(field, PrimeField):
        return [elem]
    out = []
    for c in field.coeff_vector(elem):
        out.extend(flatten_to_prime(c))
    return out


def solve_dependence(vectors, field):
    """First nontrivial linear dependence among vectors over field.

    vectors[i] is a list of field elements; returns coefficients c (same length,
    last nonzero index maximal is normalised to 1) with sum c_i * v_i = 0, or
    None when the vectors are independent.
    """
    rows = []          # reduced rows, each paired with its combination vector
    combos = []
    ncols = len(vectors[0]) if vectors else 0
    for idx, vec in enumerate(vectors):
        vec = list(vec)
        combo = [field.one if i == idx else field.zero for i in range(len(vectors))]
        for rvec, rcombo in zip(rows, combos):
            pivot = next((j for j, x in enumerate(rvec) if not x.is_zero()), None)
            if pivot is None or vec[pivot].is_zero():
                continue
            c = vec[pivot] * rvec[pivot].inv()
            vec = [a - c * b for a, b in zip(vec, rvec)]
            combo = [a - c * b for a, b in zip(combo, rcombo)]
        if all(x.is_zero() for x in vec):
            return combo[: idx + 1]
        rows.append(vec)
        combos.append(combo)
    return None


def minimal_polynomial(elem, prime_base):
    """Minimal polynomial of elem over the prime base field of its tower."""
    vectors = []
    power = elem.field.one
    while True:
        vectors.append([c for c in flatten_to_prime(power)])
        dep = solve_dependence(vectors, prime_base)
        if dep is not None:
            coeffs = [prime_base.elem(c) for c in dep]
            return Poly(prime_base, coeffs).monic()
        power = power * elem


def express_in_power_basis(value, gen, prime_base):
    """Coordinates of value in the basis 1, gen, gen^2, ... over the prime base."""
    n = 1
    f = gen.field
    while prime_base.order ** n < f.order:
        n += 1
    deg = minimal_polynomial(gen, prime_base).degree()
    basis = []
    power = f.one
    for _ in range(deg):
        basis.append(flatten_to_prime(power))
        power = power * gen
    target = flatten_to_prime(value)
    vectors = basis + [target]
    dep = solve_dependence(vectors, prime_base)
    if dep is None or len(dep) != deg + 1 or dep[-1].is_zero():
        raise DomainError("value not in the span of the power basis")
    scale = -dep[-1].inv()
    return [scale * c for c in dep[:-1]]
