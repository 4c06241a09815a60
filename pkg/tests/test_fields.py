"""Field tower: exact arithmetic, factorization, valuations, residue fields."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwcalc.errors import DomainError
from mwcalc.fields import (
    ExtField,
    Poly,
    PrimeField,
    RationalFunctionField,
    ValuationSpec,
    factor,
    is_irreducible,
    minimal_polynomial,
    real_field,
    residue_field,
    valuation_and_unit,
)

F3 = PrimeField(3)
F5 = PrimeField(5)
F7 = PrimeField(7)
F9 = ExtField(F3, Poly(F3, [1, 0, 1]))  # F3[x]/(x^2+1)
R = real_field()


def poly(field, *coeffs):
    """Polynomial from coefficients, constant term first."""
    return Poly(field, list(coeffs))


# ---------------------------------------------------------------- arithmetic

def test_prime_field_basics():
    a = F5.elem(3)
    b = F5.elem(4)
    assert a + b == F5.elem(2)
    assert a * b == F5.elem(2)
    assert (a / b) * b == a
    assert -a == F5.elem(2)
    assert str(F5.elem(4)) == "-1"
    assert str(F5.elem(3)) == "3"


def test_characteristic_two_rejected():
    with pytest.raises(DomainError):
        PrimeField(2)
    with pytest.raises(DomainError):
        PrimeField(9)


def test_ext_field_arithmetic():
    i = F9.gen  # x with x^2 = -1
    assert i * i == F9.elem(-1)
    assert (F9.one + i) * (F9.one - i) == F9.elem(2)
    for u in F9.units():
        assert u * u.inv() == F9.one
    assert F9.order == 9


def test_ext_field_reducible_modulus_rejected():
    with pytest.raises(DomainError):
        ExtField(F3, poly(F3, 2, 0, 1))  # x^2+2 = x^2-1 splits over F3


def test_rational_function_field_normalisation():
    Ft = RationalFunctionField(F5)
    t = Ft.t
    x = (t * t - 1) / (t - 1)
    assert x == t + 1
    y = Ft.from_polys(poly(F5, 0, 2), poly(F5, 0, 0, 4))  # 2t / 4t^2
    num, den = y.payload
    assert den.is_monic()
    assert str(y) == "3/t"


def test_real_model():
    a = R.elem(-2)
    assert R.is_square(a * a)
    assert not R.is_square(a)
    with pytest.raises(DomainError):
        R.is_square(R.zero)


# ---------------------------------------------------------------- is_square

def brute_squares(field):
    return {(u * u).payload for u in field.units()}


@pytest.mark.parametrize("field", [F3, F5, F7, F9])
def test_is_square_matches_enumeration(field):
    squares = brute_squares(field)
    for u in field.units():
        assert field.is_square(u) == (u.payload in squares)


def test_is_square_examples():
    assert F7.is_square(F7.one)
    assert F5.is_square(F5.elem(-1))      # 2^2 = 4 = -1 mod 5
    assert not F7.is_square(F7.elem(-1))  # enumeration: squares mod 7 are 1,2,4


def test_is_square_unit_times_square_invariant():
    rng = random.Random(11)
    for field in (F3, F5, F7, F9):
        for _ in range(50):
            u = field.random_unit(rng)
            w = field.random_unit(rng)
            assert field.is_square(u * w * w) == field.is_square(u)


# ---------------------------------------------------------------- factor

def brute_force_factor(f):
    """Trial division by monic polynomials of increasing degree (independent oracle)."""
    field = f.field
    unit = f.leading()
    work = f.monic()
    out = {}
    d = 1
    while work.degree() > 0:
        if 2 * d > work.degree():
            out[work] = out.get(work, 0) + 1
            break
        hit = False
        for cand in monic_polys(field, d):
            q, r = work.div(cand)
            if r.is_zero():
                out[cand] = out.get(cand, 0) + 1
                work = q
                hit = True
                break
        if not hit:
            d += 1
    return unit, sorted(out.items(), key=lambda kv: kv[0].key())


def monic_polys(field, degree):
    elems = field.elements()
    stack = [[]]
    for _ in range(degree):
        stack = [s + [c] for s in stack for c in elems]
    for tail in stack:
        yield Poly(field, tail + [field.one])


def test_factor_splits_t_cubed_minus_t():
    unit, factors = factor(poly(F3, 0, 2, 0, 1))  # t^3 - t = t^3 + 2t
    assert unit == F3.one
    assert [(p.render(), m) for p, m in factors] == [("t", 1), ("t+1", 1), ("t+2", 1)]


def test_factor_irreducible_quadratic():
    f = poly(F3, 1, 0, 1)  # t^2+1
    unit, factors = factor(f)
    assert unit == F3.one
    assert factors == [(f, 1)]
    assert brute_force_factor(f) == (unit, factors)


def test_factor_difference_of_squares():
    f = poly(F5, -2, 0, 2)  # 2t^2 - 2
    unit, factors = factor(f)
    assert unit == F5.elem(2)
    assert [(p.render(), m) for p, m in factors] == [("t+1", 1), ("t+4", 1)]


def test_factor_zero_rejected():
    with pytest.raises(DomainError):
        factor(Poly(F5, []))


@pytest.mark.parametrize("field", [F3, F5, F9])
def test_factor_reconstructs_and_is_multiplicative(field):
    rng = random.Random(7)
    elems = field.elements()
    for _ in range(25):
        coeffs = [elems[rng.randrange(len(elems))] for _ in range(rng.randrange(1, 6))]
        f = Poly(field, coeffs + [field.one])
        coeffs = [elems[rng.randrange(len(elems))] for _ in range(rng.randrange(1, 4))]
        g = Poly(field, coeffs + [elems[rng.randrange(1, len(elems))]])
        if g.is_zero():
            continue
        unit, factors = factor(f.mul(g), seed=3)
        prod = Poly(field, [unit])
        for p, mult in factors:
            assert is_irreducible(p)
            assert p.is_monic()
            for _ in range(mult):
                prod = prod.mul(p)
        assert prod == f.mul(g)
        # merging the separate factorizations gives the same multiset
        merged = {}
        for part in (f, g):
            _, fs = factor(part, seed=3)
            for p, m in fs:
                merged[p] = merged.get(p, 0) + m
        assert dict(factors) == merged


def test_factor_with_multiplicity_and_frobenius_powers():
    f = poly(F3, 0, 1).mul(poly(F3, 0, 1)).mul(poly(F3, 0, 1)).mul(poly(F3, 1, 1))
    unit, factors = factor(f)
    assert dict([(p.render(), m) for p, m in factors]) == {"t": 3, "t+1": 1}


# ---------------------------------------------------------------- valuations

FT5 = RationalFunctionField(F5)


def test_valuation_padic_simple():
    t = FT5.t
    v = ValuationSpec.padic(poly(F5, 0, 1))
    n, u = valuation_and_unit(t * t * (t + 1), v)
    assert n == 2
    assert u == t + 1


def test_valuation_infinity_fixed_uniformizer():
    t = FT5.t
    v = ValuationSpec.infinity()
    n, u = valuation_and_unit(FT5.one / t, v)
    assert n == 1
    assert u == FT5.elem(-1)  # 1/t = (-1) * (-1/t)


def test_valuation_via_factor_oracle():
    t = FT5.t
    v = ValuationSpec.padic(poly(F5, -1, 1))  # place t-1
    n, u = valuation_and_unit(t * t - 1, v)
    assert n == 1
    assert u == t + 1


def test_valuation_reconstruction_randomized():
    rng = random.Random(19)
    t = FT5.t
    places = [ValuationSpec.padic(poly(F5, 0, 1)),
              ValuationSpec.padic(poly(F5, 2, 0, 1)),
              ValuationSpec.infinity()]
    for _ in range(40):
        num = Poly(F5, [rng.randrange(5) for _ in range(rng.randrange(1, 4))] + [1])
        den = Poly(F5, [rng.randrange(5) for _ in range(rng.randrange(1, 3))] + [1])
        x = FT5.from_polys(num, den)
        if x.is_zero():
            continue
        for v in places:
            n, u = valuation_and_unit(x, v)
            pi = v.uniformizer(FT5)
            assert u * FT5.pow(pi, n) == x


def test_valuation_of_zero_rejected():
    with pytest.raises(DomainError):
        valuation_and_unit(FT5.zero, ValuationSpec.infinity())


# ---------------------------------------------------------------- residue fields

def test_residue_field_rational_point():
    rf = residue_field(FT5, poly(F5, -2, 1))  # t - 2
    assert rf.field is F5
    f = (FT5.t * FT5.t + 1) / (FT5.t + 1)
    assert rf.reduce(f) == (F5.elem(2) * F5.elem(2) + F5.one) * (F5.elem(2) + F5.one).inv()
    assert rf.lift(F5.elem(4)) == FT5.elem(4)


def test_residue_field_quadratic_point():
    FT3 = RationalFunctionField(F3)
    rf = residue_field(FT3, poly(F3, 1, 0, 1))  # F3[s]/(s^2+1), isomorphic to F9
    assert rf.field.order == 9
    sbar = rf.reduce(FT3.t)
    assert sbar * sbar == rf.field.elem(-1)
    # lift(sbar^2) is the degree-<2 representative -1
    assert rf.lift(sbar * sbar) == FT3.elem(-1)


def test_residue_reduce_lift_roundtrip():
    FT3 = RationalFunctionField(F3)
    rf = residue_field(FT3, poly(F3, 1, 2, 0, 1))
    for y in rf.field.elements():
        lifted = rf.lift(y)
        assert rf.reduce(lifted) == y
        assert lifted.payload[0].degree() < 3


def test_residue_field_rejects_reducible():
    with pytest.raises(DomainError):
        residue_field(FT5, poly(F5, 0, 0, 1))  # t^2


# ---------------------------------------------------------------- hypothesis properties

@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=6),
       st.lists(st.integers(0, 4), min_size=1, max_size=5))
def test_factor_product_roundtrip_property(a_coeffs, b_coeffs):
    f = Poly(F5, a_coeffs + [1])
    g = Poly(F5, b_coeffs + [1])
    unit, factors = factor(f.mul(g), seed=1)
    prod = Poly(F5, [unit])
    for p, mult in factors:
        for _ in range(mult):
            prod = prod.mul(p)
    assert prod == f.mul(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6))
def test_square_class_multiplicativity_property(a, b):
    x, y = F7.elem(a), F7.elem(b)
    assert F7.is_square(x * y) == (F7.is_square(x) == F7.is_square(y))


# ---------------------------------------------------------------- tower helpers

def test_minimal_polynomial_of_tower_generator():
    # F81 as a quadratic extension of F9
    nonsq = next(u for u in F9.units() if not F9.is_square(u))
    F81 = ExtField(F9, Poly(F9, [-nonsq, F9.zero, F9.one]), gen_name="u")
    m = minimal_polynomial(F81.gen, F3)
    assert m.degree() == 4
    assert is_irreducible(m)
    # the generator is a root of its minimal polynomial inside the tower
    acc = F81.zero
    for i, c in enumerate(m.coeffs):
        acc = acc + F81.elem(c.payload) * F81.pow(F81.gen, i)
    assert acc.is_zero()
