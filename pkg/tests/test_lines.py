"""Graded lines: signs, tensor words, rebasing, determinant bookkeeping."""

import random

import pytest

from mwcalc.errors import DomainError, ScopeError
from mwcalc.fields import Poly, PrimeField, function_field, residue_field
from mwcalc import mw
from mwcalc.mw import angle, bracket, eps_mw, mw_equal, mw_mul
from mwcalc.lines import (
    GradedLine,
    LineAtom,
    TwistedMW,
    chart_atom,
    chart_transition,
    dual_line,
    dual_pairing_sign,
    m_atom,
    rewrite_dt_at_point,
    swap_sign,
    tensor,
    twisted_compare,
    twisted_equal,
)

F3 = PrimeField(3)
F5 = PrimeField(5)
FT5 = function_field(F5)


def line(shift, *names):
    return GradedLine(tuple(LineAtom("sec", n) for n in names), shift)


def test_swap_signs():
    assert swap_sign(line(1, "L"), line(1, "N")) == -1
    assert swap_sign(line(0, "L"), line(3, "N")) == 1
    assert swap_sign(line(2, "L"), line(5, "N")) == 1
    for a in range(-3, 4):
        for b in range(-3, 4):
            assert swap_sign(line(a), line(b)) * swap_sign(line(b), line(a)) == 1


def test_dual_pairing_sign():
    assert dual_pairing_sign(line(0)) == 1
    assert dual_pairing_sign(line(1)) == -1
    assert dual_pairing_sign(line(2)) == 1


def test_tensor_is_strictly_associative():
    g1, g2, g3 = line(1, "a"), line(-1, "b"), line(2, "c")
    left = tensor(tensor(g1, g2), g3)
    right = tensor(g1, tensor(g2, g3))
    assert left == right
    assert left.shift == 2
    assert tensor(g1, dual_line(g1)).shift == 0


def test_rebase_roundtrip_and_squares():
    rng = random.Random(3)
    for _ in range(30):
        u = F5.random_unit(rng)
        x = TwistedMW(bracket(F5, 2), (m_atom("t"),))
        back = x.rebase(u).rebase(u.inv())
        assert twisted_equal(back, x)
        w = F5.random_unit(rng)
        assert twisted_equal(x.rebase(w * w), x)
    with pytest.raises(DomainError):
        TwistedMW(bracket(F5, 2)).rebase(F5.zero)


def test_twisted_compare_requires_matching_words():
    x = TwistedMW(bracket(F5, 2), (m_atom("t"),))
    y = TwistedMW(bracket(F5, 2), (m_atom("t+1"),))
    with pytest.raises(ScopeError):
        twisted_compare(x, y)


def test_normalized_absorbs_prefactor():
    u = F5.elem(2)
    x = TwistedMW(bracket(F5, 3), (m_atom("t"),), unit=u)
    n = x.normalized()
    assert n.unit == F5.one
    assert mw_equal(n.expr, mw_mul(angle(F5, u), bracket(F5, 3)))


def test_rewrite_dt_at_rational_point():
    # at V(p) the conversion dt <-> p-bar costs <p'(x)>
    p = Poly(F5, [F5.elem(-1), F5.elem(2), F5.one])   # t^2+2t-1, p' = 2t+2
    rf = residue_field(FT5, p)
    value = TwistedMW(bracket(rf.field, rf.field.gen), (LineAtom("dt", "dt", dual=True),))
    out = rewrite_dt_at_point(value, p, lambda poly: rf.field.from_poly(poly))
    assert out.word[0].kind == "m" and out.word[0].dual
    pprime = rf.field.from_poly(p.derivative())
    expected = mw_mul(angle(rf.field, pprime), value.expr)
    assert mw_equal(out.expr, expected)
    # identity composition: a linear place with p' = 1 changes nothing
    q = Poly(F5, [F5.elem(-2), F5.one])
    rfq = residue_field(FT5, q)
    v2 = TwistedMW(bracket(F5, 2), (LineAtom("dt", "dt", dual=True),))
    out2 = rewrite_dt_at_point(v2, q, lambda poly: poly.eval(F5.elem(2)))
    assert mw_equal(out2.expr, v2.expr)


def test_chart_transition_acts_by_t_to_the_d():
    x = TwistedMW(bracket(FT5, FT5.t + 1), (chart_atom("0", 1),))
    out = chart_transition(x, 1, FT5.t, to_chart="inf")
    assert out.word[0].tag == "einf(1)"
    assert mw_equal(out.expr, mw_mul(angle(FT5, FT5.t), x.expr))
    # even twist: the transition is trivial on classes and on stored data
    y = TwistedMW(bracket(FT5, FT5.t + 1), (chart_atom("0", 2),))
    out2 = chart_transition(y, 2, FT5.t, to_chart="inf")
    assert out2.expr.terms == y.expr.terms


def test_twisted_product_commutation_rule():
    # the pairing of twisted classes is <(-1)^{a a'}> eps^{m n}-commutative:
    # the swapped product, transported back along the graded-line symmetry
    # (which carries the unit (-1)^{a a'}), differs by eps^{mn} <(-1)^{aa'}>
    rng = random.Random(17)
    word = (m_atom("l"), m_atom("lp"))
    for _ in range(40):
        a_shift = rng.randint(-2, 2)
        b_shift = rng.randint(-2, 2)
        m_deg = rng.randint(1, 2)
        n_deg = rng.randint(1, 2)
        alpha = mw.symbol(F3, 1, 0, tuple(F3.random_unit(rng) for _ in range(m_deg)))
        beta = mw.symbol(F3, 1, 0, tuple(F3.random_unit(rng) for _ in range(n_deg)))
        direct = TwistedMW(mw_mul(alpha, beta), word)
        line_sign = swap_sign(line(a_shift), line(b_shift))
        transported = TwistedMW(mw_mul(beta, alpha), word,
                                unit=F3.elem(line_sign))
        sign = mw.mw_int(F3, 1)
        if (m_deg * n_deg) % 2:
            sign = mw_mul(sign, eps_mw(F3))
        if (a_shift * b_shift) % 2:
            sign = mw_mul(sign, angle(F3, -1))
        adjusted = TwistedMW(mw_mul(sign, transported.normalized().expr), word)
        assert twisted_equal(direct, adjusted)
