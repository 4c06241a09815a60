"""Parsers for field descriptors, polynomial literals and symbol expressions.

Descriptor syntax:   F5 | F9=F3[x]/(x^2+1) | F5(t) | R
Polynomial literal:  t^2+3*t+1            (over the relevant base field)
Expression grammar:  integers, eta, [a1,...,ar], <u>, +, -, *, parentheses;
                     element literals use the owner field's generators.
A trailing `@O(d)`, `@omega` or `@triv` attaches a twist label.
"""

from __future__ import annotations

import re

from .errors import DomainError, ParseError
from .fields import (
    PrimeField,
    RationalFunctionField,
    ext_field,
    function_field,
    real_field,
)
from . import mw

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("INT", int(m.group(1)), pos))
        elif m.group(2) is not None:
            tokens.append(("NAME", m.group(2), pos))
        else:
            ch = m.group(3)
            if not ch.isspace():
                tokens.append(("OP", ch, pos))
        pos = m.end()
    tokens.append(("END", None, len(text)))
    return tokens


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.items = tokenize(text)
        self.i = 0

    def peek(self):
        return self.items[self.i]

    def next(self):
        tok = self.items[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind}, found {tok[1]!r}", tok[2])
        return tok

    def at_op(self, *ops):
        tok = self.peek()
        return tok[0] == "OP" and tok[1] in ops


# ------------------------------------------------------------------ descriptors

def parse_field(text):
    """Parse a field descriptor like F5, F9=F3[x]/(x^2+1), F5(t) or R."""
    text = text.strip()
    if text == "R":
        return real_field()
    m = re.fullmatch(r"(.+)\(t\)", text)
    if m:
        return function_field(parse_field(m.group(1)))
    m = re.fullmatch(r"F(\d+)=F(\d+)\[([A-Za-z])\]/\((.+)\)", text)
    if m:
        order, p, gen, modulus_text = int(m.group(1)), int(m.group(2)), m.group(3), m.group(4)
        base = PrimeField(p)
        modulus = parse_poly(modulus_text, base, var=gen)
        field = ext_field(base, modulus, gen_name=gen)
        if field.order != order:
            raise ParseError(f"F{order} does not match a degree-{modulus.degree()} extension of F{p}")
        return field
    m = re.fullmatch(r"F(\d+)", text)
    if m:
        q = int(m.group(1))
        try:
            return PrimeField(q)
        except DomainError as exc:
            raise ParseError(
                f"F{q} needs an explicit presentation like F9=F3[x]/(x^2+1)") from exc
    raise ParseError(f"cannot parse field descriptor {text!r}")


def parse_poly(text, base, var="t"):
    """Parse a polynomial literal such as t^2+3*t+1 over a finite base field."""
    ft = RationalFunctionField(base, var=var)
    value = parse_element(text, ft, {var: ft.t})
    num, den = value.payload
    if den.degree() != 0:
        raise ParseError(f"{text!r} is not polynomial in {var}")
    return num


# ------------------------------------------------------------------ elements

def parse_element(text, field, names=None):
    toks = _Tokens(text)
    value = _element_sum(toks, field, names or _default_names(field))
    toks.expect("END")
    return value


def _default_names(field):
    names = {}
    if getattr(field, "gen_name", None):
        names[field.gen_name] = field.gen
    if field.is_rational_function:
        names["t"] = field.t
        base = field.base
        if getattr(base, "gen_name", None):
            names[base.gen_name] = field.elem(base.gen)
    return names


def _element_sum(toks, field, names):
    value = _element_product(toks, field, names)
    while toks.at_op("+", "-"):
        op = toks.next()[1]
        rhs = _element_product(toks, field, names)
        value = value + rhs if op == "+" else value - rhs
    return value


def _element_product(toks, field, names):
    value = _element_power(toks, field, names)
    while toks.at_op("*", "/"):
        op = toks.next()[1]
        rhs = _element_power(toks, field, names)
        value = value * rhs if op == "*" else value / rhs
    return value


def _element_power(toks, field, names):
    value = _element_atom(toks, field, names)
    if toks.at_op("^"):
        toks.next()
        sign = 1
        if toks.at_op("-"):
            toks.next()
            sign = -1
        tok = toks.expect("INT")
        value = field.pow(value, sign * tok[1])
    return value


def _element_atom(toks, field, names):
    tok = toks.next()
    if tok[0] == "INT":
        return field.elem(tok[1])
    if tok[0] == "NAME":
        if tok[1] in names:
            return names[tok[1]]
        raise ParseError(f"unknown element literal {tok[1]!r}", tok[2])
    if tok[0] == "OP" and tok[1] == "-":
        return -_element_atom(toks, field, names)
    if tok[0] == "OP" and tok[1] == "(":
        value = _element_sum(toks, field, names)
        toks.expect("OP", ")")
        return value
    raise ParseError(f"unexpected {tok[1]!r} in element literal", tok[2])


# ------------------------------------------------------------------ expressions

def parse_expr(text, field):
    """Parse a symbol expression; returns (MWExpr, twist label or None)."""
    text = text.strip()
    twist = None
    m = re.search(r"@\s*(O\(\s*-?\d+\s*\)|omega|triv)\s*$", text)
    if m:
        twist = m.group(1).replace(" ", "")
        text = text[: m.start()].strip()
    toks = _Tokens(text)
    expr = _expr_sum(toks, field)
    toks.expect("END")
    return expr, twist


def twist_to_int(label):
    if label is None or label == "triv":
        return 0
    if label == "omega":
        return -2
    m = re.fullmatch(r"O\((-?\d+)\)", label)
    if m:
        return int(m.group(1))
    raise ParseError(f"unknown twist label {label!r}")


def _expr_sum(toks, field):
    negate = False
    if toks.at_op("-"):
        toks.next()
        negate = True
    value = _expr_term(toks, field)
    if negate:
        value = mw.mw_neg(value)
    while toks.at_op("+", "-"):
        op = toks.next()[1]
        rhs = _expr_term(toks, field)
        value = mw.mw_add(value, rhs if op == "+" else mw.mw_neg(rhs))
    return value


def _expr_term(toks, field):
    value = _expr_factor(toks, field)
    while toks.at_op("*"):
        toks.next()
        rhs = _expr_factor(toks, field)
        if isinstance(value, int):
            value = rhs if value == 1 else mw.mw_scale(rhs, value)
        elif isinstance(rhs, int):
            value = mw.mw_scale(value, rhs)
        else:
            value = mw.mw_mul(value, rhs)
    if isinstance(value, int):
        value = mw.mw_int(field, value)
    return value


def _expr_factor(toks, field):
    tok = toks.peek()
    names = _default_names(field)
    if tok[0] == "INT":
        toks.next()
        return tok[1]
    if tok[0] == "NAME" and tok[1] == "eta":
        toks.next()
        power = 1
        if toks.at_op("^"):
            toks.next()
            power = toks.expect("INT")[1]
        return mw.symbol(field, 1, power, ())
    if tok[0] == "OP" and tok[1] == "[":
        toks.next()
        slots = [_element_sum(toks, field, names)]
        while toks.at_op(","):
            toks.next()
            slots.append(_element_sum(toks, field, names))
        toks.expect("OP", "]")
        return mw.bracket(field, *slots)
    if tok[0] == "OP" and tok[1] == "<":
        toks.next()
        u = _element_sum(toks, field, names)
        toks.expect("OP", ">")
        return mw.angle(field, u)
    if tok[0] == "OP" and tok[1] == "(":
        toks.next()
        value = _expr_sum(toks, field)
        toks.expect("OP", ")")
        return value
    if tok[0] == "OP" and tok[1] == "-":
        toks.next()
        inner = _expr_factor(toks, field)
        if isinstance(inner, int):
            return -inner
        return mw.mw_neg(inner)
    raise ParseError(f"unexpected {tok[1]!r} in expression", tok[2])
