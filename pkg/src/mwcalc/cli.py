"""Command-line calculator and property-suite runner.

Commands: eval, residue, transfer, degree, complex, euler, reciprocity, suite.
Output is canonical text by default, JSON (schema mwcalc/1) with --json.
Exit codes: 0 success, 1 property failure, 2 usage/parse error.
The default seed comes from MWCALC_SEED; --seed overrides.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .errors import MWCalcError, ParseError
from .fields import Poly, ValuationSpec, function_field, residue_field
from . import mw
from .lines import TwistedMW
from .parsing import parse_element, parse_expr, parse_field, parse_poly, twist_to_int
from .residues import (
    canonical_transfer_expr,
    geometric_transfer,
    reciprocity_defect,
    residue,
    residue_twisted,
)
from .rost_schmid import (
    INFINITY,
    RSCochain,
    affine_line,
    cochain0,
    differential,
    euler_class_line,
    point_twist_word,
    proj_line,
    pushforward_point,
)
from .suites import SUITES, run_suite

JSON_SCHEMA = "mwcalc/1"


def _emit(args, payload, text):
    if args.json:
        print(json.dumps({"schema": JSON_SCHEMA, **payload}, sort_keys=True))
    else:
        print(text)


def _default_seed(args):
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("MWCALC_SEED", "0"))


def cmd_eval(args):
    field = parse_field(args.field)
    expr, twist = parse_expr(args.expr, field)
    if args.reduce:
        expr = mw.canonical_class_rep(expr)
    rendered = mw.render_expr(expr)
    if twist:
        rendered += f" @{twist}"
    _emit(args, {"command": "eval", "result": rendered}, rendered)
    return 0


def _parse_place(text, ft):
    if text.strip() in ("inf", "infinity"):
        return ValuationSpec.infinity()
    return ValuationSpec.padic(parse_poly(text, ft.base))


def cmd_residue(args):
    field = parse_field(args.field)
    if not field.is_rational_function:
        raise ParseError("residues need a rational function field, e.g. --field \"F3(t)\"")
    expr, _ = parse_expr(args.expr, field)
    v = _parse_place(args.at, field)
    if args.pi is not None:
        pi = parse_element(args.pi, field)
        value = residue(expr, v, pi=pi)
        label = field.render(pi)
        if any(op in label for op in "+-*/^") and not label.startswith("("):
            label = f"({label})"
        basis = f"{label}*"
        rendered = f"{mw.render_expr(value)} @ {basis}"
        payload = {"command": "residue", "at": _place_label(v), "pi": field.render(pi),
                   "value": mw.render_expr(value), "twistWord": basis}
    else:
        twisted = residue_twisted(TwistedMW(expr), v)
        rendered = str(twisted)
        payload = {"command": "residue", "at": _place_label(v),
                   "value": mw.render_expr(twisted.normalized().expr),
                   "twistWord": ",".join(a.render() for a in twisted.word)}
    _emit(args, payload, rendered)
    return 0


def _place_label(v):
    return "(-1/t)" if v.is_infinity() else v.poly.render()


def cmd_transfer(args):
    field = parse_field(args.field)
    if field.is_rational_function or not field.is_finite:
        raise ParseError("transfer expects the base finite field, e.g. --field F3")
    p = parse_poly(args.ext, field)
    rf = residue_field(function_field(field), p)
    expr, _ = parse_expr(args.expr, rf.field)
    value = canonical_transfer_expr(expr, p) if args.canonical else \
        geometric_transfer(expr, p)
    if args.reduce:
        value = mw.canonical_class_rep(value)
    rendered = mw.render_expr(value)
    _emit(args, {"command": "transfer", "ext": p.render(), "canonical": args.canonical,
                 "result": rendered}, rendered)
    return 0


def _parse_cochain(text, scheme, twist, weight):
    """Cochain literal: semicolon-separated `point: expr` pairs; points are
    monic polynomial literals or `inf`; values parse over the residue fields."""
    ft = scheme.function_field()
    values = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        point_text, _, expr_text = chunk.partition(":")
        if not expr_text:
            raise ParseError(f"cochain entry {chunk!r} is missing a value")
        point_text = point_text.strip()
        if point_text in ("inf", "infinity"):
            point = INFINITY
            kappa = scheme.base
        else:
            point = parse_poly(point_text, scheme.base)
            if not point.is_monic():
                raise ParseError(f"point {point_text!r} must be monic")
            kappa = residue_field(ft, point).field
        expr, _ = parse_expr(expr_text.strip(), kappa)
        values[point] = expr
    return RSCochain(scheme, 1, weight, twist, values)


def cmd_degree(args):
    field = parse_field(args.field)
    scheme = proj_line(field)
    twist = twist_to_int(args.twist) if args.twist else 0
    cochain = _parse_cochain(args.cochain, scheme, twist, args.weight)
    value = pushforward_point(cochain)
    rendered = mw.render_expr(value)
    _emit(args, {"command": "degree", "result": rendered}, rendered)
    return 0


def cmd_complex(args):
    field = parse_field(args.field)
    scheme = proj_line(field) if args.scheme == "P1" else affine_line(field)
    twist = twist_to_int(args.twist) if args.twist else 0
    if args.op != "d":
        raise ParseError(f"unknown complex operation {args.op!r}")
    ft = scheme.function_field()
    expr, _ = parse_expr(args.expr, ft)
    x = cochain0(scheme, expr, twist=twist)
    dx = differential(x)
    points = []
    for point, value in sorted(dx.values.items(),
                               key=lambda kv: (2, ()) if kv[0] == INFINITY else (1, kv[0].key())):
        label = "inf" if point == INFINITY else point.render()
        word = point_twist_word(scheme, 1, twist, point)
        points.append({"point": label, "expr": mw.render_expr(value),
                       "twistWord": ",".join(a.render() for a in word)})
    payload = {"command": "complex", "scheme": args.scheme, "twist": twist,
               "weight": dx.weight, "points": points}
    text = "; ".join(f"{p['point']}: {p['expr']} @ {p['twistWord']}" for p in points) or "0"
    _emit(args, payload, text)
    return 0


def cmd_euler(args):
    field = parse_field(args.field)
    section = parse_poly(args.section, field)
    cls = euler_class_line(args.d, section)
    deg = mw.render_expr(cls.degree_value)
    points = []
    for point, value in sorted(cls.cochain.values.items(),
                               key=lambda kv: (2, ()) if kv[0] == INFINITY else (1, kv[0].key())):
        label = "inf" if point == INFINITY else point.render()
        points.append({"point": label, "expr": mw.render_expr(value)})
    payload = {"command": "euler", "d": args.d, "section": section.render(),
               "chowDegree": cls.chow_degree, "degree": deg, "points": points}
    text = f"euler(O({args.d}), {section.render()}): chow={cls.chow_degree} degree={deg}"
    _emit(args, payload, text)
    return 0


def cmd_reciprocity(args):
    field = parse_field(args.field)
    if not field.is_rational_function:
        raise ParseError("reciprocity runs over a rational function field")
    seed = _default_seed(args)
    rng = random.Random(seed)
    from .suites import _random_function_expr
    failures = 0
    for _ in range(args.samples):
        x = _random_function_expr(field, rng, degree=1, max_terms=2, max_deg=2)
        if not mw.mw_is_zero(reciprocity_defect(x)):
            failures += 1
    ok = failures == 0
    text = f"{'PASS' if ok else 'FAIL'} {args.samples - failures}/{args.samples}"
    _emit(args, {"command": "reciprocity", "samples": args.samples, "seed": seed,
                 "failures": failures, "result": text}, text)
    return 0 if ok else 1


def cmd_suite(args):
    seed = _default_seed(args)
    report = run_suite(args.name, seed=seed)
    payload = {"command": "suite", "name": args.name, "seed": seed,
               "passed": report.passed, "total": report.total,
               "failures": report.failures[:20]}
    _emit(args, payload, report.summary())
    return 0 if report.ok() else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="mwcalc",
                                     description="Milnor-Witt K-theory calculator")
    parser.add_argument("--json", action="store_true", help="emit JSON (schema mwcalc/1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="parse and canonically print an expression")
    p.add_argument("--field", required=True)
    p.add_argument("--reduce", action="store_true",
                   help="print the canonical class representative (finite fields)")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("residue", help="residue at a place of F(t)")
    p.add_argument("--field", required=True)
    p.add_argument("--at", required=True, help="monic irreducible polynomial or inf")
    p.add_argument("--pi", help="uniformizer (defaults to the canonical one)")
    p.add_argument("expr")
    p.set_defaults(func=cmd_residue)

    p = sub.add_parser("transfer", help="transfer from F[t]/(p) down to F")
    p.add_argument("--field", required=True, help="the base finite field")
    p.add_argument("--ext", required=True, help="monic irreducible polynomial p")
    p.add_argument("--canonical", action="store_true",
                   help="apply the separable <p'> twist (canonical transfer)")
    p.add_argument("--reduce", action="store_true",
                   help="print the canonical class representative")
    p.add_argument("expr", help="expression over F[t]/(p); its class uses the generator s")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("degree", help="Milnor-Witt degree of a codim-1 cochain on P1")
    p.add_argument("--field", required=True)
    p.add_argument("--twist", help="O(d), omega or triv")
    p.add_argument("--weight", type=int, default=1)
    p.add_argument("cochain", help="semicolon list of point: expr pairs")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("complex", help="Rost-Schmid differential of a generic cochain")
    p.add_argument("--scheme", choices=["A1", "P1"], default="P1")
    p.add_argument("--field", required=True)
    p.add_argument("--twist", help="O(d), omega or triv")
    p.add_argument("op", help="the operation; only d is defined")
    p.add_argument("expr", help="generic expression over F(t)")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("euler", help="Euler class of O(d) on P1 from a section")
    p.add_argument("--field", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--section", required=True, help="polynomial of degree <= d")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("reciprocity", help="randomized reciprocity check")
    p.add_argument("--field", required=True)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_reciprocity)

    p = sub.add_parser("suite", help="run a named property suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "seed"):
        args.seed = None
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MWCalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
