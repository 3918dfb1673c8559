"""Command line interface and the expression language.

Expressions are built from quaternion literals, the indeterminate q, the
unary operators conj/sym/inv/-, and binary + - * ^.  The `*` is always the
*-product (there is no sound pointwise product of regular functions to
offer) and `^` is the star power; `inv` and negative exponents produce
rational functions.  Precedence: ^ over unary - over * over binary + -.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from . import experiments, laurent, rational, zeros
from .errors import (ExpectedPolynomial, ParseError, QSliceError, error_kind)
from .geometry import RegionSpec, ball_boundary_points, sigma_regime
from .polynomial import QPolynomial
from .quaternion import Quaternion, format_quaternion, parse_quaternion
from .rational import QRational

# --- abstract syntax ---------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: Quaternion


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str  # neg | conj | sym | inv
    arg: object


@dataclass(frozen=True)
class Binary:
    op: str  # + | - | *
    left: object
    right: object


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int


_UNITS = {"i": Quaternion(0, 1, 0, 0), "j": Quaternion(0, 0, 1, 0),
          "k": Quaternion(0, 0, 0, 1)}
_FUNCS = ("conj", "sym", "inv")


@dataclass(frozen=True)
class _Token:
    kind: str  # num | name | op | end
    pos: int
    text: str
    value: float = 0.0
    unit: str = ""


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit() or ch == ".":
            start = pos
            while pos < n and (text[pos].isdigit() or text[pos] == "."):
                pos += 1
            if pos < n and text[pos] in "eE":
                mark = pos
                pos += 1
                if pos < n and text[pos] in "+-":
                    pos += 1
                if pos < n and text[pos].isdigit():
                    while pos < n and text[pos].isdigit():
                        pos += 1
                else:
                    pos = mark
            try:
                value = float(text[start:pos])
            except ValueError:
                raise ParseError(start, f"malformed number {text[start:pos]!r}")
            unit = ""
            if pos < n and text[pos].isalpha():
                nstart = pos
                while pos < n and text[pos].isalpha():
                    pos += 1
                name = text[nstart:pos]
                if name in _UNITS:
                    unit = name
                else:
                    raise ParseError(nstart, f"unexpected name {name!r} after number")
            out.append(_Token("num", start, text[start:pos], value, unit))
            continue
        if ch.isalpha():
            start = pos
            while pos < n and text[pos].isalpha():
                pos += 1
            name = text[start:pos]
            if name in _UNITS:
                out.append(_Token("num", start, name, 1.0, name))
            elif name == "q" or name in _FUNCS:
                out.append(_Token("name", start, name))
            else:
                raise ParseError(start, f"unknown name {name!r}")
            continue
        if ch in "+-*^()":
            out.append(_Token("op", pos, ch))
            pos += 1
            continue
        raise ParseError(pos, f"unexpected character {ch!r}")
    out.append(_Token("end", n, ""))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def advance(self) -> _Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, op: str):
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(tok.pos, f"expected {op!r}")
        return self.advance()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(tok.pos, f"unexpected trailing input {tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                node = Binary(tok.text, node, self.term())
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.advance()
                node = Binary("*", node, self.unary())
            else:
                return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            arg = self.unary()
            if isinstance(arg, Lit):
                return Lit(-arg.value)
            return Unary("neg", arg)
        return self.power()

    def power(self):
        node = self.atom()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "^":
                self.advance()
                node = Power(node, self.exponent())
            else:
                return node

    def exponent(self) -> int:
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            sign = -1
            tok = self.peek()
        if tok.kind != "num" or tok.unit or tok.value != int(tok.value):
            raise ParseError(tok.pos, "exponent must be an integer")
        self.advance()
        return sign * int(tok.value)

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            if tok.unit:
                return Lit(_UNITS[tok.unit] * tok.value)
            return Lit(Quaternion(tok.value))
        if tok.kind == "name":
            self.advance()
            if tok.text == "q":
                return Var()
            self.expect_op("(")
            arg = self.expr()
            self.expect_op(")")
            return Unary(tok.text, arg)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(tok.pos, "expected a value")


def parse(text: str):
    """Expression text -> AST; ParseError carries the byte offset."""
    return _Parser(text).parse()


# --- canonical printing --------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _node_prec(node) -> int:
    if isinstance(node, Binary):
        return _PREC_ADD if node.op in "+-" else _PREC_MUL
    if isinstance(node, Unary):
        return _PREC_NEG if node.op == "neg" else _PREC_ATOM
    if isinstance(node, Power):
        return _PREC_POW
    if isinstance(node, Lit):
        text = format_quaternion(node.value)
        core = text[1:] if text.startswith("-") else text
        if "+" in core or "-" in core:
            return _PREC_ADD  # multi-term literal needs parens in products
        if text.startswith("-"):
            return _PREC_NEG
        return _PREC_ATOM
    return _PREC_ATOM


def to_text(node) -> str:
    """Canonical form; reparsing yields an equal AST for parser-image ASTs."""
    if isinstance(node, Lit):
        return format_quaternion(node.value)
    if isinstance(node, Var):
        return "q"
    if isinstance(node, Unary):
        if node.op == "neg":
            return "-" + _wrap(node.arg, _PREC_NEG + 1)
        return f"{node.op}({to_text(node.arg)})"
    if isinstance(node, Power):
        return _wrap(node.base, _PREC_POW + 1) + f"^{node.exponent}"
    if isinstance(node, Binary):
        if node.op == "*":
            return _wrap(node.left, _PREC_MUL) + " * " + _wrap(node.right, _PREC_MUL + 1)
        return _wrap(node.left, _PREC_ADD) + f" {node.op} " + _wrap(node.right, _PREC_ADD + 1)
    raise TypeError(f"not an AST node: {node!r}")


def _wrap(node, min_prec: int) -> str:
    text = to_text(node)
    if _node_prec(node) < min_prec:
        return f"({text})"
    return text


# --- lowering -------------------------------------------------------------------


def lower(node):
    """AST -> QPolynomial (when possible) or QRational."""
    if isinstance(node, Lit):
        return QPolynomial.constant(node.value)
    if isinstance(node, Var):
        return QPolynomial.variable()
    if isinstance(node, Unary):
        v = lower(node.arg)
        if node.op == "neg":
            return -v
        if node.op == "conj":
            return v.regular_conj()
        if node.op == "sym":
            if isinstance(v, QPolynomial):
                return v.symmetrize().as_qpolynomial()
            return QRational(v.numerator.symmetrize().as_qpolynomial(),
                             v.denominator * v.denominator)
        if node.op == "inv":
            if isinstance(v, QPolynomial):
                return rational.from_quotient(v, QPolynomial.one())
            return rational.reciprocal(v)
        raise ValueError(f"unknown unary op {node.op!r}")
    if isinstance(node, Power):
        v = lower(node.base)
        if node.exponent >= 0:
            return v ** node.exponent
        if isinstance(v, QPolynomial):
            v = QRational.from_polynomial(v)
        return v ** node.exponent
    if isinstance(node, Binary):
        left = lower(node.left)
        right = lower(node.right)
        if isinstance(left, QRational) or isinstance(right, QRational):
            left = left if isinstance(left, QRational) else QRational.from_polynomial(left)
            right = right if isinstance(right, QRational) else QRational.from_polynomial(right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError(f"not an AST node: {node!r}")


def lower_text(text: str):
    return lower(parse(text))


# --- commands --------------------------------------------------------------------


def _emit(obj) -> None:
    print(json.dumps(obj))


def _finite_or_inf(x: float):
    return x if math.isfinite(x) else "inf"


def _as_rational(value) -> QRational:
    if isinstance(value, QPolynomial):
        return QRational.from_polynomial(value)
    return value


def _cmd_eval(args) -> int:
    value = lower_text(args.expr)
    at = parse_quaternion(args.at)
    if isinstance(value, QPolynomial):
        result = value.eval(at)
    else:
        result = value.eval(at, tol=args.tol)
    _emit({"value": str(result)})
    return 0


def _cmd_zeros(args) -> int:
    value = lower_text(args.expr)
    if not isinstance(value, QPolynomial):
        raise ExpectedPolynomial("zero analysis runs on polynomial expressions")
    report = zeros.analyze_zeros(value)
    _emit(report.to_json_dict())
    return 0


def _cmd_poles(args) -> int:
    value = _as_rational(lower_text(args.expr))
    report = rational.analyze_poles(value)
    _emit(report.to_json_dict())
    return 0


def _cmd_laurent(args) -> int:
    value = _as_rational(lower_text(args.expr))
    center = parse_quaternion(args.center)
    e = laurent.expand_rational(value, center, n_max=args.nmax)
    r1, r2 = laurent.radii(e)
    _emit({
        "center": str(e.center),
        "nmin": e.n_min,
        "nmax": e.n_max,
        "coeffs": [str(e.coefficient(n)) for n in range(e.n_min, e.n_max + 1)],
        "R1": _finite_or_inf(r1),
        "R2": _finite_or_inf(r2),
        "classification": str(e.classify()),
    })
    return 0


def _region_spec(args) -> RegionSpec:
    p = parse_quaternion(args.p)
    if args.kind in ("shell", "open_shell"):
        if args.R1 is None or args.R2 is None:
            raise ParseError(0, "shell kinds need --R1 and --R2")
        r2 = math.inf if args.R2.strip().lower() == "inf" else float(args.R2)
        return RegionSpec(args.kind, p, float(args.R1), r2)
    if args.R is None:
        raise ParseError(0, f"kind {args.kind} needs --R")
    return RegionSpec(args.kind, p, 0.0, float(args.R))


def _cmd_region(args) -> int:
    spec = _region_spec(args)
    if args.contains is not None:
        q = parse_quaternion(args.contains)
        out = {"kind": spec.kind, "p": str(spec.p), "contains": spec.contains(q)}
        if spec.kind == "sigma_ball":
            out["regime"] = sigma_regime(spec.p, spec.r2)
        _emit(out)
        return 0
    pts = ball_boundary_points(spec, args.count)
    print("x0,x1,x2,x3")
    for q in pts:
        print(f"{q.x0!r},{q.x1!r},{q.x2!r},{q.x3!r}")
    return 0


def _cmd_check(args) -> int:
    report = experiments.identity_sweep(args.identity, args.trials, args.seed)
    _emit(report.to_json_dict())
    return 0


def _cmd_cw(args) -> int:
    gen = experiments.CoefficientGenerator(rule=args.rule, ratio=args.ratio)
    result = experiments.casorati_scan(
        gen, parse_quaternion(args.center), args.radius, args.eps,
        args.targets, args.seed, depth=args.depth, budget=args.budget)
    _emit(result.to_json_dict())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="qslice")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression at a point")
    p.add_argument("expr")
    p.add_argument("--at", required=True, metavar="QUAT")
    p.add_argument("--tol", type=float, default=rational.POLE_TOL,
                   help="pole-detection tolerance (default %(default)g)")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("zeros", help="zero report of a polynomial expression")
    p.add_argument("expr")
    p.set_defaults(fn=_cmd_zeros)

    p = sub.add_parser("poles", help="pole report of a rational expression")
    p.add_argument("expr")
    p.set_defaults(fn=_cmd_poles)

    p = sub.add_parser("laurent", help="centered expansion of an expression")
    p.add_argument("expr")
    p.add_argument("--center", required=True, metavar="QUAT")
    p.add_argument("--nmax", type=int, default=laurent.DEFAULT_NMAX)
    p.set_defaults(fn=_cmd_laurent)

    p = sub.add_parser("region", help="membership queries and boundary samples")
    p.add_argument("--kind", required=True,
                   choices=["sigma_ball", "omega_ball", "tau_set", "shell", "open_shell"])
    p.add_argument("--p", required=True, metavar="QUAT")
    p.add_argument("--R", type=float, default=None)
    p.add_argument("--R1", type=float, default=None)
    p.add_argument("--R2", default=None, help="outer radius or 'inf'")
    p.add_argument("--contains", default=None, metavar="QUAT")
    p.add_argument("--count", type=int, default=256)
    p.add_argument("--emit", choices=["csv"], default="csv")
    p.set_defaults(fn=_cmd_region)

    p = sub.add_parser("check", help="run a registered identity sweep")
    p.add_argument("identity")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("cw", help="Casorati-Weierstrass density scan")
    p.add_argument("--rule", default="reciprocal_factorial",
                   choices=["reciprocal_factorial", "geometric"])
    p.add_argument("--center", default="0", metavar="QUAT")
    p.add_argument("--radius", type=float, default=0.5)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--targets", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=40)
    p.add_argument("--ratio", type=float, default=0.5)
    p.add_argument("--budget", type=int, default=10_000)
    p.set_defaults(fn=_cmd_cw)
    return top


# value-taking flags whose arguments may start with '-' (quaternion
# literals, negative radii offsets); joined as --flag=value for argparse
_DASH_VALUE_FLAGS = {"--at", "--center", "--p", "--contains", "--R", "--R1",
                     "--R2", "--radius", "--eps", "--tol", "--ratio"}


def _join_dash_values(argv):
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _DASH_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv) -> int:
    """Dispatch; exit 0 on success, 1 on domain errors, 2 on usage/syntax."""
    parser = _build_parser()
    try:
        args = parser.parse_args(_join_dash_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except ParseError as exc:
        _emit({"error": {"kind": error_kind(exc), "detail": str(exc),
                         "offset": exc.offset}})
        return 2
    except QSliceError as exc:
        _emit({"error": {"kind": error_kind(exc), "detail": str(exc)}})
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
