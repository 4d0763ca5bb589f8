"""A small expression language over one variable ``t`` with jet evaluation.

Grammar (EBNF, whitespace insignificant)::

    expr     = term , { ("+" | "-") , term } ;
    term     = unary , { ("*" | "/") , unary } ;
    unary    = "-" , unary | power ;
    power    = atom , { "^" , exponent } ;
    exponent = [ "-" ] , NUMBER ;              (* constant exponents only *)
    atom     = NUMBER | "pi" | "t"
             | FUNC , "(" , expr , ")"
             | "(" , expr , ")" ;
    FUNC     = "sin" | "cos" | "tan" | "exp" | "log" | "sqrt"
             | "sinh" | "cosh" | "tanh" | "atan" ;

``^`` binds tighter than unary minus; binary operators of equal precedence
associate to the left.  General powers must be written ``exp(b*log(a))``.
Evaluation returns a jet, so user-defined curvature functions come with the
exact derivatives the cusp criteria need.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from . import jets
from .errors import DomainError, ExprSyntaxError, UnknownIdentifier
from .jets import DEFAULT_ORDER, Jet

FUNCTIONS = {
    "sin": jets.sin,
    "cos": jets.cos,
    "tan": jets.tan,
    "exp": jets.exp,
    "log": jets.log,
    "sqrt": jets.sqrt,
    "sinh": jets.sinh,
    "cosh": jets.cosh,
    "tanh": jets.tanh,
    "atan": jets.atan,
}


@dataclass(frozen=True)
class Num:
    value: float
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Var:
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Pi:
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Neg:
    child: object
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    power: float
    pos: int = field(default=-1, compare=False)


@dataclass(frozen=True)
class Func:
    name: str
    arg: object
    pos: int = field(default=-1, compare=False)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(src):
    out = []
    i = 0
    while i < len(src):
        m = _TOKEN.match(src, i)
        if m is None:
            stripped = src[i:].lstrip()
            if not stripped:
                break
            at = len(src) - len(stripped)
            raise ExprSyntaxError(f"unexpected character {src[at]!r}", at)
        if m.lastgroup == "num":
            out.append(("num", m.group("num"), m.start("num")))
        elif m.lastgroup == "name":
            out.append(("name", m.group("name"), m.start("name")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        i = m.end()
    out.append(("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, text, pos = self.peek()
        if kind == "op" and text == op:
            return self.next()
        raise ExprSyntaxError(f"expected {op!r}", pos)

    def parse(self):
        node = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {text!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text in "+-":
                self.next()
                node = BinOp(text, node, self.term(), pos)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text in "*/":
                self.next()
                node = BinOp(text, node, self.unary(), pos)
            else:
                return node

    def unary(self):
        kind, text, pos = self.peek()
        if kind == "op" and text == "-":
            self.next()
            return Neg(self.unary(), pos)
        return self.power()

    def power(self):
        node = self.atom()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text == "^":
                self.next()
                node = Pow(node, self.exponent(), pos)
            else:
                return node

    def exponent(self):
        sign = 1.0
        kind, text, pos = self.peek()
        if kind == "op" and text == "-":
            self.next()
            sign = -1.0
            kind, text, pos = self.peek()
        if kind != "num":
            raise ExprSyntaxError(
                "exponent must be a numeric constant (use exp(b*log(a)))", pos
            )
        self.next()
        return sign * float(text)

    def atom(self):
        kind, text, pos = self.next()
        if kind == "num":
            return Num(float(text), pos)
        if kind == "name":
            if text == "t":
                return Var(pos)
            if text == "pi":
                return Pi(pos)
            if text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Func(text, arg, pos)
            raise UnknownIdentifier(f"unknown identifier {text!r}", pos)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(f"unexpected {text!r}" if text else "unexpected end of input", pos)


def parse(src):
    """Parse source text into an expression tree."""
    return _Parser(src).parse()


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4, "atom": 5}


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _PREC["neg"]
    if isinstance(node, Pow):
        return _PREC["^"]
    if isinstance(node, Num) and node.value < 0:
        return _PREC["neg"]
    return _PREC["atom"]


def to_source(node):
    """Canonical printer; parse(to_source(parse(s))) == parse(s)."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return "t"
    if isinstance(node, Pi):
        return "pi"
    if isinstance(node, Neg):
        inner = to_source(node.child)
        if _prec(node.child) < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Func):
        return f"{node.name}({to_source(node.arg)})"
    if isinstance(node, Pow):
        base = to_source(node.base)
        if _prec(node.base) < _PREC["atom"]:
            base = f"({base})"
        expo = repr(node.power) if node.power >= 0 else f"-{abs(node.power)!r}"
        return f"{base}^{expo}"
    if isinstance(node, BinOp):
        lhs, rhs = to_source(node.left), to_source(node.right)
        p = _PREC[node.op]
        if _prec(node.left) < p:
            lhs = f"({lhs})"
        # left associativity: parenthesise right child at equal precedence
        if _prec(node.right) <= p and node.op in "-/+*":
            if _prec(node.right) < p or node.op in "-/":
                rhs = f"({rhs})"
        return f"{lhs} {node.op} {rhs}"
    raise TypeError(f"not an expression node: {node!r}")


def eval_jet(e, t, order=DEFAULT_ORDER):
    """Evaluate an expression (tree or source text) as a jet at parameter t.

    ``t`` may be a float or a numpy array; jets then carry array
    coefficients.  Raises DomainError, tagged with the offending
    subexpression, for log/sqrt/power domain violations and division by
    zero.
    """
    if isinstance(e, str):
        e = parse(e)
    return _eval(e, Jet.variable(t, order))


def _eval(node, tj):
    if isinstance(node, Num):
        return Jet.constant(node.value, tj.order)
    if isinstance(node, Pi):
        return Jet.constant(math.pi, tj.order)
    if isinstance(node, Var):
        return tj
    if isinstance(node, Neg):
        return -_eval(node.child, tj)
    if isinstance(node, Func):
        arg = _eval(node.arg, tj)
        try:
            return FUNCTIONS[node.name](arg)
        except DomainError as err:
            raise DomainError(str(err), subexpr=to_source(node), offset=node.pos) from None
    if isinstance(node, Pow):
        base = _eval(node.base, tj)
        try:
            return base ** node.power
        except DomainError as err:
            raise DomainError(str(err), subexpr=to_source(node), offset=node.pos) from None
    if isinstance(node, BinOp):
        lhs = _eval(node.left, tj)
        rhs = _eval(node.right, tj)
        if node.op == "+":
            return lhs + rhs
        if node.op == "-":
            return lhs - rhs
        if node.op == "*":
            return lhs * rhs
        try:
            return lhs / rhs
        except DomainError as err:
            raise DomainError(str(err), subexpr=to_source(node), offset=node.pos) from None
    raise TypeError(f"not an expression node: {node!r}")


@dataclass
class ValidationReport:
    """Outcome of sampling an expression's jets over an interval."""

    ok: bool
    samples: int
    domain_errors: list  # (t, message, subexpr)
    max_abs: tuple  # per derivative order, over successful samples

    def worst(self):
        return max(self.max_abs) if self.max_abs else float("nan")


def validate(e, interval, samples, order=DEFAULT_ORDER):
    """Evaluate jets on a uniform grid, collecting domain errors and magnitudes.

    Never raises for evaluation problems; they are returned as report
    entries so a caller can warn about blow-ups or partial-domain inputs.
    """
    import numpy as np

    a, b = float(interval[0]), float(interval[1])
    if not (a < b) or samples < 2:
        raise ValueError("need a < b and samples >= 2")
    if isinstance(e, str):
        e = parse(e)
    grid = np.linspace(a, b, samples)
    errs = []
    maxes = [0.0] * (order + 1)
    for t in grid:
        try:
            j = _eval(e, Jet.variable(float(t), order))
        except DomainError as err:
            errs.append((float(t), str(err), err.subexpr))
            continue
        for k in range(order + 1):
            v = abs(float(j.d[k]))
            if v > maxes[k]:
                maxes[k] = v
    return ValidationReport(
        ok=not errs,
        samples=samples,
        domain_errors=errs,
        max_abs=tuple(maxes),
    )
