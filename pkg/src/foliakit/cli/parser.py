"""Recursive-descent parser for polynomial, rational and Darboux expressions.

Grammar (whitespace is insignificant, implicit multiplication is rejected)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' posint)?
    atom   := number | variable | '(' expr ')' | 'exp' '(' expr ')'

Unary minus binds looser than '^', so ``-x^2`` is ``-(x^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..algebra import MPoly, RationalFunction
from ..errors import FoliakitError
from ..foliation import DarbouxFunction


class ParseError(FoliakitError, ValueError):
    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} at byte offset {offset}"
        super().__init__(message)


class UnsupportedForm(FoliakitError, ValueError):
    """The expression parses but has no R*exp(S) normal form."""


# -- AST --------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Exp:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object


def Add(a, b):
    return BinOp("+", a, b)


def Sub(a, b):
    return BinOp("-", a, b)


def Mul(a, b):
    return BinOp("*", a, b)


def Div(a, b):
    return BinOp("/", a, b)


# -- lexer ------------------------------------------------------------------------

_PUNCT = set("+-*/^()")


def tokenize(text: str) -> list:
    """Tokens as ``(kind, value, offset)`` with kinds num, name, op, end."""
    data = text.encode("utf-8")
    out = []
    i = 0
    while i < len(data):
        c = chr(data[i]) if data[i] < 128 else "\0"
        if c.isspace():
            i += 1
            continue
        if c in _PUNCT:
            out.append(("op", c, i))
            i += 1
            continue
        if c.isdigit() or c == ".":
            j = i
            while j < len(data) and (chr(data[j]).isdigit() or chr(data[j]) == "."):
                j += 1
            lit = data[i:j].decode()
            if lit.count(".") > 1 or lit == ".":
                raise ParseError(f"malformed number {lit!r}", i)
            out.append(("num", lit, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < len(data) and data[j] < 128 and (chr(data[j]).isalnum() or chr(data[j]) == "_"):
                j += 1
            out.append(("name", data[i:j].decode(), i))
            i = j
            continue
        bad = text.encode("utf-8")[i:].decode("utf-8", "replace")[:1]
        raise ParseError(f"unexpected character {bad!r}", i)
    out.append(("end", None, len(data)))
    return out


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = tokenize(text)
        self.pos = 0
        self.variables = tuple(variables)

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, val, off = self.take()
        if val != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {val if val is not None else 'end of input'!r}", off)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        node = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            if kind in ("name", "num") or val == "(":
                raise ParseError("implicit multiplication is not supported", off)
            raise ParseError(f"unexpected {val!r}", off)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.factor())
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, off = self.take()
            if kind == "op" and val == "-":
                raise ParseError("non-positive exponent", off)
            if kind != "num":
                raise ParseError("exponent must be a positive integer literal", off)
            if not val.isdigit():
                raise ParseError(f"non-integer exponent {val!r}", off)
            n = int(val)
            if n <= 0:
                raise ParseError("non-positive exponent", off)
            return Pow(base, n)
        return base

    def atom(self):
        kind, val, off = self.take()
        if kind == "num":
            return Num(Fraction(val))
        if kind == "name":
            if val == "exp":
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return Exp(inner)
            if val not in self.variables:
                raise ParseError(f"unknown variable {val!r} (variables: {', '.join(self.variables)})", off)
            return Var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", off)
        raise ParseError(f"unexpected {val!r}", off)


def parse_expression(text: str, variables: Sequence[str]):
    """Parse ``text`` into an AST over the given variable names."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    ast = _Parser(text, variables).parse()
    _check_exp_nesting(ast, False)
    return ast


def _check_exp_nesting(node, inside: bool) -> None:
    if isinstance(node, Exp):
        if inside:
            raise ParseError("exp(...) may not be nested inside another exp(...)")
        _check_exp_nesting(node.arg, True)
    elif isinstance(node, (Neg,)):
        _check_exp_nesting(node.arg, inside)
    elif isinstance(node, Pow):
        _check_exp_nesting(node.base, inside)
    elif isinstance(node, BinOp):
        _check_exp_nesting(node.left, inside)
        _check_exp_nesting(node.right, inside)


# -- printer --------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _num_text(v: Fraction) -> str:
    if v < 0:
        raise ValueError("number literals are non-negative")
    if v.denominator == 1:
        return str(v.numerator)
    k = 1
    while (v * 10 ** k).denominator != 1:
        k += 1
        if k > 400:
            raise ValueError(f"{v} has no terminating decimal expansion")
    digits = str((v * 10 ** k).numerator).rjust(k + 1, "0")
    return digits[:-k] + "." + digits[-k:]


def to_text(node) -> str:
    """Print an AST so that parsing the text gives back the same AST."""
    if isinstance(node, Num):
        return _num_text(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Exp):
        return f"exp({to_text(node.arg)})"
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        if isinstance(node.arg, BinOp):
            inner = f"({inner})"
        return "-" + inner
    if isinstance(node, Pow):
        base = to_text(node.base)
        if not isinstance(node.base, (Num, Var, Exp)):
            base = f"({base})"
        return f"{base}^{node.exp}"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = to_text(node.left)
        if isinstance(node.left, BinOp) and _PREC[node.left.op] < p:
            left = f"({left})"
        right = to_text(node.right)
        if isinstance(node.right, BinOp) and _PREC[node.right.op] <= p:
            right = f"({right})"
        sep = f" {node.op} " if p == 1 else node.op
        return f"{left}{sep}{right}"
    raise TypeError(f"not an AST node: {node!r}")


# -- lowering ---------------------------------------------------------------------

class _Value:
    """``prefactor * exp(exponent)`` during lowering."""

    __slots__ = ("r", "s", "has_exp")

    def __init__(self, r: RationalFunction, s: RationalFunction, has_exp: bool):
        self.r, self.s, self.has_exp = r, s, has_exp


def lower_to_semantics(ast, variables: Sequence[str]):
    """MPoly when there is no division or exp (or the division is by a
    constant), RationalFunction for genuine quotients, DarbouxFunction when
    exp(...) occurs."""
    vars = tuple(variables)
    val = _lower(ast, vars, "root")
    if val.has_exp:
        if val.r.is_zero():
            raise UnsupportedForm("the expression is identically zero")
        return DarbouxFunction(val.r, val.s)
    if val.r.is_polynomial():
        return val.r.as_poly()
    return val.r


def _lower(node, vars: tuple, path: str) -> _Value:
    zero = RationalFunction(MPoly.zero(vars))
    if isinstance(node, Num):
        return _Value(RationalFunction(MPoly.const(node.value, vars)), zero, False)
    if isinstance(node, Var):
        return _Value(RationalFunction(MPoly.var(node.name, vars)), zero, False)
    if isinstance(node, Neg):
        a = _lower(node.arg, vars, path + ".arg")
        return _Value(-a.r, a.s, a.has_exp)
    if isinstance(node, Pow):
        a = _lower(node.base, vars, path + ".base")
        return _Value(a.r ** node.exp, a.s * node.exp, a.has_exp)
    if isinstance(node, Exp):
        a = _lower(node.arg, vars, path + ".arg")
        if a.has_exp:
            raise UnsupportedForm(f"exp of a transcendent expression at {path}.arg")
        return _Value(RationalFunction(MPoly.const(1, vars)), a.r, True)
    if isinstance(node, BinOp):
        a = _lower(node.left, vars, path + ".left")
        b = _lower(node.right, vars, path + ".right")
        has = a.has_exp or b.has_exp
        if node.op == "*":
            return _Value(a.r * b.r, a.s + b.s, has)
        if node.op == "/":
            if b.r.is_zero():
                raise UnsupportedForm(f"division by zero at {path}")
            return _Value(a.r / b.r, a.s - b.s, has)
        rb = b.r if node.op == "+" else -b.r
        if a.r.is_zero():
            return _Value(rb, b.s, has)
        if b.r.is_zero():
            return _Value(a.r, a.s, has)
        if a.s == b.s:
            return _Value(a.r + rb, a.s, has)
        raise UnsupportedForm(f"sum of terms with different exponentials at {path}")
    raise TypeError(f"not an AST node: {node!r}")


def parse_function(text: str, variables: Sequence[str]):
    return lower_to_semantics(parse_expression(text, variables), variables)
