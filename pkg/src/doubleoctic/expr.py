"""Tokenizer and recursive-descent parser for the package's expression grammar.

The grammar covers both operator texts (``4*Theta*(Theta-1/2) - 12*t*...``)
and linear-form texts (``x + 2*y + z + s*v``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/")? unary)*      # juxtaposition multiplies
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") unary)?
    atom   := NUMBER | NAME | NAME "(" expr ")" | "(" expr ")"

Parsing produces a small AST which :func:`evaluate` folds through an
algebra object; the algebra decides what symbols mean and which products,
quotients and powers are legal.  Products keep their left-to-right order, so
noncommutative algebras see the operands exactly as written.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Protocol

from .errors import ParseError

__all__ = [
    "Num",
    "Sym",
    "Call",
    "Neg",
    "BinOp",
    "Node",
    "parse",
    "evaluate",
    "Algebra",
    "strip_comments",
    "evaluate_scalar",
]


@dataclass(frozen=True)
class Num:
    value: int
    pos: int = 0


@dataclass(frozen=True)
class Sym:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"
    pos: int = 0


Node = Any  # Num | Sym | Call | Neg | BinOp

_ALIASES = {"Θ": "Theta", "θ": "Theta"}
_TRANSLATE = str.maketrans({"−": "-", "·": "*", "×": "*", "–": "-"})

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_Θθ][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    text = text.translate(_TRANSLATE)
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "name":
            value = _ALIASES.get(value, value)
        if value == "**":
            value = "^"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value:
            found = "end of input" if kind == "end" else repr(v)
            raise ParseError(f"expected {value!r}, found {found}", pos, self.text)

    def error(self, message: str):
        raise ParseError(message, self.peek()[2], self.text)

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos, self.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    def _starts_factor(self) -> bool:
        kind, v, _ = self.peek()
        return kind in ("num", "name") or v == "("

    def term(self) -> Node:
        node = self.unary()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v in ("*", "/"):
                self.take()
                node = BinOp(v, node, self.unary(), pos)
            elif self._starts_factor():
                node = BinOp("*", node, self.unary(), pos)
            else:
                return node

    def unary(self) -> Node:
        kind, v, pos = self.peek()
        if kind == "op" and v in ("+", "-"):
            self.take()
            operand = self.unary()
            return Neg(operand, pos) if v == "-" else operand
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, v, pos = self.peek()
        if kind == "op" and v == "^":
            self.take()
            return BinOp("^", base, self.unary(), pos)
        return base

    def atom(self) -> Node:
        kind, v, pos = self.take()
        if kind == "num":
            return Num(int(v), pos)
        if kind == "name":
            if self.peek()[1] == "(" and v == "sqrt":
                self.take()
                arg = self.expr()
                self.expect(")")
                return Call(v, arg, pos)
            return Sym(v, pos)
        if v == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(v)
        raise ParseError(f"unexpected {found}", pos, self.text)


def parse(text: str) -> Node:
    """Parse ``text`` into an AST; raises :class:`ParseError` with a position."""
    return _Parser(text).parse()


def strip_comments(text: str) -> str:
    """Join backslash continuations and drop ``#`` comments."""
    text = text.replace("\\\r\n", " ").replace("\\\n", " ")
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


class Algebra(Protocol):
    def number(self, value: Fraction) -> Any: ...
    def symbol(self, name: str, pos: int) -> Any: ...
    def constant_value(self, value: Any) -> Fraction | None: ...
    def add(self, a: Any, b: Any) -> Any: ...
    def mul(self, a: Any, b: Any) -> Any: ...
    def neg(self, a: Any) -> Any: ...
    def div(self, a: Any, b: Any, pos: int) -> Any: ...
    def power(self, a: Any, n: Any, pos: int) -> Any: ...
    def call(self, func: str, arg: Any, pos: int) -> Any: ...


def evaluate(node: Node, algebra: Algebra):
    """Fold an AST through ``algebra`` (operands are passed in written order)."""
    if isinstance(node, Num):
        return algebra.number(Fraction(node.value))
    if isinstance(node, Sym):
        return algebra.symbol(node.name, node.pos)
    if isinstance(node, Call):
        return algebra.call(node.func, evaluate(node.arg, algebra), node.pos)
    if isinstance(node, Neg):
        return algebra.neg(evaluate(node.operand, algebra))
    if isinstance(node, BinOp):
        left = evaluate(node.left, algebra)
        right = evaluate(node.right, algebra)
        if node.op == "+":
            return algebra.add(left, right)
        if node.op == "-":
            return algebra.add(left, algebra.neg(right))
        if node.op == "*":
            return algebra.mul(left, right)
        if node.op == "/":
            return algebra.div(left, right, node.pos)
        if node.op == "^":
            return algebra.power(left, right, node.pos)
    raise TypeError(f"unknown node {node!r}")


class _ScalarAlgebra:
    """Constant expressions over Q(sqrt(d)); no symbols."""

    def __init__(self, text: str):
        self.text = text

    def number(self, value):
        return value

    def symbol(self, name, pos):
        raise ParseError(f"unexpected symbol {name!r} in a constant", pos, self.text)

    def constant_value(self, value):
        return value

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos):
        if b == 0:
            raise ParseError("division by zero", pos, self.text)
        return a / b

    def power(self, a, n, pos):
        from .exact.scalar import Quad

        if isinstance(n, Quad) or Fraction(n).denominator != 1:
            raise ParseError("exponent must be an integer", pos, self.text)
        if a == 0 and n < 0:
            raise ParseError("division by zero", pos, self.text)
        return a ** int(n)

    def call(self, func, arg, pos):
        from .exact.scalar import Quad, sqrt_of_integer

        if isinstance(arg, Quad) or Fraction(arg).denominator != 1:
            raise ParseError("sqrt takes an integer", pos, self.text)
        return sqrt_of_integer(int(arg))


def evaluate_scalar(text: str):
    """Value of a constant expression such as ``(-1+sqrt(-3))/2``."""
    return evaluate(parse(text), _ScalarAlgebra(text))
