"""Expression syntax for Fermat reals.

Grammar (whitespace insensitive)::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ['^' nat]
    atom     := rational | 'eps(' ['-'] rational ')' | '(' expr ')' | '-' atom
    rational := integer ['/' positive-integer] | decimal

Decimals are read exactly (``0.1`` is ``1/10``).  ``eps(a)`` stands for
``t**a``; exponents above 1 vanish on evaluation and exponents ``<= 0`` are
a semantic error.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from .core import FermatReal, NotLittleOhError, const, eps, format_fermat, neg, pow_nat

__all__ = [
    "ParseError",
    "EvalError",
    "Num",
    "Eps",
    "Neg",
    "BinOp",
    "Pow",
    "Expression",
    "parse",
    "evaluate",
    "parse_fermat",
    "format_fermat",
]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, source: str = ""):
        self.position = position
        self.source = source
        super().__init__(f"syntax error at position {position}: {message}")

    def caret(self) -> str:
        return f"{self.source}\n{' ' * self.position}^"


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Eps:
    exponent: Fraction
    position: int = 0


@dataclass(frozen=True)
class Neg:
    operand: "Expression"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Pow:
    base: "Expression"
    exponent: int


Expression = Union[Num, Eps, Neg, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?|\.\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> List[_Tok]:
    toks, i = [], 0
    while True:
        m = _TOKEN.match(src, i)
        if not m:
            rest = src[i:]
            if not rest.strip():
                break
            pos = i + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        i = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, message=None, tok=None):
        tok = tok or self.tok
        if message is None:
            message = "unexpected end of input" if tok.kind == "end" else f"unexpected {tok.text!r}"
        raise ParseError(message, tok.pos, self.src)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.fail(f"expected {text!r}" + ("" if self.tok.kind == "end" else f", found {self.tok.text!r}"))

    def parse(self) -> Expression:
        node = self.expr()
        if self.tok.kind != "end":
            self.fail()
        return node

    def expr(self) -> Expression:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expression:
        node = self.factor()
        while self.accept("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expression:
        node = self.atom()
        if self.accept("^"):
            tok = self.tok
            if tok.kind != "num" or "." in tok.text:
                self.fail("power must be a natural number")
            self.i += 1
            node = Pow(node, int(tok.text))
        return node

    def atom(self) -> Expression:
        tok = self.tok
        if tok.kind == "num":
            return Num(self.rational())
        if tok.kind == "name":
            if tok.text != "eps":
                self.fail(f"unknown name {tok.text!r}")
            self.i += 1
            self.expect("(")
            negative = self.accept("-")
            if self.tok.kind != "num":
                self.fail("expected a rational exponent")
            a = self.rational()
            self.expect(")")
            return Eps(-a if negative else a, tok.pos)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if self.accept("-"):
            return Neg(self.atom())
        self.fail()

    def rational(self) -> Fraction:
        tok = self.tok
        self.i += 1
        if "." in tok.text:
            return Fraction(tok.text)
        value = Fraction(int(tok.text))
        if self.accept("/"):
            den = self.tok
            if den.kind != "num" or "." in den.text:
                self.fail("denominator must be a positive integer")
            if int(den.text) == 0:
                self.fail("zero denominator", den)
            self.i += 1
            value /= int(den.text)
        return value


def parse(src: str) -> Expression:
    return _Parser(src).parse()


def evaluate(node: Expression) -> FermatReal:
    if isinstance(node, Num):
        return const(node.value)
    if isinstance(node, Eps):
        if node.exponent <= 0:
            raise EvalError(f"eps exponent must be positive, got {node.exponent} (position {node.position})")
        return eps(node.exponent)
    if isinstance(node, Neg):
        return neg(evaluate(node.operand))
    if isinstance(node, Pow):
        return pow_nat(evaluate(node.base), node.exponent)
    left, right = evaluate(node.left), evaluate(node.right)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def parse_fermat(src: str) -> FermatReal:
    """Parse and evaluate ``src``; raises ParseError or EvalError."""
    try:
        return evaluate(parse(src))
    except NotLittleOhError as exc:
        raise EvalError(str(exc)) from exc
