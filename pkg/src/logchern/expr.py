"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' unary) | ('/' INT))*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

Coefficients are exact; a rational ``p/q`` is ``INT '/' INT``.  Decimal
points are rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from . import poly as P
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class ExprError(ValueError):
    """Expression error; ``column`` is 1-based within the parsed text."""

    def __init__(self, code: str, message: str, column: int):
        super().__init__(message)
        self.code = code
        self.column = column


@dataclass
class Token:
    kind: str  # "int", "ident", "op", "end"
    text: str
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.end() - len(m.group(m.lastindex))
        if m.group(1):
            out.append(Token("int", m.group(1), start + 1))
        elif m.group(2):
            out.append(Token("ident", m.group(2), start + 1))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                code = "E_FLOAT" if ch == "." else "E_SYNTAX"
                what = "decimal numbers are not accepted" if ch == "." else f"unexpected character {ch!r}"
                raise ExprError(code, what, start + 1)
            out.append(Token("op", ch, start + 1))
        pos = m.end()
    out.append(Token("end", "", len(text.rstrip()) + 1))
    return out


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.toks = tokenize(text)
        self.i = 0
        self.names = list(names)
        self.nvars = len(names)

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_int(self, what: str) -> int:
        t = self.take()
        if t.kind != "int":
            raise ExprError("E_SYNTAX", f"expected an integer {what}", t.column)
        return int(t.text)

    def parse(self) -> Poly:
        if self.peek().kind == "end":
            raise ExprError("E_SYNTAX", "empty expression", self.peek().column)
        p = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ExprError("E_SYNTAX", f"unexpected {t.text!r}", t.column)
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            q = self.term()
            p = P.add(p, q, 1 if op == "+" else -1)
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            op = self.take()
            if op.text == "*":
                p = P.mul(p, self.unary())
            else:
                col = self.peek().column
                q = self.expect_int("denominator")
                if q == 0:
                    raise ExprError("E_SYNTAX", "division by zero", col)
                p = {m: c / q for m, c in p.items()}
        return p

    def unary(self) -> Poly:
        t = self.peek()
        if t.kind == "op" and t.text in ("+", "-"):
            self.take()
            p = self.unary()
            return p if t.text == "+" else {m: -c for m, c in p.items()}
        return self.power()

    def power(self) -> Poly:
        p = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            k = self.expect_int("exponent")
            p = P.power(p, k, self.nvars)
        return p

    def atom(self) -> Poly:
        t = self.take()
        if t.kind == "int":
            return P.constant(int(t.text), self.nvars)
        if t.kind == "ident":
            if t.text not in self.names:
                raise ExprError("E_UNKNOWN_GEN", f"unknown generator {t.text!r}", t.column)
            return P.variable(self.names.index(t.text), self.nvars)
        if t.kind == "op" and t.text == "(":
            p = self.expr()
            close = self.take()
            if close.text != ")":
                raise ExprError("E_SYNTAX", "expected ')'", close.column)
            return p
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ExprError("E_SYNTAX", f"unexpected {what}", t.column)


def parse_poly(text: str, names: Sequence[str]) -> Poly:
    """Parse ``text`` into a polynomial over the generators ``names``."""
    return _Parser(text, names).parse()


def poly_degrees(p: Poly, degrees: Sequence[int]) -> set[int]:
    return P.degrees_of(p, degrees)


__all__ = ["ExprError", "parse_poly", "tokenize", "poly_degrees"]
