"""Tiny closed grammar for function specs on the command line.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' signed-integer)?
    atom   := NUMBER | 't' | 'x' | 'u' | 'psi' | 'exp' '(' expr ')' | '(' expr ')'

``psi`` denotes the shifted kernel value psi(t) - psi(a) and maps to the
:data:`psifrac.jets.W` placeholder symbol.  Exponents must be integer
literals; everything else that needs non-integer powers is expressed via
``exp`` or left to the library API.  Deliberately not sympify(): the input
surface stays small and injection-proof.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import sympy as sp

from .errors import DomainError
from .jets import T, U, W, X

__all__ = ["parse_expr", "ParseError"]


class ParseError(DomainError):
    """Raised when a function spec does not conform to the grammar."""


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)

_NAMES = {"t": T, "x": X, "u": U, "psi": W}


@dataclass
class _Token:
    kind: str  # "num" | "name" | "op" | "end"
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            tail = src[pos:].lstrip()
            if not tail:
                break
            raise ParseError(f"unexpected character {tail[0]!r} at position {pos} in {src!r}")
        pos = m.end()
        for kind in ("num", "name", "op"):
            text = m.group(kind)
            if text is not None:
                tokens.append(_Token(kind, text, m.start()))
                break
    tokens.append(_Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        if self.cur.kind != "op" or self.cur.text != text:
            raise ParseError(f"expected {text!r} at position {self.cur.pos} in {self.src!r}")
        self.advance()

    def parse(self) -> sp.Expr:
        e = self.expr()
        if self.cur.kind != "end":
            raise ParseError(
                f"trailing input {self.cur.text!r} at position {self.cur.pos} in {self.src!r}"
            )
        return e

    def expr(self) -> sp.Expr:
        e = self.term()
        while self.cur.kind == "op" and self.cur.text in "+-":
            op = self.advance().text
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> sp.Expr:
        e = self.unary()
        while self.cur.kind == "op" and self.cur.text in "*/":
            op = self.advance().text
            rhs = self.unary()
            e = e * rhs if op == "*" else e / rhs
        return e

    def unary(self) -> sp.Expr:
        if self.cur.kind == "op" and self.cur.text == "-":
            self.advance()
            return -self.unary()
        return self.power()

    def power(self) -> sp.Expr:
        base = self.atom()
        if self.cur.kind == "op" and self.cur.text == "^":
            self.advance()
            sign = 1
            if self.cur.kind == "op" and self.cur.text == "-":
                self.advance()
                sign = -1
            tok = self.cur
            if tok.kind != "num" or not re.fullmatch(r"\d+", tok.text):
                raise ParseError(
                    f"exponent must be an integer literal at position {tok.pos} in {self.src!r}"
                )
            self.advance()
            return base ** (sign * int(tok.text))
        return base

    def atom(self) -> sp.Expr:
        tok = self.cur
        if tok.kind == "num":
            self.advance()
            return sp.Integer(int(tok.text)) if "." not in tok.text else sp.Float(tok.text)
        if tok.kind == "name":
            self.advance()
            if tok.text == "exp":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return sp.exp(arg)
            try:
                return _NAMES[tok.text]
            except KeyError:
                raise ParseError(
                    f"unknown name {tok.text!r} at position {tok.pos} in {self.src!r}"
                ) from None
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected token {tok.text!r} at position {tok.pos} in {self.src!r}")


def parse_expr(spec: str) -> sp.Expr:
    """Parse a function spec into a sympy expression over x, t, u and psi.

    ``psi`` is returned as the :data:`psifrac.jets.W` symbol, to be
    substituted with ``psi(t) - psi(a)`` by the caller.
    """
    if not spec or not spec.strip():
        raise ParseError("empty function spec")
    return _Parser(spec).parse()
