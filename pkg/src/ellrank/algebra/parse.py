"""Text grammar for polynomials.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | VARIABLE | "(" expr ")"

Coefficients are integers.  Over an extension field ``GF(p)[w]/(M)`` the
letter ``w`` stands for the generator, so ``(w+1)*t^2 + w`` is accepted.
Columns in error messages are 1-based.
"""

from __future__ import annotations

import re

from ..errors import ParseError
from .fields import ExtensionField
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text, line, col0):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or not text[pos:].strip():
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        col = col0 + start + 1
        if num is not None:
            tokens.append(("int", int(num), col))
        elif name is not None:
            tokens.append(("name", name, col))
        elif sym in "+-*^()":
            tokens.append((sym, sym, col))
        else:
            raise ParseError(f"unexpected character {sym!r}", line, col)
        pos = m.end()
    tokens.append(("end", None, col0 + len(text.rstrip()) + 1))
    return tokens


class _Parser:
    def __init__(self, text, field, var, line, col0):
        self.K = field
        self.var = var
        self.line = line
        self.toks = _tokenize(text, line, col0)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        acc = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self):
        kind = self.peek()[0]
        if kind in ("+", "-"):
            self.take()
            val = self.unary()
            return -val if kind == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("exponent must be a nonnegative integer", tok)
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.take()
        K = self.K
        if tok[0] == "int":
            return Poly(K, [K.from_int(tok[1])])
        if tok[0] == "name":
            if tok[1] == self.var:
                return Poly.gen(K)
            if tok[1] == "w" and isinstance(K, ExtensionField):
                return Poly(K, [K.gen()])
            self.fail(f"unknown variable {tok[1]!r}", tok)
        if tok[0] == "(":
            val = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.take()
            return val
        if tok[0] == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected token {tok[1]!r}", tok)


def parse_poly(text, field, var="t", line=None, column_offset=0):
    """Parse ``text`` into a :class:`Poly` over ``field`` in the variable ``var``."""
    return _Parser(text, field, var, line, column_offset).parse()
