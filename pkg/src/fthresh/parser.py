"""Recursive-descent parser for polynomial and ideal expressions.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := INT | VAR ('^' INT)? | '(' expr ')' ('^' INT)?

Ideals are comma-separated generator expressions; ``@m`` expands to the
maximal ideal generated by all variables.
"""

from __future__ import annotations

import re

from .core import MAX_EXPONENT, ExponentOverflowError, Poly, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.column})")


class UnknownVariableError(ParseError):
    pass


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("VAR", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tokens.append(("OP", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2])

    def expect_op(self, op):
        tok = self.advance()
        if tok[0] != "OP" or tok[1] != op:
            raise ParseError(f"expected {op!r}", self.text, tok[2])

    def parse(self) -> Poly:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise self.error(f"unexpected {tok[1]!r}")
        return result

    def expr(self) -> Poly:
        sign = 1
        tok = self.peek()
        if tok[0] == "OP" and tok[1] in "+-":
            self.advance()
            sign = -1 if tok[1] == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            tok = self.peek()
            if tok[0] == "OP" and tok[1] in "+-":
                self.advance()
                rhs = self.term()
                result = result + rhs if tok[1] == "+" else result - rhs
            else:
                return result

    def _starts_factor(self, tok) -> bool:
        return tok[0] in ("INT", "VAR") or (tok[0] == "OP" and tok[1] == "(")

    def term(self) -> Poly:
        result = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "OP" and tok[1] == "*":
                self.advance()
                result = result * self.factor()
            elif self._starts_factor(tok):
                result = result * self.factor()
            else:
                return result

    def exponent(self) -> int:
        tok = self.peek()
        if tok[0] == "OP" and tok[1] == "^":
            self.advance()
            num = self.advance()
            if num[0] != "INT":
                raise ParseError("expected integer exponent", self.text, num[2])
            n = int(num[1])
            if n > MAX_EXPONENT:
                raise ExponentOverflowError(
                    str(ParseError("exponent overflow", self.text, num[2]))
                )
            return n
        return 1

    def factor(self) -> Poly:
        tok = self.advance()
        kind, value, pos = tok
        if kind == "INT":
            return self.ring.constant(int(value) % self.ring.p)
        if kind == "VAR":
            if value not in self.ring.variables:
                raise UnknownVariableError(f"unknown variable {value!r}", self.text, pos)
            n = self.exponent()
            exps = tuple(n if v == value else 0 for v in self.ring.variables)
            return self.ring.monomial(exps)
        if kind == "OP" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            n = self.exponent()
            if n != 1 and not inner.is_zero and max(inner.max_exponents()) * n > MAX_EXPONENT:
                raise ExponentOverflowError(str(ParseError("exponent overflow", self.text, pos)))
            return inner**n
        if kind == "END":
            raise ParseError("unexpected end of input", self.text, pos)
        raise ParseError(f"unexpected {value!r}", self.text, pos)


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse ``text`` into the canonical sparse form over ``ring`` (coefficients mod p)."""
    return _Parser(text, ring).parse()


def split_generators(text: str) -> list[str]:
    """Split at top-level commas (commas inside parentheses are kept)."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [s for s in (p.strip() for p in parts) if s]


def parse_generators(text: str, ring: PolyRing) -> list[Poly]:
    if text.strip() == "@m":
        return ring.gens()
    return [parse_poly(s, ring) for s in split_generators(text)]
