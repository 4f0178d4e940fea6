"""Recursive-descent parser for polynomial and rational-function expressions.

Grammar (whitespace insignificant)::

    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*          # "/" also allowed for rational functions
    factor   := "-" factor | base ("^" natural)?
    base     := rational | variable | "(" expr ")"
    rational := integer ("/" positive-integer)?

Unary minus binds looser than ``^`` so ``-s^2`` means ``-(s^2)``.
"""

import re
from fractions import Fraction

from ..errors import ParseError
from .multipoly import DEFAULT_VARS, MultiPoly
from .ratfunc import RationalFunction

RESERVED = ("u", "g", "θ")

_TOKEN = re.compile(r"\s*(?:(\d+)|([^\W\d]\w*)|(.))", re.UNICODE)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            if not m.group(3).isspace():
                tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables, rational):
        self.text = text
        self.variables = tuple(variables)
        self.rational = rational
        self.tokens = _tokenize(text)
        self.i = 0

    # helpers -----------------------------------------------------------
    def error(self, message, tok=None):
        tok = tok or self.tokens[self.i]
        offset = len(self.text[: tok[2]].encode("utf-8"))
        raise ParseError(message, offset)

    def peek(self, k=0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, op):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == op:
            self.i += 1
            return True
        return False

    def const(self, c):
        p = MultiPoly.constant(c, self.variables)
        return RationalFunction(p, reduce=False) if self.rational else p

    # grammar -----------------------------------------------------------
    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "/":
                self.error("division inside a polynomial context")
            self.error(f"unexpected token {tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            if self.accept("*"):
                value = value * self.factor()
            elif self.rational and self.peek()[:2] == ("op", "/"):
                tok = self.take()
                divisor = self.factor()
                if divisor.is_zero():
                    self.error("division by zero", tok)
                value = value / divisor
            else:
                return value

    def factor(self):
        if self.accept("-"):
            return -self.factor()
        value = self.base()
        if self.accept("^"):
            tok = self.peek()
            if tok[0] != "num":
                self.error("exponent must be a natural number")
            self.take()
            value = value ** int(tok[1])
        return value

    def base(self):
        tok = self.peek()
        kind, text = tok[0], tok[1]
        if kind == "num":
            self.take()
            value = Fraction(int(text))
            nxt, after = self.peek(), self.peek(1)
            if nxt[:2] == ("op", "/") and after[0] == "num":
                if int(after[1]) == 0:
                    self.error("zero denominator in rational literal", after)
                self.i += 2
                value = value / int(after[1])
            return self.const(value)
        if kind == "name":
            self.take()
            if text not in self.variables:
                self.error(f"unknown variable {text!r}", tok)
            p = MultiPoly.var(text, self.variables)
            return RationalFunction(p, reduce=False) if self.rational else p
        if kind == "op" and text == "(":
            self.take()
            value = self.expr()
            if not self.accept(")"):
                self.error("expected ')'")
            return value
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected token {text!r}")


def _check_vars(variables):
    for v in variables:
        if v in RESERVED:
            raise ValueError(f"variable name {v!r} is reserved")


def parse_expression(text, variables=DEFAULT_VARS):
    """Parse a polynomial expression into a :class:`MultiPoly`."""
    _check_vars(variables)
    return _Parser(text, variables, rational=False).parse()


def parse_rational(text, variables=DEFAULT_VARS):
    """Parse an expression where ``/`` may divide arbitrary subexpressions."""
    _check_vars(variables)
    return _Parser(text, variables, rational=True).parse()
