"""Parser for the printed rational-function grammar.

Accepted: integers, the variable, ``+ - * / ^``, parentheses, and integer
exponents that may be negative (``t^-1``, ``t^(-2)``).  Whitespace is ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .rational import RatFun, as_ratfun

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class RatFunSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        elif op is not None and not op.isspace():
            out.append(("op", op))
        pos = m.end()
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = variables

    def peek(self) -> tuple[str, str]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op: str) -> None:
        kind, val = self.take()
        if (kind, val) != ("op", op):
            raise RatFunSyntaxError(f"expected {op!r} in {self.text!r}, found {val or 'end'!r}")

    def parse(self) -> RatFun:
        val = self.expr()
        if self.peek()[0] != "end":
            raise RatFunSyntaxError(f"trailing input in {self.text!r}: {self.peek()[1]!r}")
        return val

    def expr(self) -> RatFun:
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RatFun:
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self) -> RatFun:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RatFun:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            base = base ** self.exponent()
        return base

    def exponent(self) -> int:
        sign = 1
        if self.peek() == ("op", "("):
            self.take()
            e = self.exponent()
            self.expect(")")
            return e
        while self.peek() in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -sign
        kind, val = self.take()
        if kind != "num":
            raise RatFunSyntaxError(f"exponent must be an integer in {self.text!r}")
        return sign * int(val)

    def atom(self) -> RatFun:
        kind, val = self.take()
        if kind == "num":
            return RatFun.const(Fraction(int(val)))
        if kind == "name":
            if val not in self.variables:
                raise RatFunSyntaxError(f"unknown symbol {val!r} in {self.text!r}")
            return RatFun.monomial(1)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise RatFunSyntaxError(f"unexpected {val or 'end of input'!r} in {self.text!r}")


def parse_ratfun(text, variables: tuple[str, ...] = ("t",)) -> RatFun:
    """Parse text (or pass through an int/Fraction/RatFun) into a canonical RatFun."""
    if not isinstance(text, str):
        return as_ratfun(text)
    return _Parser(text, variables).parse()
