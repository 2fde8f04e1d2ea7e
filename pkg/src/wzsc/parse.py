"""Parser for hypergeometric term expressions.

Accepted syntax (whitespace-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" (sint | "(" expr ")"))?
    atom   := "poch(" expr "," expr ")" | integer | "n" | "k" | "(" expr ")"

Sums are only allowed between rational functions. A power with a
non-constant exponent needs a rational constant base, e.g. "(-1)^(n+k)" or
"4^(k)". Pochhammer indices must be integer-linear in n and k. The canonical
printed form of every HyperTerm parses back to an equal term.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple, Union

from .poly import Poly, RationalFunction
from .term import HyperTerm, LinearIndex

Value = Union[RationalFunction, HyperTerm]

_TOKEN = re.compile(r"\s*(?:(\d+)|(poch|n|k)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class NonLinearIndex(ParseError):
    """A Pochhammer index that is not integer-linear in n and k."""


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            toks.append(("int", m.group(1), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", start)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def _is_rational(v: Value) -> bool:
    return isinstance(v, RationalFunction)


def _to_term(v: Value, pos: int) -> HyperTerm:
    if isinstance(v, HyperTerm):
        return v
    if v.is_zero():
        raise ParseError("expression is identically zero", pos)
    return HyperTerm(prefactor=v)


def _constant(v: Value):
    if isinstance(v, RationalFunction) and v.numer.is_constant() and v.denom.is_constant():
        return v.numer.constant_value() / v.denom.constant_value()
    return None


def _linear_index(v: Value, pos: int) -> LinearIndex:
    if not isinstance(v, RationalFunction) or not v.denom.is_constant():
        raise NonLinearIndex("index is not a linear form in n, k", pos)
    p = v.numer / v.denom.constant_value()
    coeffs = {(0, 0): Fraction(0), (1, 0): Fraction(0), (0, 1): Fraction(0)}
    for mono, c in p.terms.items():
        if mono not in coeffs:
            raise NonLinearIndex("index is not a linear form in n, k", pos)
        coeffs[mono] = c
    if any(c.denominator != 1 for c in coeffs.values()):
        raise NonLinearIndex("index coefficients must be integers", pos)
    return LinearIndex(int(coeffs[(1, 0)]), int(coeffs[(0, 1)]), int(coeffs[(0, 0)]))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind == "end":
            raise ParseError(f"expected {value!r}", pos)
        return pos

    def parse(self) -> HyperTerm:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        pos = self.peek()[2]
        v = self.expr()
        kind, val, p = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", p)
        return _to_term(v, pos)

    def expr(self) -> Value:
        pos = self.peek()[2]
        v = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op, opos = self.take()[1:]
            w = self.term()
            if not (_is_rational(v) and _is_rational(w)):
                raise ParseError("sums are only allowed between rational functions", opos)
            v = v + w if op == "+" else v - w
        return v

    def term(self) -> Value:
        v = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op, opos = self.take()[1:]
            w = self.unary()
            if _is_rational(v) and _is_rational(w):
                if op == "/" and w.is_zero():
                    raise ParseError("division by zero", opos)
                v = v * w if op == "*" else v / w
            else:
                a, b = _to_term(v, opos), _to_term(w, opos)
                v = a * b if op == "*" else a / b
        return v

    def unary(self) -> Value:
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            v = self.unary()
            return -v
        return self.power()

    def power(self) -> Value:
        base_pos = self.peek()[2]
        v = self.atom()
        if not (self.peek()[1] == "^" and self.peek()[0] == "op"):
            return v
        self.take()
        kind, val, pos = self.peek()
        if val == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            idx = _linear_index(e, pos)
            if idx.is_constant():
                return self._int_power(v, idx.c, base_pos)
            c = _constant(v)
            if c is None or c == 0:
                raise ParseError("a symbolic exponent needs a nonzero rational base", base_pos)
            return HyperTerm(geometric=[(c, idx)])
        sign = 1
        if val == "-":
            self.take()
            sign = -1
            kind, val, pos = self.peek()
        if kind != "int":
            raise ParseError("expected an integer exponent", pos)
        self.take()
        return self._int_power(v, sign * int(val), base_pos)

    def _int_power(self, v: Value, e: int, pos: int) -> Value:
        if _is_rational(v):
            if e < 0 and v.is_zero():
                raise ParseError("zero to a negative power", pos)
            return v**e
        return v**e

    def atom(self) -> Value:
        kind, val, pos = self.take()
        if kind == "int":
            return RationalFunction.from_poly(Poly.const(int(val)))
        if kind == "name":
            if val == "n":
                return RationalFunction.from_poly(Poly.var("n"))
            if val == "k":
                return RationalFunction.from_poly(Poly.var("k"))
            self.expect("(")
            xpos = self.peek()[2]
            x = _constant(self.expr())
            if x is None:
                raise ParseError("Pochhammer base must be a rational constant", xpos)
            self.expect(",")
            ipos = self.peek()[2]
            idx = _linear_index(self.expr(), ipos)
            self.expect(")")
            return HyperTerm.poch(x, idx)
        if val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {val!r}", pos)


def parse_term(text: str) -> HyperTerm:
    """Parse a term expression into its canonical HyperTerm."""
    return _Parser(text).parse()


def format_term(t: HyperTerm) -> str:
    return str(t)
