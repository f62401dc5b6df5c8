"""Canonical text syntax for field elements.

Grammar (whitespace ignored):
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-'* factor
    factor := atom ('^' integer)?
    atom   := integer | name | '(' expr ')'

Names resolve per descriptor: `w` for the finite-field generator, the
declared variable names of a rational function field, and tower generator
names (with all base names still visible).
"""

from __future__ import annotations

import re

from . import unipoly
from .errors import BadParameters

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*|\+|-|/|\^|\(|\))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise BadParameters(f"cannot tokenize element text at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, names, from_int, div):
        self.tokens = tokens
        self.i = 0
        self.names = names
        self.from_int = from_int
        self.div = div

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.next()
            rhs = self.unary()
            value = value * rhs if op == "*" else self.div(value, rhs)
        return value

    def unary(self):
        sign = 1
        while self.peek() == "-":
            self.next()
            sign = -sign
        value = self.factor()
        return value if sign == 1 else -value

    def factor(self):
        value = self.atom()
        if self.peek() == "^":
            self.next()
            tok = self.next()
            neg = False
            if tok == "-":
                neg = True
                tok = self.next()
            if tok is None or not tok.isdigit():
                raise BadParameters("exponent must be an integer")
            e = int(tok)
            value = value ** (-e if neg else e)
        return value

    def atom(self):
        tok = self.next()
        if tok is None:
            raise BadParameters("unexpected end of element text")
        if tok.isdigit():
            return self.from_int(int(tok))
        if tok == "(":
            value = self.expr()
            if self.next() != ")":
                raise BadParameters("unbalanced parentheses")
            return value
        if tok in self.names:
            return self.names[tok]
        raise BadParameters(f"unknown name {tok!r} in element text")


def _field_names(field):
    kind = field.kind
    if kind == "prime":
        return {}
    if kind == "finite":
        return {"w": field.generator()}
    if kind == "rational_function":
        return {name: field.var(name) for name in field.vars}
    if kind == "simple_extension":
        names = {
            name: field.from_base(elem)
            for name, elem in _field_names(field.base).items()
        }
        names[field.gen_name] = field.generator()
        return names
    raise BadParameters(f"no name table for descriptor kind {kind!r}")


def parse_element(field, text):
    tokens = _tokenize(text)
    if not tokens:
        raise BadParameters("empty element text")
    parser = _Parser(
        tokens,
        _field_names(field),
        field.from_int,
        lambda a, b: a / b,
    )
    value = parser.expr()
    if parser.i != len(tokens):
        raise BadParameters(f"trailing tokens in element text: {tokens[parser.i:]!r}")
    return value


class _UniPoly:
    """Polynomial in one indeterminate over a base field, for minpoly texts."""

    def __init__(self, base, coeffs):
        self.base = base
        self.coeffs = unipoly.trim(list(coeffs))

    def __add__(self, other):
        return _UniPoly(self.base, unipoly.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return _UniPoly(self.base, unipoly.sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return _UniPoly(self.base, unipoly.neg(self.coeffs))

    def __mul__(self, other):
        return _UniPoly(self.base, unipoly.mul(self.coeffs, other.coeffs, self.base))

    def __pow__(self, n):
        if n < 0:
            raise BadParameters("negative powers not allowed in minimal polynomials")
        out = _UniPoly(self.base, [self.base.one()])
        for _ in range(n):
            out = out * self
        return out

    def divided_by(self, other):
        if unipoly.deg(other.coeffs) > 0:
            raise BadParameters("division by the generator in a minimal polynomial")
        if not other.coeffs:
            raise BadParameters("division by zero in a minimal polynomial")
        return _UniPoly(self.base, unipoly.scale(self.coeffs, other.coeffs[0].inv()))


def parse_extension_poly(base, gen_name, text):
    """Parse a monic minimal polynomial text; returns coefficients c_0..c_{d-1}."""
    names = {
        name: _UniPoly(base, [elem]) for name, elem in _field_names(base).items()
    }
    names[gen_name] = _UniPoly(base, [base.zero(), base.one()])
    tokens = _tokenize(text)
    parser = _Parser(
        tokens,
        names,
        lambda n: _UniPoly(base, [base.from_int(n)]),
        lambda a, b: a.divided_by(b),
    )
    value = parser.expr()
    if parser.i != len(tokens):
        raise BadParameters("trailing tokens in minimal polynomial text")
    coeffs = value.coeffs
    if not coeffs or not coeffs[-1].is_one():
        raise BadParameters("minimal polynomial must be monic")
    return coeffs[:-1]


def parse_prime_poly(p, text, varname):
    """Parse a univariate polynomial over F_p; returns integer coefficients."""
    from .fields import PrimeField

    base = PrimeField(p)
    coeffs = parse_extension_poly(base, varname, text)
    return [c.payload for c in coeffs] + [1]
