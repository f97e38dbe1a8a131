"""Recursive-descent parser for polynomial and ``exp`` expressions.

Grammar (whitespace is ignored)::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' exponent)?
    exponent := int | '(' expr ')'      (must denote a nonnegative integer)
    base     := number | 'i' | var | '(' expr ')' | 'exp' '(' expr ')'
    var      := 'z' positive-int
    number   := int ('/' positive-int)?

Implicit multiplication is rejected.  Polynomials and expressions share the
grammar; :func:`parse_poly` additionally rejects ``exp``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import NonPolynomial, ParseError, UnknownVariable
from .expr import (
    MAX_DEPTH,
    Const,
    Exp,
    IntPow,
    Var,
    depth,
    make_product,
    make_sum,
    to_multipoly,
)
from .multipoly import DEGREE_CAP, MultiPoly
from .scalar import ONE, GaussianRational, I

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<var>z\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, "a token")
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "name" and value not in ("i", "exp"):
            raise ParseError(f"unknown identifier {value!r}", start, "'i', 'exp' or a variable zN")
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.tokens = _tokenize(text)
        self.k = 0

    @property
    def tok(self):
        return self.tokens[self.k]

    def accept(self, value):
        kind, v, _ = self.tok
        if kind in ("op", "name") and v == value:
            self.k += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            _, v, pos = self.tok
            raise ParseError(f"unexpected {v or 'end of input'!r}", pos, repr(value))

    def parse(self):
        e = self.expr()
        kind, v, pos = self.tok
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos, "an operator or end of input")
        return e

    def expr(self):
        negate = False
        if self.accept("-"):
            negate = True
        else:
            self.accept("+")
        first = self.term()
        terms = [_negate(first) if negate else first]
        while True:
            if self.accept("+"):
                terms.append(self.term())
            elif self.accept("-"):
                terms.append(_negate(self.term()))
            else:
                break
        return make_sum(terms)

    def term(self):
        factors = [self.factor()]
        while self.accept("*"):
            factors.append(self.factor())
        return make_product(factors)

    def factor(self):
        base = self.base()
        if self.accept("^"):
            k = self.exponent()
            if k == 0:
                return Const(ONE)
            return base if k == 1 else IntPow(base, k)
        return base

    def exponent(self):
        kind, v, pos = self.tok
        if kind == "int":
            self.k += 1
            k = int(v)
        elif self.accept("-"):
            raise NonPolynomial("negative exponent", pos, "a nonnegative integer exponent")
        elif self.accept("("):
            inner = self.expr()
            self.expect(")")
            try:
                c = to_multipoly(inner, self.nvars)
            except NonPolynomial:
                raise NonPolynomial("non-constant exponent", pos, "an integer") from None
            if not c.is_constant() or not c.constant_term().is_integer():
                raise NonPolynomial("exponent is not an integer", pos, "an integer")
            k = int(c.constant_term().re)
            if k < 0:
                raise NonPolynomial("negative exponent", pos, "a nonnegative integer exponent")
        else:
            raise ParseError(f"unexpected {v or 'end of input'!r}", pos, "an exponent")
        if k > DEGREE_CAP:
            raise ParseError(f"exponent {k} exceeds cap {DEGREE_CAP}", pos)
        return k

    def base(self):
        kind, v, pos = self.tok
        if kind == "int":
            self.k += 1
            num = int(v)
            if self.accept("/"):
                kind2, v2, pos2 = self.tok
                if kind2 != "int" or int(v2) == 0:
                    raise ParseError("bad denominator", pos2, "a positive integer")
                self.k += 1
                return Const(GaussianRational(num) / int(v2))
            return Const(GaussianRational(num))
        if kind == "var":
            self.k += 1
            idx = int(v[1:])
            if idx < 1 or idx > self.nvars:
                raise UnknownVariable(
                    f"variable {v} not in z1..z{self.nvars}", pos, f"z1..z{self.nvars}"
                )
            return Var(idx - 1)
        if kind == "name" and v == "i":
            self.k += 1
            return Const(I)
        if kind == "name" and v == "exp":
            self.k += 1
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Exp(inner)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos, "a number, i, zN, exp or '('")


def _negate(e):
    if isinstance(e, Const) and isinstance(e.value, GaussianRational):
        return Const(-e.value)
    return make_product([Const(GaussianRational(-1)), e])


def parse_expr(text: str, nvars: int):
    """Parse an expression that may contain ``exp``."""
    e = _Parser(text, nvars).parse()
    if depth(e) > MAX_DEPTH:
        raise ParseError(f"expression deeper than {MAX_DEPTH}")
    return e


def parse_poly(text: str, nvars: int) -> MultiPoly:
    """Parse a polynomial; ``exp`` and negative exponents raise
    :class:`NonPolynomial`."""
    return to_multipoly(parse_expr(text, nvars), nvars)


def parse_scalar(text: str) -> GaussianRational:
    p = parse_poly(str(text), 0)
    return p.constant_term()


def strip_comments(text: str) -> str:
    """Drop ``#`` line comments and join the remaining lines."""
    lines = [line.split("#", 1)[0] for line in text.splitlines()]
    return " ".join(line.strip() for line in lines if line.strip())


def read_text_arg(arg: str) -> str:
    """``@path`` reads a UTF-8 input file, anything else is literal text."""
    if arg.startswith("@"):
        return strip_comments(Path(arg[1:]).read_text(encoding="utf-8"))
    return arg


def parse_matrix(text: str):
    """Square matrix from a JSON array of arrays of scalar strings."""
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"matrix is not valid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a nonempty array of arrays")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ParseError(f"matrix must be square ({n}x{n})")
    return [[parse_scalar(str(x)) for x in row] for row in rows]
