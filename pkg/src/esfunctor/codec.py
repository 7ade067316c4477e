"""Wire encodings for exact numbers and matrices.

Rationals travel as ``"p/q"`` (or ``"n"``), real quadratics as
``{"x": .., "y": .., "d": n}`` and imaginary quadratics as
``{"x": .., "y": .., "im_radicand": n}``.  Decoders additionally accept a
small expression syntax such as ``"(1+sqrt(5))/2"`` or ``"1/2+sqrt(3)/2*i"``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from .exact import ComplexQuadratic, QuadraticReal, UnimodularMatrix


def encode_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def decode_rational(v: Any) -> Fraction:
    if isinstance(v, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational literal: {v!r}") from None
    raise ValueError(f"not a rational literal: {v!r}")


def encode_real(u: QuadraticReal) -> dict:
    return {"x": encode_rational(u.x), "y": encode_rational(u.y), "d": u.d}


def encode_complex(z: ComplexQuadratic) -> dict:
    return {"x": encode_rational(z.x), "y": encode_rational(z.y), "im_radicand": z.d}


def encode_matrix(m: UnimodularMatrix) -> dict:
    return {"a": m.a, "b": m.b, "c": m.c, "d": m.d}


def decode_matrix(v: Any) -> UnimodularMatrix:
    if isinstance(v, dict):
        try:
            entries = [v[k] for k in "abcd"]
        except KeyError as e:
            raise ValueError(f"matrix is missing entry {e.args[0]!r}") from None
    elif isinstance(v, list) and len(v) == 2 and all(isinstance(r, list) and len(r) == 2 for r in v):
        entries = [v[0][0], v[0][1], v[1][0], v[1][1]]
    else:
        raise ValueError(f"not a matrix: {v!r}")
    if any(isinstance(e, bool) or not isinstance(e, int) for e in entries):
        raise ValueError("matrix entries must be integers")
    return UnimodularMatrix(*entries)


def decode_real(v: Any) -> QuadraticReal:
    if isinstance(v, dict):
        if "im_radicand" in v:
            raise ValueError("expected a real number, got an imaginary quadratic")
        d = v.get("d", 0)
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise ValueError(f"radicand must be a non-negative integer, got {d!r}")
        return QuadraticReal(decode_rational(v.get("x", "0")), decode_rational(v.get("y", "0")), d)
    if isinstance(v, (int, str)) and not isinstance(v, bool):
        val = parse_number(str(v))
        if isinstance(val, ComplexQuadratic):
            if val.y != 0:
                raise ValueError(f"expected a real number: {v!r}")
            return QuadraticReal(val.x)
        return val
    raise ValueError(f"not a real quadratic number: {v!r}")


def decode_complex(v: Any) -> ComplexQuadratic:
    if isinstance(v, dict):
        if "d" in v and "im_radicand" not in v:
            raise ValueError("expected an imaginary quadratic, got a real quadratic")
        d = v.get("im_radicand", 1)
        if isinstance(d, bool) or not isinstance(d, int) or d < 1:
            raise ValueError(f"im_radicand must be a positive integer, got {d!r}")
        return ComplexQuadratic(decode_rational(v.get("x", "0")), decode_rational(v.get("y", "0")), d)
    if isinstance(v, (int, str)) and not isinstance(v, bool):
        val = parse_number(str(v))
        if isinstance(val, QuadraticReal):
            return ComplexQuadratic._coerce(val)
        return val
    raise ValueError(f"not an imaginary quadratic number: {v!r}")


# -- expression syntax -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(i)|([-+*/()]))")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse number {text!r} at position {pos}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := unary (('*'|'/')? unary)*      juxtaposition multiplies
    # unary  := '-' unary | atom
    # atom   := INT | 'i' | 'sqrt' '(' ['-'] INT ')' | '(' expr ')'

    def __init__(self, tokens: list[str]) -> None:
        self.toks = tokens
        self.k = 0

    def peek(self):
        return self.toks[self.k] if self.k < len(self.toks) else None

    def take(self, expect=None):
        t = self.peek()
        if t is None or (expect is not None and t != expect):
            raise ValueError(f"expected {expect or 'a token'}, got {t!r}")
        self.k += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"unexpected trailing token {self.peek()!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            w = self.term()
            v = _combine(v, w, op)
        return v

    def term(self):
        v = self.unary()
        while True:
            t = self.peek()
            if t in ("*", "/"):
                self.take()
                v = _combine(v, self.unary(), t)
            elif t is not None and (t.isdigit() or t in ("i", "sqrt", "(")):
                v = _combine(v, self.unary(), "*")
            else:
                return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return _combine(QuadraticReal(0), self.unary(), "-")
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self):
        t = self.take()
        if t.isdigit():
            return QuadraticReal(int(t))
        if t == "i":
            return ComplexQuadratic.i()
        if t == "sqrt":
            self.take("(")
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            n = self.take()
            if not n.isdigit():
                raise ValueError("sqrt() takes an integer literal")
            self.take(")")
            return ComplexQuadratic(0, 1, int(n)) if neg and int(n) else QuadraticReal(0, 1, int(n))
        if t == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ValueError(f"unexpected token {t!r}")


def _imaginary_surd(r: QuadraticReal, z: ComplexQuadratic):
    # (y sqrt(d)) * (b i) = y b sqrt(-d), the only mixed product inside one field
    if r.x == 0 and z.x == 0 and z.d == 1:
        return ComplexQuadratic(0, r.y * z.y, r.d)
    return None


def _combine(u, v, op):
    if op in ("*", "/"):
        if isinstance(u, QuadraticReal) and isinstance(v, ComplexQuadratic) and u.y and v.y:
            w = _imaginary_surd(u, v if op == "*" else -1 / v)
            if w is not None:
                return w
        if isinstance(u, ComplexQuadratic) and isinstance(v, QuadraticReal) and u.y and v.y and op == "*":
            w = _imaginary_surd(v, u)
            if w is not None:
                return w
    if isinstance(u, ComplexQuadratic) or isinstance(v, ComplexQuadratic):
        u, v = ComplexQuadratic._coerce(u), ComplexQuadratic._coerce(v)
    if op == "+":
        return u + v
    if op == "-":
        return u - v
    if op == "*":
        return u * v
    return u / v


def parse_number(text: str):
    """Parse an exact expression into a ``QuadraticReal`` or ``ComplexQuadratic``."""
    return _Parser(_tokenize(text)).parse()
