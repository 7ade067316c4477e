"""Exact arithmetic in Q and in single quadratic fields Q(sqrt(d)), Q(sqrt(-d)).

Values are immutable and always held in canonical form, so ``==`` on the
stored fields is equality of numbers.  Nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from math import isqrt
from numbers import Rational as _RationalABC
from typing import Union

from .errors import DeterminantError, IncompatibleRadicandError, PoleError

Rational = Fraction

__all__ = [
    "Rational",
    "QuadraticReal",
    "ComplexQuadratic",
    "UnimodularMatrix",
    "canonicalize",
    "squarefree_decompose",
    "sign",
    "floor",
    "mobius",
    "arith",
]


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, core)`` with ``n == s*s*core`` and ``core`` square-free."""
    if n < 0:
        raise ValueError("radicand must be non-negative")
    if n < 2:
        return 1, n
    s, core = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e & 1:
            core *= p
        p += 1 if p == 2 else 2
    return s, core * n


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("bool is not a number here")
    if isinstance(v, (int, _RationalABC)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot read {v!r} as an exact rational")


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


@total_ordering
class QuadraticReal:
    """The real number ``x + y*sqrt(d)`` with rational ``x``, ``y``.

    ``d`` is square-free; rationals are stored with ``y == 0`` and ``d == 0``.
    """

    __slots__ = ("_x", "_y", "_d")

    def __init__(self, x=0, y=0, d: int = 0) -> None:
        x, y = _frac(x), _frac(y)
        d = int(d)
        if d < 0:
            raise ValueError("QuadraticReal needs a non-negative radicand")
        s, core = squarefree_decompose(d)
        y *= s
        if core == 1:
            x, y, core = x + y, Fraction(0), 0
        if y == 0 or core == 0:
            y, core = Fraction(0), 0
        self._x, self._y, self._d = x, y, core

    @property
    def x(self) -> Fraction:
        return self._x

    @property
    def y(self) -> Fraction:
        return self._y

    @property
    def d(self) -> int:
        return self._d

    @classmethod
    def sqrt(cls, n: int) -> QuadraticReal:
        return cls(0, 1, n)

    def is_rational(self) -> bool:
        return self._y == 0

    def __repr__(self) -> str:
        if self._y == 0:
            return f"QuadraticReal({self._x})"
        return f"QuadraticReal({self._x}, {self._y}, {self._d})"

    def __str__(self) -> str:
        if self._y == 0:
            return str(self._x)
        irr = f"{self._y}*sqrt({self._d})" if self._y not in (1, -1) else f"sqrt({self._d})"
        if self._y == -1:
            irr = "-" + irr
        if self._x == 0:
            return irr
        return f"{self._x}{irr}" if irr.startswith("-") else f"{self._x}+{irr}"

    # -- coercion -----------------------------------------------------------
    @classmethod
    def _coerce(cls, v) -> QuadraticReal:
        if isinstance(v, QuadraticReal):
            return v
        if isinstance(v, ComplexQuadratic):
            if v.y != 0:
                raise TypeError("cannot mix a non-real complex value into a real field")
            return cls(v.x)
        if isinstance(v, (int, _RationalABC)) and not isinstance(v, bool):
            return cls(v)
        raise TypeError(f"unsupported operand {v!r}")

    def _field(self, other: QuadraticReal) -> int:
        if self._y == 0:
            return other._d
        if other._y == 0 or other._d == self._d:
            return self._d
        raise IncompatibleRadicandError(
            f"values in Q(sqrt({self._d})) and Q(sqrt({other._d})) do not share a quadratic field"
        )

    # -- field operations ---------------------------------------------------
    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticReal(self._x + o._x, self._y + o._y, self._field(o))

    __radd__ = __add__

    def __neg__(self) -> QuadraticReal:
        return QuadraticReal(-self._x, -self._y, self._d)

    def __pos__(self) -> QuadraticReal:
        return self

    def __abs__(self) -> QuadraticReal:
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadraticReal(self._x - o._x, self._y - o._y, self._field(o))

    def __rsub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return QuadraticReal(
            self._x * o._x + self._y * o._y * d,
            self._x * o._y + self._y * o._x,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticReal:
        return QuadraticReal(self._x, -self._y, self._d)

    def norm(self) -> Fraction:
        """Field norm ``x^2 - d*y^2``; zero only for zero."""
        return self._x * self._x - self._y * self._y * self._d

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        d = self._field(o)
        num = self * o.conjugate()
        return QuadraticReal(num._x / n, num._y / n, d)

    def __rtruediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> QuadraticReal:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QuadraticReal(1) / self ** (-k)
        out, base = QuadraticReal(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- order --------------------------------------------------------------
    def sign(self) -> int:
        sx, sy = _sgn(self._x), _sgn(self._y)
        if sy == 0 or sx == sy:
            return sx or sy
        if sx == 0:
            return sy
        # opposite signs: the larger square wins
        return sx if self._x * self._x > self._y * self._y * self._d else sy

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self._x == o._x and self._y == o._y and self._d == o._d

    def __hash__(self) -> int:
        if self._y == 0:
            return hash(self._x)
        return hash((self._x, self._y, self._d))

    def __lt__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __bool__(self) -> bool:
        return self._x != 0 or self._y != 0

    def __floor__(self) -> int:
        if self._y == 0:
            return self._x.__floor__()
        den = self._x.denominator * self._y.denominator
        a = self._x.numerator * self._y.denominator
        c = self._y.numerator * self._x.denominator
        s = isqrt(c * c * self._d)
        # sqrt(c^2 d) is irrational, so it sits strictly between s and s+1
        if c > 0:
            return (a + s) // den
        return (a - s - 1) // den


@dataclass(frozen=True, eq=False)
class ComplexQuadratic:
    """The complex number ``x + y*sqrt(d)*i`` in ``Q(sqrt(-d))``.

    Canonical form: ``d`` square-free and positive; ``d == 1`` whenever ``y == 0``.
    """

    x: Fraction = Fraction(0)
    y: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self) -> None:
        x, y, d = _frac(self.x), _frac(self.y), int(self.d)
        if d < 1:
            raise ValueError("ComplexQuadratic needs a positive radicand")
        s, core = squarefree_decompose(d)
        y *= s
        if y == 0:
            core = 1
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "d", core)

    @classmethod
    def i(cls) -> ComplexQuadratic:
        return cls(0, 1, 1)

    def __repr__(self) -> str:
        return f"ComplexQuadratic({self.x}, {self.y}, {self.d})"

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        unit = "i" if self.d == 1 else f"sqrt({self.d})*i"
        coef = "" if self.y == 1 else "-" if self.y == -1 else f"{self.y}*"
        im = coef + unit
        if self.x == 0:
            return im
        return f"{self.x}{im}" if im.startswith("-") else f"{self.x}+{im}"

    @classmethod
    def _coerce(cls, v) -> ComplexQuadratic:
        if isinstance(v, ComplexQuadratic):
            return v
        if isinstance(v, QuadraticReal):
            if v.y != 0:
                raise IncompatibleRadicandError(
                    "an irrational real quadratic does not lie in an imaginary quadratic field"
                )
            return cls(v.x)
        if isinstance(v, (int, _RationalABC)) and not isinstance(v, bool):
            return cls(v)
        raise TypeError(f"unsupported operand {v!r}")

    def _field(self, other: ComplexQuadratic) -> int:
        if self.y == 0:
            return other.d
        if other.y == 0 or other.d == self.d:
            return self.d
        raise IncompatibleRadicandError(
            f"values in Q(sqrt(-{self.d})) and Q(sqrt(-{other.d})) do not share a quadratic field"
        )

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexQuadratic(self.x + o.x, self.y + o.y, self._field(o))

    __radd__ = __add__

    def __neg__(self) -> ComplexQuadratic:
        return ComplexQuadratic(-self.x, -self.y, self.d)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return ComplexQuadratic(self.x - o.x, self.y - o.y, self._field(o))

    def __rsub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(o)
        return ComplexQuadratic(self.x * o.x - d * self.y * o.y, self.x * o.y + self.y * o.x, d)

    __rmul__ = __mul__

    def conjugate(self) -> ComplexQuadratic:
        return ComplexQuadratic(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        """``|z|^2``, always rational."""
        return self.x * self.x + self.d * self.y * self.y

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return ComplexQuadratic(num.x / n, num.y / n, num.d)

    def __rtruediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    @property
    def real(self) -> Fraction:
        return self.x

    @property
    def imag(self) -> QuadraticReal:
        return QuadraticReal(0, self.y, self.d)

    def imag_sign(self) -> int:
        return _sgn(self.y)

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except (TypeError, IncompatibleRadicandError):
            return NotImplemented if not isinstance(other, QuadraticReal) else False
        return self.x == o.x and self.y == o.y and self.d == o.d

    def __hash__(self) -> int:
        if self.y == 0:
            return hash(self.x)
        return hash(("C", self.x, self.y, self.d))


Number = Union[int, Fraction, QuadraticReal, ComplexQuadratic]


@dataclass(frozen=True)
class UnimodularMatrix:
    """Integer 2x2 matrix ``(a, b; c, d)`` with determinant +1 or -1."""

    a: int
    b: int
    c: int
    d: int
    det: int = field(init=False)

    def __post_init__(self) -> None:
        for name in "abcd":
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                if isinstance(v, Fraction) and v.denominator == 1:
                    object.__setattr__(self, name, int(v))
                else:
                    raise TypeError(f"matrix entry {name}={v!r} is not an integer")
        det = self.a * self.d - self.b * self.c
        if det not in (1, -1):
            raise DeterminantError(f"determinant {det} is not +1 or -1")
        object.__setattr__(self, "det", det)

    @classmethod
    def identity(cls) -> UnimodularMatrix:
        return cls(1, 0, 0, 1)

    @classmethod
    def S(cls) -> UnimodularMatrix:
        return cls(0, -1, 1, 0)

    @classmethod
    def T(cls, n: int = 1) -> UnimodularMatrix:
        return cls(1, n, 0, 1)

    def __matmul__(self, o: UnimodularMatrix) -> UnimodularMatrix:
        if not isinstance(o, UnimodularMatrix):
            return NotImplemented
        return UnimodularMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> UnimodularMatrix:
        e = self.det
        return UnimodularMatrix(e * self.d, -e * self.b, -e * self.c, e * self.a)

    def __neg__(self) -> UnimodularMatrix:
        return UnimodularMatrix(-self.a, -self.b, -self.c, -self.d)

    def swapped(self) -> UnimodularMatrix:
        """Conjugate by ``(0, 1; 1, 0)``: ``(a, b; c, d) -> (d, c; b, a)``."""
        return UnimodularMatrix(self.d, self.c, self.b, self.a)

    def is_special(self) -> bool:
        return self.det == 1

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))


def canonicalize(x, y, d: int) -> QuadraticReal:
    return QuadraticReal(x, y, d)


def sign(u) -> int:
    if isinstance(u, QuadraticReal):
        return u.sign()
    return _sgn(_frac(u))


def floor(u) -> int:
    if isinstance(u, QuadraticReal):
        return u.__floor__()
    return _frac(u).__floor__()


_OPS = {
    "add": lambda u, v: u + v,
    "sub": lambda u, v: u - v,
    "mul": lambda u, v: u * v,
    "div": lambda u, v: u / v,
}


def arith(op: str, u, v):
    """Apply one of ``add``, ``sub``, ``mul``, ``div`` to two field elements."""
    try:
        f = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return f(u, v)


def mobius(m: UnimodularMatrix, z):
    """Image of ``z`` under ``z -> (a z + b) / (c z + d)``."""
    if isinstance(z, int) and not isinstance(z, bool):
        z = Fraction(z)
    den = m.c * z + m.d
    if not den:
        raise PoleError("point is sent to infinity")
    return (m.a * z + m.b) / den
