"""Regular continued fractions of rationals and quadratic irrationals.

Expansion of quadratic surds runs on the integer state ``(P, Q)`` of the
remainder ``(P + sqrt(D)) / Q``; periodicity is detected by the first repeat
of that state, which makes the stored period minimal.  The module also
decides when two numbers lie in one ``GL2(Z)`` or ``SL2(Z)`` orbit, and
returns an explicit matrix witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, count, islice, repeat
from math import gcd, isqrt
from typing import Iterator, NamedTuple, Optional

from .errors import MalformedContinuedFractionError, PeriodNotClosedError, TailMismatchError
from .exact import QuadraticReal, UnimodularMatrix, mobius

MIN_MAX_TERMS = 10_000


@dataclass(frozen=True)
class ContinuedFraction:
    """``[a0; a1, ...]`` stored as a preperiod and a (possibly empty) period.

    ``preperiod[0]`` is always ``a0``; the period never absorbs it.  An empty
    period means the expansion is finite.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        pre, per = tuple(self.preperiod), tuple(self.period)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)
        if not pre:
            raise MalformedContinuedFractionError("a continued fraction needs a0")
        if any(isinstance(a, bool) or not isinstance(a, int) for a in pre + per):
            raise MalformedContinuedFractionError("partial quotients must be integers")
        if any(a < 1 for a in pre[1:] + per):
            raise MalformedContinuedFractionError("partial quotients after a0 must be >= 1")

    @property
    def a0(self) -> int:
        return self.preperiod[0]

    def is_finite(self) -> bool:
        return not self.period

    def terms(self) -> Iterator[int]:
        """All partial quotients, unrolling the period forever."""
        if not self.period:
            return iter(self.preperiod)
        return chain(self.preperiod, chain.from_iterable(repeat(self.period)))

    def quotient(self, k: int) -> int:
        n = len(self.preperiod)
        if k < n:
            return self.preperiod[k]
        if not self.period:
            raise IndexError(f"finite expansion has only {n} terms")
        return self.period[(k - n) % len(self.period)]

    def canonical(self) -> ContinuedFraction:
        """Equivalent expansion with minimal period and preperiod (finite: last term >= 2)."""
        pre, per = list(self.preperiod), list(self.period)
        if not per:
            while len(pre) > 1 and pre[-1] == 1:
                pre.pop()
                pre[-1] += 1
            return ContinuedFraction(tuple(pre))
        per = list(_minimal_period(tuple(per)))
        while len(pre) > 1 and pre[-1] == per[-1]:
            pre.pop()
            per = per[-1:] + per[:-1]
        return ContinuedFraction(tuple(pre), tuple(per))

    def period_class(self) -> tuple[int, ...]:
        """Lexicographically least rotation of the period; the tail-equivalence key."""
        per = self.period
        if not per:
            return ()
        return min(per[k:] + per[:k] for k in range(len(per)))

    def __str__(self) -> str:
        head = str(self.a0)
        rest = list(self.preperiod[1:])
        body = ", ".join(map(str, rest))
        if self.period:
            per = "(" + ", ".join(map(str, self.period)) + ")"
            body = f"{body}, {per}" if body else per
        return f"[{head}; {body}]" if body else f"[{head}]"


def _minimal_period(per: tuple[int, ...]) -> tuple[int, ...]:
    n = len(per)
    for k in range(1, n + 1):
        if n % k == 0 and per == per[:k] * (n // k):
            return per[:k]
    return per


@dataclass(frozen=True)
class SurdState:
    """Remainder ``(P + sqrt(D)) / Q`` with ``Q | D - P^2``."""

    P: int
    Q: int
    D: int

    def __post_init__(self) -> None:
        if self.Q == 0 or (self.D - self.P * self.P) % self.Q:
            raise ValueError(f"invalid surd state {self}")
        r = isqrt(self.D)
        if self.D <= 0 or r * r == self.D:
            raise ValueError("D must be a positive non-square")

    @classmethod
    def from_real(cls, u: QuadraticReal) -> SurdState:
        if u.y == 0:
            raise ValueError("rational numbers have no surd state")
        den = u.x.denominator * u.y.denominator
        p = u.x.numerator * u.y.denominator
        c = u.y.numerator * u.x.denominator
        big_d = c * c * u.d
        if c < 0:
            p, den = -p, -den
        # scale so that Q divides D - P^2
        aq = abs(den)
        return cls(p * aq, den * aq, big_d * den * den)

    def value(self) -> QuadraticReal:
        return (self.P + QuadraticReal.sqrt(self.D)) / self.Q

    def quotient(self) -> int:
        s = isqrt(self.D)
        if self.Q > 0:
            return (self.P + s) // self.Q
        return (-self.P - s - 1) // (-self.Q)

    def step(self, a: int) -> SurdState:
        p = a * self.Q - self.P
        return SurdState(p, (self.D - p * p) // self.Q, self.D)


class Convergent(NamedTuple):
    p: int
    q: int

    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


def default_max_terms(u: QuadraticReal) -> int:
    if u.y == 0:
        return MIN_MAX_TERMS
    st = SurdState.from_real(u)
    # period of a reduced surd is O(sqrt(D) log D); the transient is logarithmic in |P|, |Q|
    bound = 2 * isqrt(st.D) + 2 + 2 * (abs(st.P).bit_length() + abs(st.Q).bit_length())
    return max(MIN_MAX_TERMS, 10 * bound)


def _expand_rational(x: Fraction) -> ContinuedFraction:
    p, q = x.numerator, x.denominator
    out = []
    while True:
        a, r = divmod(p, q)
        out.append(a)
        if r == 0:
            return ContinuedFraction(tuple(out))
        p, q = q, r


def cf_expand(u, max_terms: Optional[int] = None) -> ContinuedFraction:
    """Regular continued fraction of a rational or quadratic irrational."""
    u = QuadraticReal._coerce(u)
    if u.y == 0:
        return _expand_rational(u.x)
    if max_terms is None:
        max_terms = default_max_terms(u)
    if max_terms < 1:
        raise ValueError("max_terms must be positive")
    st = SurdState.from_real(u)
    quotients: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    for k in range(max_terms):
        if k >= 1:
            key = (st.P, st.Q)
            first = seen.get(key)
            if first is not None:
                return ContinuedFraction(tuple(quotients[:first]), tuple(quotients[first:]))
            seen[key] = k
        a = st.quotient()
        quotients.append(a)
        st = st.step(a)
    raise PeriodNotClosedError(f"period did not close within {max_terms} terms")


def _fold(quotients, tail):
    """Evaluate ``[q0; q1, ..., qn-1 + 1/tail]`` from the inside out."""
    v = tail
    for a in reversed(quotients):
        v = a + 1 / v
    return v


def cf_value(cf: ContinuedFraction) -> QuadraticReal:
    if cf.is_finite():
        v = Fraction(cf.preperiod[-1])
        for a in reversed(cf.preperiod[:-1]):
            if v == 0:
                raise MalformedContinuedFractionError("zero inner quotient")
            v = a + 1 / v
        return QuadraticReal(v)
    # t = [period; t] solves t = (p t + p') / (q t + q'), i.e. q t^2 + (q' - p) t - p' = 0
    m = matrix_of(cf.period)
    p, pp, q, qp = m.a, m.b, m.c, m.d
    # divide out the content first: the raw discriminant grows exponentially with
    # the period length, while the primitive one stays small enough to factor
    g = gcd(q, qp - p, pp)
    q, b, c = q // g, (qp - p) // g, -pp // g
    t = (QuadraticReal(-b) + QuadraticReal.sqrt(b * b - 4 * q * c)) / (2 * q)
    return _fold(cf.preperiod, t)


def matrix_of(quotients) -> UnimodularMatrix:
    """Product of ``(a, 1; 1, 0)`` over the quotients: ``(p_n, p_{n-1}; q_n, q_{n-1})``."""
    p, pp, q, qp = 1, 0, 0, 1
    for a in quotients:
        p, pp = a * p + pp, p
        q, qp = a * q + qp, q
    return UnimodularMatrix(p, pp, q, qp)


def convergents(cf: ContinuedFraction, n: int) -> list[Convergent]:
    """``p_0/q_0`` through ``p_n/q_n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if cf.is_finite() and n >= len(cf.preperiod):
        raise ValueError(f"finite expansion has only {len(cf.preperiod)} convergents")
    out = []
    p, pp, q, qp = 1, 0, 0, 1
    for a in islice(cf.terms(), n + 1):
        p, pp = a * p + pp, p
        q, qp = a * q + qp, q
        out.append(Convergent(p, q))
    return out


def tail_equivalent(c1: ContinuedFraction, c2: ContinuedFraction) -> Optional[tuple[int, int]]:
    """Smallest ``(m, n)`` (by ``m + n``, then ``m``) at which the tails agree.

    Finite expansions are all equivalent; their tails are taken to be the
    empty tail after the last quotient, so the indices are the lengths.
    Returns ``None`` when the numbers are not equivalent.
    """
    if c1.is_finite() != c2.is_finite():
        return None
    if c1.is_finite():
        return len(c1.preperiod), len(c2.preperiod)
    if c1.period_class() != c2.period_class():
        return None
    ell = len(c1.period)
    n1, n2 = len(c1.preperiod), len(c2.preperiod)
    best = None
    for m in range(n1 + ell):
        for n in range(n2 + ell):
            if best is not None and (m + n, m) >= (sum(best), best[0]):
                break
            window = max(n1 - m, n2 - n, 0) + ell
            if all(c1.quotient(m + k) == c2.quotient(n + k) for k in range(window)):
                best = (m, n)
                break
    return best


def _tail(u: QuadraticReal, cf: ContinuedFraction, m: int):
    a = matrix_of(islice(cf.terms(), m))
    return a, mobius(a.inverse(), u)


def recover_matrix(u, v, m: int, n: int) -> UnimodularMatrix:
    """Matrix ``M`` with ``mobius(M, u) == v`` built from tail positions ``m``, ``n``.

    ``det M == (-1)**(m + n)``.  Raises TailMismatchError if the tails of
    ``u`` from ``m`` and of ``v`` from ``n`` differ.
    """
    u, v = QuadraticReal._coerce(u), QuadraticReal._coerce(v)
    cu, cv = cf_expand(u), cf_expand(v)
    if u.is_rational() != v.is_rational():
        raise TailMismatchError("a rational and an irrational have no common tail")
    if u.is_rational():
        if m != len(cu.preperiod) or n != len(cv.preperiod):
            raise TailMismatchError("rational tails only coincide at the end of both expansions")
        a, b = matrix_of(cu.preperiod), matrix_of(cv.preperiod)
    else:
        a, tu = _tail(u, cu, m)
        b, tv = _tail(v, cv, n)
        if tu != tv:
            raise TailMismatchError(f"tail of u at {m} is {tu}, tail of v at {n} is {tv}")
    out = b @ a.inverse()
    if mobius(out, u) != v:
        raise TailMismatchError("recovered matrix does not map u to v")
    return out


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of an orbit test.

    ``gl_equivalent`` means a determinant -1 witness exists and, the common
    period being even, no determinant +1 witness does.
    """

    kind: str
    witness: Optional[UnimodularMatrix] = None

    NOT_EQUIVALENT = "not_equivalent"
    GL_EQUIVALENT = "gl_equivalent"
    SL_EQUIVALENT = "sl_equivalent"

    @property
    def det(self) -> Optional[int]:
        return None if self.witness is None else self.witness.det

    @property
    def equivalent(self) -> bool:
        return self.kind != self.NOT_EQUIVALENT


def _positive_scale(m: UnimodularMatrix, u) -> UnimodularMatrix:
    # choose the sign of the witness so that c*u + d > 0
    return -m if QuadraticReal._coerce(m.c * u + m.d).sign() < 0 else m


def equivalence_decide(u, v) -> EquivalenceVerdict:
    u, v = QuadraticReal._coerce(u), QuadraticReal._coerce(v)
    cu, cv = cf_expand(u), cf_expand(v)
    idx = tail_equivalent(cu, cv)
    if idx is None:
        return EquivalenceVerdict(EquivalenceVerdict.NOT_EQUIVALENT)
    m, n = idx
    w = recover_matrix(u, v, m, n)
    if w.det == -1:
        if u.is_rational():
            # v = B(inf) is also B diag(-1, 1)(inf)
            a, b = matrix_of(cu.preperiod), matrix_of(cv.preperiod)
            w = b @ UnimodularMatrix(-1, 0, 0, 1) @ a.inverse()
        elif len(cu.period) % 2:
            ell = len(cu.period)
            # move both indices into the periodic parts, then shift one by a period
            k = max(len(cu.preperiod) - m, len(cv.preperiod) - n, 0)
            m, n = m + k, n + k
            w = min(
                (recover_matrix(u, v, m + ell, n), recover_matrix(u, v, m, n + ell)),
                key=lambda x: max(map(abs, x)),
            )
    w = _positive_scale(w, u)
    if w.det == 1:
        return EquivalenceVerdict(EquivalenceVerdict.SL_EQUIVALENT, w)
    return EquivalenceVerdict(EquivalenceVerdict.GL_EQUIVALENT, w)
