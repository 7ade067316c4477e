import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from esfunctor.codec import parse_number
from esfunctor.exact import ComplexQuadratic, QuadraticReal, UnimodularMatrix

getcontext().prec = 120

# exact arithmetic has input-dependent cost; wall-clock deadlines only add flakiness
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

S = UnimodularMatrix.S()
T = UnimodularMatrix.T()
T_INV = UnimodularMatrix.T(-1)
UP = UnimodularMatrix(1, 1, 0, 1)
LO = UnimodularMatrix(1, 0, 1, 1)


def num(text):
    return parse_number(text)


def decimal_value(u: QuadraticReal) -> Decimal:
    """High-precision numeric value; independent of the exact code paths."""
    x = Decimal(u.x.numerator) / Decimal(u.x.denominator)
    if u.y == 0:
        return x
    y = Decimal(u.y.numerator) / Decimal(u.y.denominator)
    return x + y * Decimal(u.d).sqrt()


def decimal_cf(u: QuadraticReal, n: int) -> list[int]:
    """First ``n`` partial quotients by repeated floor/reciprocal in Decimal."""
    v = decimal_value(u)
    out = []
    for _ in range(n):
        a = int(v.to_integral_value(rounding="ROUND_FLOOR"))
        out.append(a)
        frac = v - a
        if frac == 0:
            break
        v = 1 / frac
    return out


def random_word(rng: random.Random, gens, max_len: int = 20) -> UnimodularMatrix:
    m = UnimodularMatrix.identity()
    for _ in range(rng.randint(0, max_len)):
        m = m @ rng.choice(gens)
    return m


SL_GENS = (S, T, S.inverse(), T_INV)
GL_GENS = SL_GENS + (UnimodularMatrix(0, 1, 1, 0),)
POSITIVE_GENS = (UP, LO)


small_ints = st.integers(min_value=-30, max_value=30)
fractions_ = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=12))
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 11, 13, 19, 21, 94])


@st.composite
def reals_in_field(draw, d=None):
    d = draw(radicands) if d is None else d
    return QuadraticReal(draw(fractions_), draw(fractions_), d)


@st.composite
def field_triples(draw):
    d = draw(radicands)
    return tuple(draw(reals_in_field(d)) for _ in range(3))


@st.composite
def complex_triples(draw):
    d = draw(st.sampled_from([1, 2, 3, 7, 15]))
    return tuple(ComplexQuadratic(draw(fractions_), draw(fractions_), d) for _ in range(3))


@st.composite
def upper_points(draw):
    d = draw(st.sampled_from([1, 2, 3, 5]))
    y = draw(st.builds(Fraction, st.integers(1, 40), st.integers(1, 12)))
    return ComplexQuadratic(draw(fractions_), y, d)


@st.composite
def positive_reals(draw, d=None):
    d = draw(radicands) if d is None else d
    x = draw(st.builds(Fraction, st.integers(0, 40), st.integers(1, 9)))
    y = draw(st.builds(Fraction, st.integers(-6, 6), st.integers(1, 9)))
    u = QuadraticReal(x, y, d)
    if u.sign() <= 0:
        u = QuadraticReal(-u.x, -u.y, d) if u else QuadraticReal(1, 1, d)
    return u


@st.composite
def sl2z(draw, max_len=12):
    word = draw(st.lists(st.sampled_from(SL_GENS), max_size=max_len))
    m = UnimodularMatrix.identity()
    for g in word:
        m = m @ g
    return m


@st.composite
def positive_monoid(draw, max_len=12):
    word = draw(st.lists(st.sampled_from(POSITIVE_GENS), max_size=max_len))
    m = UnimodularMatrix.identity()
    for g in word:
        m = m @ g
    return m


@pytest.fixture
def rng():
    return random.Random(20261017)
