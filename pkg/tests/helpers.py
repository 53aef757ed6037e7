"""Shared hypothesis strategies and small reference computations."""
from fractions import Fraction
from math import gcd

from hypothesis import assume
from hypothesis import strategies as st

from mukaiwalls.lattice import MukaiVector, SurfaceLattice, mukai_pairing

small = st.integers(-6, 6)
ns = st.integers(1, 5)


@st.composite
def rationals(draw, lo=-5, hi=5, max_den=10):
    den = draw(st.integers(1, max_den))
    num = draw(st.integers(lo * den, hi * den))
    return Fraction(num, den)


@st.composite
def vectors(draw, lo=-6, hi=6):
    return MukaiVector.of(draw(st.integers(lo, hi)), draw(st.integers(lo, hi)), draw(st.integers(lo, hi)))


@st.composite
def positive_primitive(draw, max_n=5, lo=-6, hi=6, min_square=1):
    """(v, L) with v primitive of square at least min_square."""
    n = draw(st.integers(1, max_n))
    L = SurfaceLattice.rank_one(n)
    v = draw(vectors(lo, hi))
    assume(v.content() == 1 and mukai_pairing(v, v, L) >= min_square)
    return v, L


def brute_pell(D, sign, limit=10 ** 6):
    for y in range(1, limit):
        x2 = D * y * y + sign
        if x2 > 0:
            x = int(round(x2 ** 0.5))
            for c in (x - 1, x, x + 1):
                if c > 0 and c * c == x2:
                    return c, y
    return None


def content(*xs):
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
