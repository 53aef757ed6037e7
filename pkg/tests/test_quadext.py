from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from helpers import rationals
from mukaiwalls.quadext import QuadExt, rational_sqrt, squarefree_split

radicands = st.sampled_from([0, 1, 2, 3, 5, 6, 7, 8, 12, 13, 20])


def as_sympy(q: QuadExt):
    return sympy.Rational(q.rat.numerator, q.rat.denominator) + \
        sympy.Rational(q.irr.numerator, q.irr.denominator) * sympy.sqrt(q.radicand)


quads = st.builds(QuadExt, rationals(), rationals(), radicands)


def test_normalization():
    q = QuadExt(1, 3, 12)  # 1 + 3*2*sqrt(3)
    assert (q.rat, q.irr, q.radicand) == (1, 6, 3)
    assert QuadExt(1, 2, 4) == QuadExt(5)
    assert QuadExt(1, 2, 1).radicand == 0
    assert QuadExt(2, 0, 7).radicand == 0
    assert squarefree_split(72) == (6, 2)


def test_sqrt_and_str():
    s = QuadExt.sqrt(Fraction(5, 4))
    assert s * s == QuadExt(Fraction(5, 4))
    x = QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
    assert str(x) == "1/2 + 1/2*sqrt(5)"
    assert QuadExt.parse(str(x)) == x
    assert QuadExt.parse(str(-x)) == -x
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2) and rational_sqrt(2) is None


@given(quads, quads)
def test_order_matches_sympy(x, y):
    expected = sympy.sign(sympy.nsimplify(as_sympy(x) - as_sympy(y)))
    assert x.compare(y) == int(expected)


@given(rationals(), rationals(), rationals(), rationals(), st.sampled_from([2, 3, 5, 13]))
def test_field_operations(a, b, c, d, m):
    x, y = QuadExt(a, b, m), QuadExt(c, d, m)
    assert sympy.simplify(as_sympy(x * y) - as_sympy(x) * as_sympy(y)) == 0
    assert sympy.simplify(as_sympy(x + y) - as_sympy(x) - as_sympy(y)) == 0
    if y != 0:
        assert (x / y) * y == x
    assert x.norm() == (x * x.conjugate()).rat
