from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from helpers import ns, rationals, vectors
from mukaiwalls.lattice import (MukaiVector, RationalMukaiVector, SurfaceLattice,
                                mukai_gram_rank_one, mukai_pairing, twist_by_exp,
                                vector_predicates)

L1 = SurfaceLattice.rank_one(1)


def test_pairing_examples():
    v = MukaiVector.of(2, 1, -2)
    assert mukai_pairing(v, v, L1) == 10
    assert mukai_pairing(v, MukaiVector.of(1, 0, 0), L1) == 2
    assert mukai_pairing(v, MukaiVector.of(0, 0, 0), L1) == 0


def test_predicates_examples():
    p = vector_predicates(MukaiVector.of(1, 0, -3), L1)
    assert (p.square, p.isotropic, p.primitive, p.positive) == (6, False, True, True)
    p = vector_predicates(MukaiVector.of(1, 2, 4), L1)
    assert (p.square, p.isotropic, p.primitive, p.positive) == (0, True, True, True)
    assert vector_predicates(MukaiVector.of(0, 0, 1), L1).positive
    z = vector_predicates(MukaiVector.of(0, 0, 0), L1)
    assert (z.square, z.isotropic, z.primitive, z.positive) == (0, False, False, False)


def test_twist_examples():
    assert twist_by_exp(MukaiVector.of(1, 0, -3), 0, L1) == MukaiVector.of(1, 0, -3)
    assert twist_by_exp(MukaiVector.of(1, 0, 0), 2, L1) == MukaiVector.of(1, 2, 4)


def test_lattice_validation():
    with pytest.raises(ValueError):
        SurfaceLattice(((1,),), (1,))  # odd diagonal
    with pytest.raises(ValueError):
        SurfaceLattice(((2, 1), (0, 2)), (1, 0))  # not symmetric
    with pytest.raises(ValueError):
        SurfaceLattice(((-2,),), (1,))  # wrong signature
    with pytest.raises(ValueError):
        SurfaceLattice(((2, 0), (0, 2)), (1, 0))  # signature (2, 0)
    L = SurfaceLattice(((0, 1), (1, 0)), (1, 1))
    assert L.rank == 2
    with pytest.raises(ValueError):
        L.n


def test_mukai_gram_signature():
    for n in range(1, 6):
        eig = sympy.Matrix(mukai_gram_rank_one(n)).eigenvals()
        pos = sum(m for e, m in eig.items() if e > 0)
        neg = sum(m for e, m in eig.items() if e < 0)
        assert (pos, neg) == (2, 1)


def test_dimension_mismatch():
    L = SurfaceLattice(((0, 1), (1, 0)), (1, 1))
    with pytest.raises(ValueError):
        mukai_pairing(MukaiVector.of(1, 0, 0), MukaiVector(1, (0, 0), 0), L)


@given(vectors(), vectors(), ns)
def test_pairing_symmetric(u, v, n):
    L = SurfaceLattice.rank_one(n)
    assert mukai_pairing(u, v, L) == mukai_pairing(v, u, L)


@given(vectors(), vectors(), st.integers(-5, 5), ns)
def test_twist_is_invertible_isometry(u, v, k, n):
    L = SurfaceLattice.rank_one(n)
    tu, tv = twist_by_exp(u, k, L), twist_by_exp(v, k, L)
    assert mukai_pairing(tu, tv, L) == mukai_pairing(u, v, L)
    assert twist_by_exp(tu, -k, L) == u


@given(vectors())
def test_primitive_part(v):
    if v.content() == 0:
        return
    assert vector_predicates(v.primitive_part(), L1).primitive


@given(rationals(), rationals(), rationals())
def test_integral_part_is_primitive_positive_multiple(r, d, a):
    x = RationalMukaiVector.of(r, d, a)
    if (r, d, a) == (0, 0, 0):
        return
    w = x.integral_part()
    assert w.content() == 1
    ratios = {Fraction(wi) / xi for wi, xi in zip(w.entries(), x.entries()) if xi}
    assert len(ratios) == 1 and ratios.pop() > 0


def test_rank_two_pairing():
    L = SurfaceLattice(((0, 1), (1, 0)), (1, 1))
    u, v = MukaiVector(1, (1, 0), 2), MukaiVector(0, (0, 1), -1)
    # (c1, c1') - r a' - a r' = 1 - (1)(-1) - 2*0
    assert mukai_pairing(u, v, L) == 2
