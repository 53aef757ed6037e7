from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from helpers import positive_primitive, rationals
from mukaiwalls.atlas import (BoundaryRay, Codim0, Codim1, Higher, NoWallCertified,
                              OnWallError, Wall, WallFound, WallRef, Window,
                              brute_force_walls, classify_wall, enumerate_walls,
                              geometry_meets_window, locate_chamber, walls_exist)
from mukaiwalls.charge import (Circle, Line, StabilityPoint, geometry_from_pqr,
                               wall_candidate_check, wall_geometry_rank1, wall_nonempty,
                               wall_pqr)
from mukaiwalls.lattice import MukaiVector, SurfaceLattice, mukai_pairing

L1 = SurfaceLattice.rank_one(1)
L39 = SurfaceLattice.rank_one(39)
V = MukaiVector.of
FIVE_TWO = Window(F(-11, 5), F(16, 5), F(1, 100), 4)


def test_seven_walls():
    walls = enumerate_walls(V(2, 1, -2), FIVE_TWO, L1)
    geoms = {w.geometry for w in walls}
    assert geoms == {Line(F(1, 2)), Circle(-1, 1), Circle(F(-2, 3), F(1, 9)),
                     Circle(F(-5, 8), F(1, 64)), Circle(2, 1), Circle(F(5, 3), F(1, 9)),
                     Circle(F(13, 8), F(1, 64))}
    assert {w.pqr for w in walls} == {w.pqr for w in brute_force_walls(V(2, 1, -2), FIVE_TWO, 40, L1)}
    assert [w.pqr for w in walls] == sorted(w.pqr for w in walls)


def test_empty_cases():
    assert enumerate_walls(V(6, 1, 6), Window(-5, 5, F(1, 100), 100), L39) == []
    assert enumerate_walls(V(2, 1, -2), Window(F(3, 5), F(6, 5), 9, 16), L1) == []
    assert brute_force_walls(V(2, 1, -2), FIVE_TWO, 0, L1) == []


def test_brute_force_finds_codim0_line():
    walls = brute_force_walls(V(1, 0, -3), Window(F(-1, 10), F(1, 10), F(1, 100), F(1, 25)), 6, L1)
    assert wall_pqr(V(1, 0, -3), V(0, 0, -1), L1) in {w.pqr for w in walls}


def test_walls_exist_examples():
    assert walls_exist(V(6, 1, 6), L39) == NoWallCertified("divisibility")
    assert walls_exist(V(2, 1, -2), L1) == WallFound(V(0, 0, -1))
    assert walls_exist(V(1, 0, -3), L1) == WallFound(V(0, 0, -1))


def _wall(v, v1, L):
    return Wall(wall_pqr(v, v1, L), wall_geometry_rank1(v, v1, L), (v1,))


def test_classify_examples():
    v = V(1, 0, -3)
    assert classify_wall(v, _wall(v, V(0, 0, -1), L1), L1) == Codim0(V(0, 0, -1), V(1, 0, 0))
    w = V(2, 1, -2)
    assert classify_wall(w, _wall(w, V(1, 0, 0), L1), L1) == Codim1(V(1, 0, 0))
    assert classify_wall(v, _wall(v, V(1, 1, 0), L1), L1) == Higher()


def test_locate_chamber_examples():
    v = V(2, 1, -2)
    ch = locate_chamber(v, StabilityPoint(F(1, 4), 1), L1)
    assert isinstance(ch.left, WallRef) and isinstance(ch.right, WallRef)
    assert ch.right.pqr == (0, 2, -1)          # the line s = 1/2
    assert ch.left.pqr == (1, 2, 0)            # the circle t^2 + s(s + 2) = 0
    ch = locate_chamber(V(6, 1, 6), StabilityPoint(F(1, 3), 2), L39)
    assert ch.left == BoundaryRay("minus") and ch.right == BoundaryRay("plus")
    with pytest.raises(OnWallError) as err:
        locate_chamber(v, StabilityPoint(F(1, 2), 1), L1)
    assert err.value.witness == V(0, 0, -1)


def _meet(w1, w2) -> bool:
    """Whether two walls share a point with t > 0."""
    P1, Q1, R1 = w1
    P2, Q2, R2 = w2
    lin, const = P1 * Q2 - P2 * Q1, P1 * R2 - P2 * R1
    if lin == 0:
        return False  # parallel or concentric, distinct walls never coincide
    s = F(-const, lin)
    P, Q, R = (w1 if P1 else w2)
    if P == 0:
        return False
    t2 = F(-(Q * s + R), P) - s * s
    return t2 > 0


@st.composite
def windows(draw):
    s0 = draw(rationals(-3, 3))
    w = draw(rationals(0, 2).filter(lambda x: x > 0))
    t1 = draw(rationals(0, 1).filter(lambda x: x >= F(1, 5)))
    t2 = t1 + draw(rationals(0, 2).filter(lambda x: x > 0))
    return Window.from_t(s0, s0 + w, t1, t2)


@settings(max_examples=25)
@given(positive_primitive(lo=-4, hi=4), windows())
def test_enumerated_walls_are_valid_and_disjoint(vL, win):
    v, L = vL
    walls = enumerate_walls(v, win, L)
    for w in walls:
        assert w.geometry == geometry_from_pqr(w.pqr)
        assert geometry_meets_window(w.geometry, win)
        for v1 in w.witnesses:
            assert wall_candidate_check(v, v1, L) and wall_nonempty(v, v1, L)
            assert wall_pqr(v, v1, L) == w.pqr
    for i, a in enumerate(walls):
        for b in walls[i + 1:]:
            assert not _meet(a.pqr, b.pqr)


@settings(max_examples=15)
@given(positive_primitive(max_n=3, lo=-4, hi=4), windows(), rationals(0, 1), rationals(0, 1))
def test_enlarging_window_keeps_walls(vL, win, ds, dt):
    v, L = vL
    big = Window(win.s_lo - ds, win.s_hi + ds, win.t2_lo / (1 + dt), win.t2_hi * (1 + dt))
    small = {w.pqr for w in enumerate_walls(v, win, L)}
    assert small <= {w.pqr for w in enumerate_walls(v, big, L)}


@settings(max_examples=8)
@given(positive_primitive(max_n=5, lo=-6, hi=6), windows())
def test_brute_force_never_sees_more(vL, win):
    """On the full small range the bounded oracle may miss walls but never adds any."""
    v, L = vL
    fast = {w.pqr for w in enumerate_walls(v, win, L)}
    assert {w.pqr for w in brute_force_walls(v, win, 12, L)} <= fast


@settings(max_examples=20)
@given(positive_primitive(max_n=3, lo=-4, hi=4))
def test_walls_exist_agrees_with_enumeration(vL):
    v, L = vL
    res = walls_exist(v, L)
    if isinstance(res, WallFound):
        w = res.witness
        assert wall_candidate_check(v, w, L) and wall_nonempty(v, w, L)
    else:
        assert isinstance(res, NoWallCertified)
        assert enumerate_walls(v, Window(-20, 20, F(1, 10 ** 4), 10 ** 4), L) == []


def test_window_validation():
    with pytest.raises(ValueError):
        Window(1, 0, 1, 2)
    with pytest.raises(ValueError):
        Window(0, 1, 0, 2)
