from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from helpers import positive_primitive, rationals, vectors
from mukaiwalls.charge import PreconditionError, StabilityPoint, on_wall, pqr_value
from mukaiwalls.fm import (FINITE, GHat, Sym2Matrix, act_on_mukai, dualize_compose,
                           ghat_compose, ghat_inverse, ghat_power, halfplane_action,
                           halfplane_fixed_points, in_stab, pell_brute, pell_fundamental,
                           sqrt_cf_period, stabilizer_generator)
from mukaiwalls.lattice import MukaiVector, SurfaceLattice, mukai_pairing
from mukaiwalls.quadext import QuadExt

L1 = SurfaceLattice.rank_one(1)
V = MukaiVector.of
G = GHat.integer
g01 = G(((0, 1), (1, 1)))
h = G(((0, -1), (1, 0)))


def test_act_examples():
    assert act_on_mukai(V(0, 0, -1), g01, L1) == V(-1, -1, -1)
    assert act_on_mukai(V(2, 1, -2), h, L1) == V(-2, -1, 2)
    assert act_on_mukai(V(3, -2, 7), GHat.identity(1), L1) == V(3, -2, 7)


def test_compose_and_dualize():
    assert ghat_compose(g01, g01) == G(((1, 1), (1, 2)))
    assert ghat_compose(g01, ghat_inverse(g01)) == GHat.identity(1)
    assert dualize_compose(GHat.identity(1)) == G(((1, 0), (0, -1)))
    assert dualize_compose(dualize_compose(g01)) == g01
    flip = dualize_compose(GHat.identity(1))
    assert act_on_mukai(V(2, 1, -2), flip, L1) == V(2, -1, -2)
    assert G(((-1, 0), (0, -1))) == GHat.identity(1)


def test_pell_examples():
    assert (pell_fundamental(5).x, pell_fundamental(5).y) == (9, 4)
    assert (pell_fundamental(13).x, pell_fundamental(13).y) == (649, 180)
    assert (pell_fundamental(2, -1).x, pell_fundamental(2, -1).y) == (1, 1)
    assert pell_fundamental(4) is None and pell_fundamental(4, -1) is None
    assert pell_fundamental(3, -1) is None


@pytest.mark.parametrize("D", [d for d in range(2, 121) if int(d ** 0.5) ** 2 != d])
def test_pell_matches_brute_force(D):
    for sign in (1, -1):
        fast = pell_fundamental(D, sign)
        slow = pell_brute(D, sign, limit=10 ** 5) if fast is None or fast.y < 10 ** 5 else fast
        assert fast == slow
        if fast is not None:
            assert fast.x ** 2 - D * fast.y ** 2 == sign
    period = len(sqrt_cf_period(D)) - 1
    assert (pell_fundamental(D, -1) is not None) == (period % 2 == 1)


def test_stabilizer_examples():
    g = stabilizer_generator(V(2, 1, -2), L1)
    assert g.matrix_str() == "((5,8),(8,13))"
    assert stabilizer_generator(V(1, 0, -2), L1).matrix_str() == "((3,4),(2,3))"
    assert stabilizer_generator(V(1, 0, -4), L1) == FINITE
    with pytest.raises(PreconditionError):
        stabilizer_generator(V(2, 0, -2), L1)


def test_membership_examples():
    v = V(2, 1, -2)
    m = in_stab(G(((5, 8), (8, 13))), v, L1)
    assert (m.status, m.in_star) == ("fixes_v", True)
    assert in_stab(h, v, L1).status == "fixes_neg_v"
    # ((0,1),(1,1)) is a sixth root of the generator and sends v to -v
    assert in_stab(g01, v, L1).status == "fixes_neg_v"
    assert ghat_power(g01, 6) == G(((5, 8), (8, 13)))
    assert in_stab(G(((1, 1), (0, 1))), v, L1).status == "no"


def test_halfplane_examples():
    fixed = halfplane_fixed_points(g01)
    half = F(1, 2)
    assert sorted(fixed) == [QuadExt(half, -half, 5), QuadExt(half, half, 5)]
    for t2 in (F(1, 4), 1, 3, F(7, 2)):
        q = halfplane_action(g01, StabilityPoint(half, t2))
        assert (q.s - 2) ** 2 + q.t2 == 1
    p = StabilityPoint(F(2, 3), F(5, 7))
    assert halfplane_action(GHat.identity(1), p) == p


@st.composite
def ghats(draw, n):
    # products of the two standard generators, transported to split (1, n)
    g = GHat.identity(n)
    T = GHat(1, 1, 0, 1, 1, n)
    S = GHat(0, -1, 1, 0, n, 1) if n > 1 else GHat(0, -1, 1, 0, 1, 1)
    for step in draw(st.lists(st.sampled_from(["T", "t", "S"]), max_size=6)):
        g = ghat_compose(g, {"T": T, "t": ghat_inverse(T), "S": S}[step])
    return g


@given(st.data(), st.integers(1, 5))
def test_action_is_isometry(data, n):
    L = SurfaceLattice.rank_one(n)
    g = data.draw(ghats(n))
    u, v = data.draw(vectors()), data.draw(vectors())
    assert mukai_pairing(act_on_mukai(u, g, L), act_on_mukai(v, g, L), L) == mukai_pairing(u, v, L)
    assert Sym2Matrix.from_vector(u).bform(Sym2Matrix.from_vector(v), n) == mukai_pairing(u, v, L)


@given(positive_primitive())
def test_stabilizer_properties(vL):
    v, L = vL
    g = stabilizer_generator(v, L)
    if g == FINITE:
        ell = mukai_pairing(v, v, L) // 2
        assert int((L.n * ell) ** 0.5) ** 2 == L.n * ell
        return
    assert act_on_mukai(v, g, L) == v
    assert in_stab(g, v, L).in_star
    assert any(act_on_mukai(w, g, L) != w for w in (V(1, 0, 0), V(0, 1, 0), V(0, 0, 1)))
    for k in range(1, 11):
        assert ghat_power(g, k) != GHat.identity(L.n)


@given(positive_primitive(), vectors(), rationals(), rationals(0, 4))
def test_walls_map_to_walls(vL, v1, s, t2):
    v, L = vL
    assume(t2 > 0)
    g = stabilizer_generator(v, L)
    assume(g != FINITE)
    p = StabilityPoint(s, t2)
    image = act_on_mukai(v1, g, L)
    q = halfplane_action(g, p)
    assert on_wall(v, v1, p, L) == on_wall(v, image, q, L)


@given(st.integers(1, 5), st.data())
def test_halfplane_matches_isotropic_action(n, data):
    """Boundary points z correspond to isotropic classes (1, z, n z^2)."""
    L = SurfaceLattice.rank_one(n)
    g = data.draw(ghats(n))
    z = data.draw(rationals())
    x = F(z)
    iso = [F(1), x, n * x * x]
    den = 1
    for e in iso:
        den = den * e.denominator // __import__("math").gcd(den, e.denominator)
    u = V(*(int(e * den) for e in iso))
    w = act_on_mukai(u, g, L)
    if w.r == 0:
        return
    # image boundary point read off from the class
    zw = F(w.d, w.r)
    eps = F(1, 10 ** 6)
    q = halfplane_action(g, StabilityPoint(x, eps * eps))
    assert abs(q.s - zw) < F(1, 1000)
