"""Walls in the rank-one (s, t) half-plane: enumeration, chambers, codimension.

Every wall of ``v`` is the locus where the polarization class is orthogonal to
``eta = <v^2> v1 - <v, v1> v``, a negative class of ``v^perp``.  Enumeration
therefore walks primitive negative classes of ``v^perp`` whose orthogonal ray
falls in a closed subcone of the positive cone.  Restricting to such a cone
bounds the coordinates of ``eta``: if ``p_i = <eta, u_i>`` for the two edge
rays, ``p_1 p_2 <= 0`` and ``-<eta^2> |det G| >= g22 p1^2 + g11 p2^2 + 2 g12 |p1 p2|``
with ``G`` the Gram matrix of the edges, while ``-<eta^2> < <v^2>^3``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Optional, Union

from .charge import (Circle, Empty, Line, PreconditionError, StabilityPoint,
                     WallGeometry, geometry_from_pqr, normalize_pqr, pqr_value, raw_pqr)
from .fm import FINITE, act_on_mukai, ghat_inverse, stabilizer_generator
from .lattice import MukaiVector, RationalMukaiVector, SurfaceLattice, mukai_pairing
from .perp import (approx, boundary_parameters, coords, cross, orientation, pair3,
                   perp_basis, xi_rank_one)
from .quadext import QuadExt, rational_sqrt

DEFAULT_EXACT_BUDGET = 10 ** 6


@dataclass(frozen=True)
class Window:
    s_lo: Fraction
    s_hi: Fraction
    t2_lo: Fraction
    t2_hi: Fraction

    def __post_init__(self):
        for name in ("s_lo", "s_hi", "t2_lo", "t2_hi"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not self.s_lo < self.s_hi:
            raise ValueError("window needs s_lo < s_hi")
        if not 0 < self.t2_lo <= self.t2_hi:
            raise ValueError("window needs 0 < t_lo <= t_hi")

    @classmethod
    def from_t(cls, s_lo, s_hi, t_lo, t_hi) -> "Window":
        t_lo, t_hi = Fraction(t_lo), Fraction(t_hi)
        return cls(s_lo, s_hi, t_lo * t_lo, t_hi * t_hi)

    def contains(self, p: StabilityPoint) -> bool:
        return self.s_lo <= p.s <= self.s_hi and self.t2_lo <= p.t2 <= self.t2_hi

    def center(self) -> StabilityPoint:
        return StabilityPoint((self.s_lo + self.s_hi) / 2, (self.t2_lo + self.t2_hi) / 2)


@dataclass(frozen=True)
class Codim0:
    v1: MukaiVector
    v2: MukaiVector


@dataclass(frozen=True)
class Codim1:
    v1: MukaiVector


@dataclass(frozen=True)
class Higher:
    pass


WallClass = Union[Codim0, Codim1, Higher]


@dataclass(frozen=True)
class Wall:
    pqr: tuple
    geometry: WallGeometry
    witnesses: tuple
    codim: Optional[WallClass] = None


def geometry_meets_window(geom: WallGeometry, win: Window) -> bool:
    if isinstance(geom, Line):
        return win.s_lo <= geom.s0 <= win.s_hi
    if isinstance(geom, Circle):
        # t^2 = radius2 - (s - c)^2 must reach [t2_lo, t2_hi] for some s in range
        c, rho = geom.center, geom.radius2
        ends = [rho - (win.s_lo - c) ** 2, rho - (win.s_hi - c) ** 2]
        top = rho if win.s_lo <= c <= win.s_hi else max(ends)
        bottom = min(ends)
        return top >= win.t2_lo and bottom <= win.t2_hi
    return False


def _quad_range(a, b, c, lo, hi) -> tuple:
    """Exact (min, max) of a x^2 + b x + c on [lo, hi]."""
    vals = [a * x * x + b * x + c for x in (lo, hi)]
    if a != 0:
        x0 = -b / (2 * a)
        if lo <= x0 <= hi:
            vals.append(a * x0 * x0 + b * x0 + c)
    return min(vals), max(vals)


class Frame:
    """Precomputed data of ``v^perp`` for a primitive positive rank-one class."""

    def __init__(self, v: MukaiVector, L: SurfaceLattice):
        if L.rank != 1:
            raise PreconditionError("wall atlas is implemented for Picard rank one")
        if v.content() != 1:
            raise PreconditionError("v must be primitive")
        self.V = mukai_pairing(v, v, L)
        if self.V <= 0:
            raise PreconditionError("v must have positive square")
        self.v, self.L, self.n = v, L, L.n
        self.vt = v.entries()
        self.bezout = _bezout(self.vt)
        self.basis = perp_basis(v, L)
        e1, e2 = (b.entries() for b in self.basis)
        self.e = (e1, e2)
        n = self.n
        self.g11, self.g12, self.g22 = pair3(e1, e1, n), pair3(e1, e2, n), pair3(e2, e2, n)
        ell = Fraction(self.V, 2)
        self.rational_boundary = rational_sqrt(ell * n) is not None
        if v.r != 0:
            lo, hi = boundary_parameters(v, L)
            self.s_lo, self.s_hi = min(lo, hi), max(lo, hi)
            lam0 = Fraction(v.d, v.r)
            tangent = (2 * n * v.r, 2 * v.r * n * lam0, 2 * n * (2 * v.d * n * lam0 - v.a))
            self.sigma = self._sgn(cross(self.c(self.xi(lam0, 0)), self.c(tangent)))
            probe = (Fraction(v.d, v.r), Fraction(1))
            self.side_hi = self._G(probe[0], probe[1], self.s_hi).sign()
        else:
            self.center0 = Fraction(v.a, 2 * n * v.d)
            tangent = (0, 0, 2 * n * n * v.d)
            self.sigma = self._sgn(cross(self.c(self.xi(self.center0, 1)), self.c(tangent)))

    @staticmethod
    def _sgn(x) -> int:
        return (x > 0) - (x < 0)

    # --- rays ---------------------------------------------------------------
    def xi(self, s, t2) -> tuple:
        return xi_rank_one(self.v, s, t2, self.n)

    def c(self, x) -> tuple:
        return coords(x, self.basis, self.n)

    def positive(self, x) -> tuple:
        """Representative of the ray of x lying in the closed positive cone."""
        o = orientation(x, self.v, self.n)
        return tuple(-y for y in x) if o < 0 else tuple(x)

    def before(self, x, y) -> int:
        """Sign of the order of rays x, y along increasing parameter."""
        return self.sigma * self._sgn(cross(self.c(x), self.c(y)))

    def ray_of_eta(self, eta) -> tuple:
        e1, e2 = self.e
        n = self.n
        a, b = pair3(eta, e2, n), -pair3(eta, e1, n)
        return self.positive(tuple(a * x + b * y for x, y in zip(e1, e2)))

    # --- leaves -----------------------------------------------------------------
    def _G(self, s, t2, lam):
        """Leaf function: zero iff (s, t^2) lies on the leaf through lambda."""
        n, r, d, a = self.n, self.v.r, self.v.d, self.v.a
        return (n * (r * lam - d)) * (s * s + t2) + s * (a - n * r * lam * lam) + (n * d * lam * lam - a * lam)

    def leaf_parameter(self, p: StabilityPoint) -> QuadExt:
        """The parameter lambda in (s_lo, s_hi) of the leaf through p (r != 0)."""
        n, r, d, a = self.n, self.v.r, self.v.d, self.v.a
        q = p.s * p.s + p.t2
        A2, A1, A0 = n * (d - r * p.s), r * n * q - a, -(d * n * q - a * p.s)
        if A2 == 0:
            return QuadExt(-A0 / A1)
        disc = A1 * A1 - 4 * A2 * A0
        root = QuadExt.sqrt(disc)
        for sgn in (1, -1):
            lam = (root * sgn - A1) / (2 * A2)
            if self.s_lo < lam < self.s_hi:
                return lam
        raise AssertionError("no leaf parameter inside the boundary interval")

    def _window_side(self, win: Window, lam: Fraction) -> int:
        """+1 if the window lies strictly on the high side of the leaf, -1 low, 0 mixed."""
        n, r, d, a = self.n, self.v.r, self.v.d, self.v.a
        P = n * (r * lam - d)
        lo_t, hi_t = sorted((P * win.t2_lo, P * win.t2_hi))
        lo_s, hi_s = _quad_range(P, a - n * r * lam * lam, n * d * lam * lam - a * lam,
                                 win.s_lo, win.s_hi)
        lo, hi = lo_t + lo_s, hi_t + hi_s
        sgn = 1 if lo > 0 else (-1 if hi < 0 else 0)
        # sign side_hi means the leaf parameter of the point is below lam
        return -sgn * self.side_hi

    def _bracket(self, x0: QuadExt, target: QuadExt, want: int, win: Window) -> Fraction:
        # only the exact side test matters, so a rational start point will do
        x0 = QuadExt(approx(x0, 64)) if x0.radicand else x0
        for k in range(0, 400):
            cand = approx(x0 + (target - x0) * (1 - Fraction(1, 2 ** k)), k + 24)
            if not (self.s_lo < cand < self.s_hi):
                continue
            if self._window_side(win, cand) == want:
                return cand
        if target.is_rational():
            return target.rat
        raise AssertionError("failed to bracket the window")

    def window_cone(self, win: Window) -> tuple:
        if self.v.r == 0:
            c = self.center0
            lo_s, hi_s = _quad_range(1, -2 * c, c * c, win.s_lo, win.s_hi)
            rho_lo, rho_hi = lo_s + win.t2_lo, hi_s + win.t2_hi
            return (self.positive(self.xi(c, rho_lo)), self.positive(self.xi(c, rho_hi)))
        x0 = self.leaf_parameter(win.center())
        lam_lo = self._bracket(x0, self.s_lo, 1, win)
        lam_hi = self._bracket(x0, self.s_hi, -1, win)
        return (self.positive(self.xi(lam_lo, 0)), self.positive(self.xi(lam_hi, 0)))

    def boundary_rays(self) -> tuple:
        """Closed-cone edge rays when the boundary is rational."""
        if self.v.r == 0:
            return (self.positive(self.xi(self.center0, 0)),
                    self.positive((0, 0, 2 * self.n * self.n * self.v.d)))
        return (self.positive(self.xi(self.s_lo.rat, 0)), self.positive(self.xi(self.s_hi.rat, 0)))

    # --- enumeration ---------------------------------------------------------------
    def cone_box(self, u1, u2, max_norm=None) -> tuple:
        """Enumeration plan (basis, gram, M, A, B) for the cone spanned by u1, u2.

        ``M`` holds the pairings of the basis with the edges; coordinates of
        eta in the basis are bounded by A and B.
        """
        # every bound below is invariant under positive rescaling of the edges
        u1, u2 = _primitive_ray(u1), _primitive_ray(u2)
        n, V = self.n, self.V
        cap = V ** 3 if max_norm is None else max_norm
        e1, e2 = self.e
        M = [[pair3(e1, u1, n), pair3(e2, u1, n)], [pair3(e1, u2, n), pair3(e2, u2, n)]]
        h11, h12, h22 = pair3(u1, u1, n), pair3(u1, u2, n), pair3(u2, u2, n)
        delta = h11 * h22 - h12 * h12
        if delta >= 0 or h12 <= 0:
            raise AssertionError("cone edges must be independent rays of the positive cone")
        gram = (self.g11, self.g12, self.g22)
        if h11 > 0 and h22 > 0:
            return self._triangle_plan(M, gram, cap)
        N = Fraction(cap) * (-delta)

        def den(u):
            return reduce(lambda x, y: x * y // gcd(x, y), (Fraction(c).denominator for c in u), 1)

        def bound(h_other, u_other):
            # |p_i| from h_other p_i^2 <= N, or from 2 h12 |p_i p_j| <= N with
            # p_j a nonzero multiple of 1/den(u_other) when u_other is isotropic
            if h_other > 0:
                q = N / h_other
                return isqrt(q.numerator // q.denominator) + 1
            q = N * den(u_other) / (2 * h12)
            return q.numerator // q.denominator + 1

        P1, P2 = bound(h22, u2), bound(h11, u1)
        detM = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        inv = [[M[1][1] / detM, -M[0][1] / detM], [-M[1][0] / detM, M[0][0] / detM]]
        A = abs(inv[0][0]) * P1 + abs(inv[0][1]) * P2
        B = abs(inv[1][0]) * P1 + abs(inv[1][1]) * P2
        return (e1, e2), gram, M, int(A), int(B)

    def _triangle_plan(self, M, gram, cap) -> tuple:
        """Plan in a lattice basis adapted to the sector of admissible eta.

        With both edges of positive square, eta ranges over a negative
        sector where sqrt(-<eta^2>) is concave, so {-<eta^2> <= cap} lies in
        the triangle spanned by the edge rays scaled to the level curve.
        """
        g11, g12, g22 = gram

        def q(w):
            return g11 * w[0] * w[0] + 2 * g12 * w[0] * w[1] + g22 * w[1] * w[1]

        w1, w2 = (M[0][1], -M[0][0]), (M[1][1], -M[1][0])
        mid = (w1[0] + w2[0], w1[1] + w2[1])
        if (M[0][0] * mid[0] + M[0][1] * mid[1]) * (M[1][0] * mid[0] + M[1][1] * mid[1]) > 0:
            w2 = (-w2[0], -w2[1])
        U = _reduce_basis(w1, w2, cap / -q(w1), cap / -q(w2))
        (a, b), (c, d) = U
        det = a * d - b * c
        inv = ((d * det, -b * det), (-c * det, a * det))
        bounds = [0, 0]
        for w in (w1, w2):
            y = (inv[0][0] * w[0] + inv[0][1] * w[1], inv[1][0] * w[0] + inv[1][1] * w[1])
            for j in (0, 1):
                bounds[j] = max(bounds[j], isqrt(y[j] * y[j] * cap // -q(w)) + 1)
        e1, e2 = self.e
        f1 = tuple(a * x + c * y for x, y in zip(e1, e2))
        f2 = tuple(b * x + d * y for x, y in zip(e1, e2))
        n = self.n
        gram2 = (pair3(f1, f1, n), pair3(f1, f2, n), pair3(f2, f2, n))
        M2 = [[row[0] * a + row[1] * c, row[0] * b + row[1] * d] for row in M]
        return (f1, f2), gram2, M2, bounds[0], bounds[1]

    def box_size(self, u1, u2) -> int:
        *_, A, B = self.cone_box(u1, u2)
        return (2 * A + 1) * (2 * B + 1)

    def cost(self, u1, u2, max_norm=None) -> int:
        """Length of the outer enumeration loop for this cone."""
        *_, A, B = self.cone_box(u1, u2, max_norm)
        return 2 * min(A, B) + 1

    def walls_in_cone(self, u1, u2, max_norm=None) -> dict:
        """All walls whose ray lies in the closed cone spanned by u1, u2.

        Returns {pqr: (eta0, set of witnesses)}.  With ``max_norm`` only
        primitive eta0 with -<eta0^2> <= max_norm are visited.
        """
        (e1, e2), (g11, g12, g22), M, A, B = self.cone_box(u1, u2, max_norm)
        cap = self.V ** 3 if max_norm is None else max_norm + 1
        swap = B < A
        found: dict = {}
        for x in range(-min(A, B), min(A, B) + 1):
            if swap:
                # outer loop on the second coordinate
                ys = _inner_range(x, M[0][1], M[0][0], M[1][1], M[1][0], g22, g12, g11, cap, A)
                pairs = [(y, x) for y in ys]
            else:
                ys = _inner_range(x, M[0][0], M[0][1], M[1][0], M[1][1], g11, g12, g22, cap, B)
                pairs = [(x, y) for y in ys]
            for al, be in pairs:
                if gcd(al, be) != 1:
                    continue
                q0 = al * al * g11 + 2 * al * be * g12 + be * be * g22
                if q0 >= 0 or -q0 >= cap:
                    continue
                p1 = al * M[0][0] + be * M[0][1]
                p2 = al * M[1][0] + be * M[1][1]
                if p1 * p2 > 0:
                    continue
                eta0 = tuple(al * x1 + be * y1 for x1, y1 in zip(e1, e2))
                self._lift_eta(eta0, q0, found)
        return found

    def _lift_eta(self, eta0, q0, found) -> None:
        """Record every wall class v1 = (m*eta0 + k*v) / <v^2>."""
        V, n, vt = self.V, self.n, self.vt
        V3 = V ** 3
        # w . v = 1 (dot product) forces k = -m (w . eta0) mod V
        c = -sum(x * y for x, y in zip(self.bezout, eta0))
        m = 1
        while m * m * (-q0) < V3:
            k = (m * c) % V
            if k:
                num = [m * x + k * y for x, y in zip(eta0, vt)]
                if not any(x % V for x in num):
                    v1 = tuple(x // V for x in num)
                    w = pair3(v1, v1, n)
                    if w >= 0 and k - w > 0 and V - 2 * k + w >= 0:
                        vec = MukaiVector.of(*v1)
                        pqr = normalize_pqr(raw_pqr(self.v, vec, self.L))
                        found.setdefault(pqr, (eta0, set()))[1].add(vec)
            m += 1

    def exact_region(self):
        """A closed cone meeting every orbit of walls, or None if unavailable."""
        if self.rational_boundary:
            return self.boundary_rays()
        g = stabilizer_generator(self.v, self.L)
        if g == FINITE:
            return None
        base = self.xi(Fraction(self.v.d, self.v.r), Fraction(1))
        img = self.act(base, g)
        return (base, img) if self.before(base, img) > 0 else (img, base)

    def act(self, x, g) -> tuple:
        vec = RationalMukaiVector.of(*x).integral_part()
        return self.positive(act_on_mukai(vec, g, self.L).entries())


def _reduce_basis(w1, w2, k1, k2) -> tuple:
    """Unimodular matrix whose columns are a Gauss-reduced basis of Z^2.

    The metric sends w1 * sqrt(k1) and w2 * sqrt(k2) to an orthonormal pair.
    Floating point only steers the reduction; any unimodular answer is valid.
    """
    a, b = float(w1[0]) * k1 ** 0.5, float(w2[0]) * k2 ** 0.5
    c, d = float(w1[1]) * k1 ** 0.5, float(w2[1]) * k2 ** 0.5
    det = a * d - b * c
    T = ((d / det, -b / det), (-c / det, a / det))

    def ip(x, y):
        tx = (T[0][0] * x[0] + T[0][1] * x[1], T[1][0] * x[0] + T[1][1] * x[1])
        ty = (T[0][0] * y[0] + T[0][1] * y[1], T[1][0] * y[0] + T[1][1] * y[1])
        return tx[0] * ty[0] + tx[1] * ty[1]

    b1, b2 = (1, 0), (0, 1)
    for _ in range(200):
        if ip(b1, b1) > ip(b2, b2):
            b1, b2 = b2, b1
        mu = round(ip(b1, b2) / ip(b1, b1))
        if mu == 0:
            break
        b2 = (b2[0] - mu * b1[0], b2[1] - mu * b1[1])
    return ((b1[0], b2[0]), (b1[1], b2[1]))


def _bezout(xs) -> tuple:
    """Integers w with sum w_i x_i = gcd(x)."""
    g, w = 0, [0] * len(xs)
    for i, x in enumerate(xs):
        # extend: new gcd = u*g + t*x
        g2, u, t = _egcd(g, x)
        w = [u * y for y in w]
        w[i] = t
        g = g2
    if g < 0:
        w = [-y for y in w]
    return tuple(w)


def _egcd(a: int, b: int) -> tuple:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def _inner_range(x, m0x, m0y, m1x, m1y, gxx, gxy, gyy, V3, ybound):
    """Integers y with |y| <= ybound that may satisfy the cone and norm constraints.

    With the outer coordinate fixed to x, the constraints
    (m0x x + m0y y)(m1x x + m1y y) <= 0 and -V3 < q(x, y) < 0 cut the line
    into segments whose ends are roots of linear or quadratic polynomials in
    y.  Ends are located in floating point and padded; the caller re-checks
    every candidate exactly, so the padding only has to be conservative.
    """
    qa, qb, qc = gyy, 2 * gxy * x, gxx * x * x
    crit = [float(-ybound), float(ybound)]
    for lin_a, lin_b in ((m0y, m0x * x), (m1y, m1x * x)):
        if lin_a:
            crit.append(-float(lin_b) / float(lin_a))
    for level in (0, -V3):
        a, b, c = qa, qb, qc - level
        if a:
            disc = float(b) * b - 4.0 * a * c
            if disc >= 0:
                rt = disc ** 0.5
                crit += [(-b - rt) / (2.0 * a), (-b + rt) / (2.0 * a)]
        elif b:
            crit.append(-float(c) / b)
    crit = sorted(min(max(c, -ybound), ybound) for c in crit)
    keep = set()
    for c in crit:
        base = int(c // 1)
        keep.update(range(base - 1, base + 3))
    for lo, hi in zip(crit, crit[1:]):
        if hi - lo < 1e-9:
            continue
        mid = (lo + hi) / 2
        lin = (m0x * x + m0y * mid) * (m1x * x + m1y * mid)
        q = qa * mid * mid + qb * mid + qc
        if lin <= 0 and -V3 < q < 0:
            keep.update(range(int(lo // 1) - 1, int(hi // 1) + 2))
    return sorted(y for y in keep if -ybound <= y <= ybound)


def _wall_from(frame: Frame, pqr, witnesses) -> Wall:
    wall = Wall(pqr, geometry_from_pqr(pqr), tuple(sorted(witnesses, key=lambda w: w.entries())))
    return Wall(wall.pqr, wall.geometry, wall.witnesses, classify_wall(frame.v, wall, frame.L))


def enumerate_walls(v: MukaiVector, win: Window, L: SurfaceLattice) -> list:
    frame = Frame(v, L)
    u1, u2 = frame.window_cone(win)
    found = frame.walls_in_cone(u1, u2)
    walls = []
    for pqr, (_, wits) in found.items():
        geom = geometry_from_pqr(pqr)
        if geometry_meets_window(geom, win):
            walls.append(_wall_from(frame, pqr, wits))
    return sorted(walls, key=lambda w: w.pqr)


def brute_force_walls(v: MukaiVector, win: Window, bound: int, L: SurfaceLattice) -> list:
    """Reference enumeration over all classes with entries bounded by ``bound``.

    Applies the three wall inequalities and the nonemptiness criterion
    literally to every class in the box.
    """
    n = L.n
    r, d, a = v.r, v.d, v.a
    V = mukai_pairing(v, v, L)
    found: dict = {}
    rng = range(-bound, bound + 1)
    for r1 in rng:
        for d1 in rng:
            for a1 in rng:
                k = 2 * n * d * d1 - r * a1 - a * r1          # <v, v1>
                w = 2 * n * d1 * d1 - 2 * r1 * a1             # <v1^2>
                if not (k - w > 0 and w >= 0 and V - 2 * k + w >= 0 and k * k > V * w):
                    continue
                if r * d1 == r1 * d and r * a1 == r1 * a and d * a1 == d1 * a:
                    continue  # proportional to v
                v1 = MukaiVector.of(r1, d1, a1)
                pqr = normalize_pqr(raw_pqr(v, v1, L))
                if geometry_meets_window(geometry_from_pqr(pqr), win):
                    found.setdefault(pqr, set()).add(v1)
    walls = [Wall(pqr, geometry_from_pqr(pqr), tuple(sorted(w, key=lambda x: x.entries())))
             for pqr, w in found.items()]
    return sorted(walls, key=lambda w: w.pqr)


# --- existence -----------------------------------------------------------------

@dataclass(frozen=True)
class NoWallCertified:
    reason: str  # "divisibility" or "exhaustive"


@dataclass(frozen=True)
class WallFound:
    witness: MukaiVector


@dataclass(frozen=True)
class UndecidedUpTo:
    bound: int


def default_bound(v: MukaiVector, L: SurfaceLattice) -> int:
    env = os.environ.get("MUKAIWALLS_BOUND")
    if env:
        return int(env)
    return 10 * mukai_pairing(v, v, L)


def pairing_ideal(v: MukaiVector, L: SurfaceLattice) -> int:
    """Generator of the ideal {<v, x> : x integral}."""
    return gcd(gcd(v.r, 2 * L.n * v.d), v.a)


def walls_exist(v: MukaiVector, L: SurfaceLattice, bound: Optional[int] = None,
                exact: bool = True, budget: int = DEFAULT_EXACT_BUDGET):
    frame = Frame(v, L)
    V, n = frame.V, L.n
    if pairing_ideal(v, L) >= V:
        return NoWallCertified("divisibility")
    bound = default_bound(v, L) if bound is None else bound
    wit = _bounded_witness(v, L, bound)
    if wit is not None:
        return WallFound(wit)
    if exact:
        region = frame.exact_region()
        if region is not None and frame.cost(*region) <= budget:
            found = frame.walls_in_cone(*region)
            if not found:
                return NoWallCertified("exhaustive")
            best = min((w for _, ws in found.values() for w in ws), key=_height)
            return WallFound(best)
    return UndecidedUpTo(bound)


def _bounded_witness(v: MukaiVector, L: SurfaceLattice, bound: int):
    """Smallest-height candidate with entries bounded by ``bound``, if any."""
    n, V = L.n, mukai_pairing(v, v, L)
    r, d, a = v.r, v.d, v.a
    best = None
    # <v, v1> = 2nd d1 - r a1 - a r1 = k with 0 < k < V; solve for one coordinate
    for h in range(0, bound + 1):
        for x in range(-h, h + 1):
            for y in range(-h, h + 1):
                for k in range(1, V):
                    for v1 in _solve_pairing(v, n, k, x, y, h):
                        if max(map(abs, v1)) != h:
                            continue
                        w = pair3(v1, v1, n)
                        if w >= 0 and k - w > 0 and V - 2 * k + w >= 0 and k * k > V * w:
                            cand = MukaiVector.of(*v1)
                            if best is None or _height(cand) < _height(best):
                                best = cand
        if best is not None:
            return best
    return None


def _height(w: MukaiVector) -> tuple:
    return (sum(map(abs, w.entries())), w.entries())


def _solve_pairing(v, n, k, x, y, h):
    r, d, a = v.r, v.d, v.a
    if r != 0:  # free (r1, d1) = (x, y)
        num = 2 * n * d * y - a * x - k
        if num % r == 0:
            yield (x, y, num // r)
    elif a != 0:  # free (d1, a1) = (x, y); r1 from the pairing
        num = 2 * n * d * x - k
        if num % a == 0:
            yield (num // a, x, y)
    else:  # free (r1, a1) = (x, y)
        if k % (2 * n * d) == 0:
            yield (x, k // (2 * n * d), y)


# --- classification ----------------------------------------------------------------

def classify_wall(v: MukaiVector, wall: Wall, L: SurfaceLattice) -> WallClass:
    if not wall.witnesses:
        raise PreconditionError("wall has no defining classes")
    pool = set(wall.witnesses) | {v - w for w in wall.witnesses}
    for w in pool:
        if normalize_pqr(raw_pqr(v, w, L)) != wall.pqr:
            raise PreconditionError("class does not define this wall")
    V = mukai_pairing(v, v, L)
    ell = V // 2
    ordered = sorted(pool, key=lambda w: w.entries())
    for w in ordered:
        if mukai_pairing(w, w, L) == 0 and mukai_pairing(v, w, L) == 1:
            partner = v - w.scale(ell)
            if mukai_pairing(partner, partner, L) == 0 and mukai_pairing(w, partner, L) == 1:
                return Codim0(w, partner)
    for w in ordered:
        if (mukai_pairing(w, w, L) == 0 and mukai_pairing(v, w, L) == 2 and w.content() == 1):
            return Codim1(w)
    return Higher()


# --- chambers -------------------------------------------------------------------------

@dataclass(frozen=True)
class WallRef:
    pqr: tuple
    witness: MukaiVector
    ray: tuple


@dataclass(frozen=True)
class BoundaryRay:
    side: str  # "minus" or "plus"


@dataclass(frozen=True)
class ChamberDescriptor:
    left: Union[WallRef, BoundaryRay]
    right: Union[WallRef, BoundaryRay]


class OnWallError(PreconditionError):
    def __init__(self, pqr, witness):
        super().__init__(f"point lies on the wall {pqr} of {witness}")
        self.pqr, self.witness = pqr, witness


def adjacent_walls(v: MukaiVector, x, L: SurfaceLattice, keep=None,
                   budget: int = DEFAULT_EXACT_BUDGET, max_norm=None) -> tuple:
    """Nearest walls on each side of the positive ray x, optionally filtered.

    ``keep(pqr, witnesses)`` selects which walls count and ``max_norm`` caps
    -<eta0^2> for the walls visited.  Each side is either None (no such wall
    before the boundary) or (pqr, witnesses, ray).  A counted wall through x
    raises OnWallError.
    """
    frame = Frame(v, L)
    x = frame.positive(x)
    if pairing_ideal(v, L) >= frame.V:
        return None, None
    if frame.rational_boundary:
        lo, hi = frame.boundary_rays()
        cones = ((lo, x), (x, hi))
        periodic = False
    else:
        g = stabilizer_generator(v, L)
        y1, y2 = frame.act(x, g), frame.act(x, ghat_inverse(g))
        if frame.before(y1, x) > 0:
            y1, y2 = y2, y1
        cones = ((y2, x), (x, y1))
        periodic = True
    sides = []
    for (far, want) in ((cones[0][0], -1), (cones[1][1], 1)):
        best = None
        for edge in _outward(x, far):
            cone = (edge, x) if want < 0 else (x, edge)
            if frame.cost(*cone, max_norm) > budget:
                raise PreconditionError("chamber search exceeds the enumeration budget")
            for pqr, (eta0, wits) in sorted(frame.walls_in_cone(*cone, max_norm).items()):
                if keep is not None and not keep(pqr, wits):
                    continue
                ray = frame.ray_of_eta(eta0)
                if frame.before(ray, x) == 0:
                    raise OnWallError(pqr, min(wits, key=_height))
                if best is None or frame.before(best[2], ray) == -want:
                    best = (pqr, wits, ray)
            if best is not None:
                break
        sides.append(best)
    if periodic and (sides[0] is None) != (sides[1] is None):
        # the translates of a kept wall fall on both sides
        raise AssertionError("stabilizer orbit seen on one side only")
    return tuple(sides)


def _outward(x, far, start: int = 16):
    """Rays from next to x out to far, each cone containing the previous one."""
    x, far = _primitive_ray(x), _primitive_ray(far)
    for k in range(start, -1, -1):
        tau = Fraction(1, 2 ** k)
        yield tuple((1 - tau) * a + tau * b for a, b in zip(x, far))


def locate_chamber(v: MukaiVector, p: StabilityPoint, L: SurfaceLattice,
                   budget: int = DEFAULT_EXACT_BUDGET) -> ChamberDescriptor:
    if p.t2 <= 0:
        raise PreconditionError("interior point required")
    frame = Frame(v, L)
    sides = adjacent_walls(v, frame.xi(p.s, p.t2), L, budget=budget)
    out = []
    for best, label in zip(sides, ("minus", "plus")):
        if best is None:
            out.append(BoundaryRay(label))
        else:
            out.append(WallRef(best[0], min(best[1], key=_height), _primitive_ray(best[2])))
    return ChamberDescriptor(*out)


def _primitive_ray(x) -> tuple:
    return RationalMukaiVector.of(*x).integral_part().entries()
