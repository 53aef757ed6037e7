"""Central charges, wall predicates and rank-one wall geometry.

The charge of ``v`` at ``(beta, tH)`` is written ``Z = A + i*B*t`` so that
every wall computation stays rational even when ``t`` is not: only ``t^2``
ever enters.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Union

from .lattice import AnyVector, MukaiVector, SurfaceLattice, mukai_pairing


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


@dataclass(frozen=True)
class StabilityPoint:
    """Rank-one parameter ``(s, t^2)``: ``beta = sH`` and ``omega = tH``."""

    s: Fraction
    t2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "t2", Fraction(self.t2))
        if self.t2 < 0:
            raise ValueError("t^2 must be nonnegative")


@dataclass(frozen=True)
class GeneralPoint:
    """Parameter ``(beta, H, t^2)`` on a surface of any Picard rank."""

    beta: tuple
    H: tuple
    t2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(Fraction(x) for x in self.beta))
        object.__setattr__(self, "H", tuple(int(x) for x in self.H))
        object.__setattr__(self, "t2", Fraction(self.t2))
        if self.t2 < 0:
            raise ValueError("t^2 must be nonnegative")

    @classmethod
    def from_rank_one(cls, p: StabilityPoint) -> "GeneralPoint":
        return cls((p.s,), (1,), p.t2)


Point = Union[StabilityPoint, GeneralPoint]


@dataclass(frozen=True)
class ChargePair:
    A: Fraction
    B: Fraction


def _general(p: Point) -> GeneralPoint:
    return GeneralPoint.from_rank_one(p) if isinstance(p, StabilityPoint) else p


def central_charge(v: AnyVector, p: Point, L: SurfaceLattice) -> ChargePair:
    if p.t2 <= 0:
        raise PreconditionError("central charge needs an interior point (t^2 > 0)")
    if isinstance(p, StabilityPoint) and L.rank == 1:
        n, r, d, a, s = L.n, v.r, v.d, v.a, p.s
        A = -a + 2 * n * d * s - r * n * (s * s - p.t2)
        B = 2 * n * (d - r * s)
    else:
        g = _general(p)
        if len(g.beta) != L.rank or len(g.H) != L.rank:
            raise ValueError("dimension mismatch")
        form = L.form
        h2 = form(g.H, g.H)
        if h2 <= 0 or form(g.H, L.ample) <= 0:
            raise PreconditionError("H must be ample")
        # real part is <e^beta, v> + r t^2 (H^2)/2
        exp_beta = form(g.beta, v.c1) - v.a - v.r * form(g.beta, g.beta) / 2
        A = exp_beta + v.r * g.t2 * h2 / 2
        B = form(v.c1, g.H) - v.r * form(g.beta, g.H)
    A, B = Fraction(A), Fraction(B)
    if A == 0 and B == 0 and any(v.entries()):
        raise PreconditionError("charge vanishes on a nonzero class")
    return ChargePair(A, B)


def _proportional(u: AnyVector, v: AnyVector) -> bool:
    x, y = u.entries(), v.entries()
    return all(x[i] * y[j] == x[j] * y[i] for i in range(len(x)) for j in range(len(x)))


def wall_candidate_check(v: AnyVector, v1: AnyVector, L: SurfaceLattice) -> bool:
    if _proportional(v, v1):
        return False
    w = v - v1
    return (mukai_pairing(v1, w, L) > 0
            and mukai_pairing(v1, v1, L) >= 0
            and mukai_pairing(w, w, L) >= 0)


def wall_nonempty(v: AnyVector, v1: AnyVector, L: SurfaceLattice) -> bool:
    if not wall_candidate_check(v, v1, L):
        raise PreconditionError("class does not satisfy the wall conditions")
    k = mukai_pairing(v, v1, L)
    return k * k > mukai_pairing(v, v, L) * mukai_pairing(v1, v1, L)


def wall_determinant(v: AnyVector, v1: AnyVector, p: Point, L: SurfaceLattice) -> Fraction:
    """``A*B1 - A1*B``; vanishes exactly on the wall of ``v1``."""
    z, z1 = central_charge(v, p, L), central_charge(v1, p, L)
    return z.A * z1.B - z1.A * z.B


def on_wall(v: AnyVector, v1: AnyVector, p: Point, L: SurfaceLattice) -> bool:
    return wall_determinant(v, v1, p, L) == 0


# --- rank-one geometry -------------------------------------------------------

@dataclass(frozen=True)
class Line:
    s0: Fraction


@dataclass(frozen=True)
class Circle:
    center: Fraction
    radius2: Fraction


@dataclass(frozen=True)
class Empty:
    pass


WallGeometry = Union[Line, Circle, Empty]


def raw_pqr(v: AnyVector, v1: AnyVector, L: SurfaceLattice) -> tuple:
    n = L.n
    r, d, a = v.r, v.d, v.a
    r1, d1, a1 = v1.r, v1.d, v1.a
    return (n * (r * d1 - r1 * d), a * r1 - a1 * r, a1 * d - a * d1)


def normalize_pqr(pqr) -> tuple:
    """Primitive integer triple with P > 0, or P = 0 and Q > 0."""
    vals = [Fraction(x) for x in pqr]
    den = reduce(lambda x, y: x * y // gcd(x, y), (x.denominator for x in vals), 1)
    ints = [int(x * den) for x in vals]
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise PreconditionError("class is proportional to v; no wall")
    ints = [x // g for x in ints]
    lead = next(x for x in ints[:2] if x) if any(ints[:2]) else ints[2]
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def geometry_from_pqr(pqr) -> WallGeometry:
    P, Q, R = (Fraction(x) for x in pqr)
    if P == 0:
        if Q == 0:
            return Empty()
        return Line(-R / Q)
    c = -Q / (2 * P)
    rad2 = c * c - R / P
    return Circle(c, rad2) if rad2 > 0 else Empty()


def wall_pqr(v: AnyVector, v1: AnyVector, L: SurfaceLattice) -> tuple:
    return normalize_pqr(raw_pqr(v, v1, L))


def wall_geometry_rank1(v: AnyVector, v1: AnyVector, L: SurfaceLattice) -> WallGeometry:
    return geometry_from_pqr(wall_pqr(v, v1, L))


def pqr_value(pqr, s, t2) -> Fraction:
    P, Q, R = pqr
    return P * (s * s + t2) + Q * s + R


def phase_precedes(z1: ChargePair, z2: ChargePair) -> int:
    """Compare phases in (0, 1]: -1 if z1 has smaller phase, 0 if equal, 1 if larger."""
    for z in (z1, z2):
        if not (z.B > 0 or (z.B == 0 and z.A < 0)):
            raise PreconditionError("charge outside the admissible half-plane")
    if z1.B == 0 or z2.B == 0:
        return (z1.B == 0) - (z2.B == 0)
    cross = z1.A * z2.B - z2.A * z1.B
    return (cross < 0) - (cross > 0)
