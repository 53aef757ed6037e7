"""Cones in the positive cone of v^perp: boundary, isotropic classes, movable
and nef chambers, and invariants of exceptional classes (Picard rank one).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Union

from .atlas import DEFAULT_EXACT_BUDGET, Frame, adjacent_walls, pairing_ideal
from .charge import Circle, Line, PreconditionError, StabilityPoint, geometry_from_pqr
from .forms import representations
from .lattice import MukaiVector, RationalMukaiVector, SurfaceLattice, mukai_pairing
from .perp import boundary_parameters, pair3, perp_basis
from .quadext import QuadExt, rational_sqrt

DEFAULT_CLASS_BOUND = 100


@dataclass(frozen=True)
class ConeRay:
    """A ray of the closed positive cone of v^perp.

    ``cls`` holds (r, d, a) coordinates: integers for rational rays, QuadExt
    entries for the irrational boundary.  ``lam`` is the leaf parameter, the
    point where the ray's leaf meets the s-axis (None in rank zero).
    """
    cls: tuple
    kind: str  # "wall_ray" or "boundary_ray"
    lam: Optional[QuadExt] = None

    @property
    def rational(self) -> bool:
        return all(not isinstance(x, QuadExt) or x.is_rational() for x in self.cls)


def _positive_primitive(x, frame: Frame) -> tuple:
    ray = frame.positive(x)
    if all(not isinstance(c, QuadExt) or c.is_rational() for c in ray):
        ray = tuple(c.rat if isinstance(c, QuadExt) else Fraction(c) for c in ray)
        return RationalMukaiVector.of(*ray).integral_part().entries()
    return tuple(c if isinstance(c, QuadExt) else QuadExt(c) for c in ray)


# --- boundary ----------------------------------------------------------------------

@dataclass(frozen=True)
class Boundary:
    minus: ConeRay
    plus: ConeRay
    s_minus: QuadExt
    s_plus: QuadExt
    rational: bool
    lagrangian: tuple  # primitive isotropic classes spanning rational boundary rays


def boundary_rays(v: MukaiVector, L: SurfaceLattice) -> Boundary:
    """Isotropic edge rays of the positive cone, at s_minus and s_plus."""
    if v.r == 0:
        raise PreconditionError("boundary parameters need nonzero rank; twist or transform first")
    frame = Frame(v, L)
    s_minus, s_plus = boundary_parameters(v, L)
    rays = []
    for s in (s_minus, s_plus):
        cls = _positive_primitive(frame.xi(s, 0), frame)
        rays.append(ConeRay(cls, "boundary_ray", s))
    rational = frame.rational_boundary
    lag = tuple(MukaiVector.of(*r.cls) for r in rays) if rational else ()
    return Boundary(rays[0], rays[1], s_minus, s_plus, rational, lag)


def _boundary_side(frame: Frame, side: int) -> ConeRay:
    if frame.v.r == 0:
        return ConeRay(frame.boundary_rays()[side], "boundary_ray", None)
    s = (frame.s_lo, frame.s_hi)[side]
    return ConeRay(_positive_primitive(frame.xi(s, 0), frame), "boundary_ray", s)


# --- isotropic classes --------------------------------------------------------------

@dataclass(frozen=True)
class IsotropicResult:
    exists: bool
    classes: tuple
    witness: Optional[MukaiVector] = None


def isotropic_classes(v: MukaiVector, k: int, L: SurfaceLattice, bound: int) -> list:
    """Primitive isotropic w with <v, w> = k and entries at most ``bound``."""
    n = L.n
    out = []
    for r1 in range(-bound, bound + 1):
        for d1 in range(-bound, bound + 1):
            if r1 == 0:
                cands = [(0, 0, 1), (0, 0, -1)] if d1 == 0 else []
            elif (n * d1 * d1) % r1 == 0 and abs(n * d1 * d1 // r1) <= bound:
                cands = [(r1, d1, n * d1 * d1 // r1)]
            else:
                cands = []
            for c in cands:
                w = MukaiVector.of(*c)
                if w.content() == 1 and mukai_pairing(v, w, L) == k:
                    out.append(w)
    return sorted(out, key=_height)


def _height(w: MukaiVector) -> tuple:
    return (sum(map(abs, w.entries())), w.entries())


def _factorizations(n: int) -> list:
    return [(r1, n // r1) for r1 in range(1, n + 1) if n % r1 == 0]


def isotropic_witness(v: MukaiVector, k: int, L: SurfaceLattice) -> Optional[MukaiVector]:
    """Exact decision: some primitive isotropic w with <v, w> = k, or None.

    Isotropic primitive classes are +-(r1 p^2, pq, r2 q^2) with r1 r2 = n, and
    their pairing with v is +- F(p, q) for F = -a r1 p^2 + 2nd pq - r r2 q^2.
    """
    if k not in (1, 2):
        raise ValueError("exact decision is for k in {1, 2}")
    if k % pairing_ideal(v, L):
        return None
    n, r, d, a = L.n, v.r, v.d, v.a
    for r1, r2 in _factorizations(n):
        form = (-a * r1, 2 * n * d, -r * r2)
        for m in (k, -k):
            for p, q in representations(form, m):
                sgn = 1 if m > 0 else -1
                w = MukaiVector.of(sgn * r1 * p * p, sgn * p * q, sgn * r2 * q * q)
                if w.content() == 1:
                    assert mukai_pairing(v, w, L) == k and mukai_pairing(w, w, L) == 0
                    return w
    return None


def isotropic_with_pairing(v: MukaiVector, k: int, L: SurfaceLattice,
                           bound: int = DEFAULT_CLASS_BOUND) -> IsotropicResult:
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1 or 2")
    if v.content() != 1 or mukai_pairing(v, v, L) <= 0:
        raise PreconditionError("v must be primitive with positive square")
    classes = tuple(isotropic_classes(v, k, L, bound))
    if k == 0:
        ell = Fraction(mukai_pairing(v, v, L), 2)
        exists = rational_sqrt(ell * L.n) is not None
        return IsotropicResult(exists, classes, classes[0] if classes else None)
    if classes:
        return IsotropicResult(True, classes, classes[0])
    w = isotropic_witness(v, k, L)
    return IsotropicResult(w is not None, classes, w)


# --- trichotomy and birationality ----------------------------------------------------

@dataclass(frozen=True)
class Trichotomy:
    case: int
    min_pairing: int  # 1, 2, or 3 meaning "at least 3"
    certificate: str
    witness: Optional[MukaiVector] = None


def _require_large(v: MukaiVector, L: SurfaceLattice) -> int:
    if v.content() != 1:
        raise PreconditionError("v must be primitive")
    V = mukai_pairing(v, v, L)
    if V < 6:
        raise PreconditionError("<v^2> must be at least 6")
    return V


def trichotomy(v: MukaiVector, L: SurfaceLattice) -> Trichotomy:
    _require_large(v, L)
    for k, case in ((1, 3), (2, 2)):
        res = isotropic_with_pairing(v, k, L, bound=12)
        if res.exists:
            return Trichotomy(case, k, "isotropic class", res.witness)
    g = pairing_ideal(v, L)
    if g >= 3:
        return Trichotomy(1, 3, f"gcd {g} divides every pairing")
    return Trichotomy(1, 3, "no representation of 1 or 2 by the isotropic forms")


@dataclass(frozen=True)
class Birationality:
    answer: bool
    witness: Optional[tuple] = None  # (x, y) when n = 1
    isotropic: Optional[MukaiVector] = None


def hilbert_birational(v: MukaiVector, L: SurfaceLattice, search: int = 30) -> Birationality:
    """Whether some isotropic class pairs to 1 with v.

    For n = 1 this is the solvability of r x^2 + 2d xy + a y^2 = +-1, and a
    small solution is reported.
    """
    _require_large(v, L)
    if v.r <= 0:
        raise PreconditionError("rank must be positive")
    res = isotropic_with_pairing(v, 1, L, bound=12)
    if not res.exists:
        return Birationality(False)
    if L.n != 1:
        return Birationality(True, None, res.witness)
    r, d, a = v.r, v.d, v.a
    for h in range(1, search + 1):
        for x, y in _ring(h):
            if abs(r * x * x + 2 * d * x * y + a * y * y) == 1:
                return Birationality(True, (x, y), res.witness)
    w = res.witness
    # w = +-(p^2, pq, q^2) gives x = q, y = -p
    p = isqrt(abs(w.r))
    for q in (isqrt(abs(w.a)), -isqrt(abs(w.a))):
        if abs(r * q * q - 2 * d * p * q + a * p * p) == 1:
            return Birationality(True, (q, -p), w)
    raise AssertionError("isotropic witness does not give a solution")


def _ring(h: int):
    """Integer points with max(|x|, |y|) = h, in a fixed order."""
    pts = [(x, y) for x in range(h, -h - 1, -1) for y in range(h, -h - 1, -1)
           if max(abs(x), abs(y)) == h]
    return pts


# --- exceptional classes -------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalData:
    v: MukaiVector
    u: MukaiVector
    d_u: MukaiVector
    pairing: int
    L: SurfaceLattice

    def reflect(self, x):
        """Reflection of v^perp in d_u: fixes d_u^perp, negates d_u."""
        vec = x if isinstance(x, MukaiVector) else MukaiVector.of(*x)
        if mukai_pairing(vec, self.v, self.L) != 0:
            raise PreconditionError("class is not orthogonal to v")
        c = 2 * mukai_pairing(vec, self.u, self.L)
        if c % self.pairing:
            raise AssertionError("reflection is not integral")
        return vec - self.d_u.scale(c // self.pairing)


def exceptional_data(v: MukaiVector, u: MukaiVector, L: SurfaceLattice) -> ExceptionalData:
    if v.content() != 1 or u.content() != 1:
        raise PreconditionError("v and u must be primitive")
    if mukai_pairing(u, u, L) != 0:
        raise PreconditionError("u must be isotropic")
    k = mukai_pairing(v, u, L)
    if k not in (1, 2):
        raise PreconditionError("<v, u> must be 1 or 2")
    V = mukai_pairing(v, v, L)
    d_u = v - u.scale(V // k)
    assert mukai_pairing(d_u, d_u, L) == -V and mukai_pairing(d_u, v, L) == 0
    return ExceptionalData(v, u, d_u, k, L)


@dataclass(frozen=True)
class MarkmanData:
    div: int
    rho: int
    sigma: int
    rs: tuple  # sorted pair
    spe: bool
    case: Optional[str]  # "1", "2a", "2b", "2c"


def markman_classify(e: MukaiVector, v: MukaiVector, L: SurfaceLattice) -> MarkmanData:
    if e.content() != 1:
        raise PreconditionError("e must be primitive")
    if mukai_pairing(e, v, L) != 0:
        raise PreconditionError("e must lie in v^perp")
    V = mukai_pairing(v, v, L)
    if mukai_pairing(e, e, L) != -V:
        raise PreconditionError("e must have square -<v^2>")
    if V % 2 or V < 6:
        raise PreconditionError("<v^2> = 2l with l >= 3 is required")
    ell = V // 2
    div = 0
    for f in perp_basis(v, L):
        div = gcd(div, mukai_pairing(e, f, L))
    div = abs(div)
    rho, sigma = (e + v).content(), (e - v).content()
    g = gcd(rho, sigma)
    rs = tuple(sorted((rho // g, sigma // g)))
    case = None
    if div == 2 * ell and rs == (1, ell):
        case = "1"
    elif div == ell:
        if ell % 4 == 2 and ell >= 6 and rs == tuple(sorted((2, ell // 2))):
            case = "2a"
        elif ell % 2 == 1 and rs == (1, ell):
            case = "2b"
        elif ell % 2 == 0 and rs == tuple(sorted((1, ell // 2))):
            case = "2c"
    return MarkmanData(div, rho, sigma, rs, case is not None, case)


# --- movable and nef cones ------------------------------------------------------------

@dataclass(frozen=True)
class MovableSide:
    kind: str  # isotropic_pairing_1, isotropic_pairing_2, positive_cone_boundary
    ray: ConeRay
    isotropic: Optional[MukaiVector] = None


@dataclass(frozen=True)
class ConePair:
    minus: object
    plus: object


def _wall_ray(frame: Frame, pqr, ray) -> ConeRay:
    lam = None
    if frame.v.r != 0:
        geom = geometry_from_pqr(pqr)
        if isinstance(geom, Circle):
            lam = frame.leaf_parameter(StabilityPoint(geom.center, geom.radius2))
        elif isinstance(geom, Line):
            lam = frame.leaf_parameter(StabilityPoint(geom.s0, Fraction(1)))
    cls = RationalMukaiVector.of(*ray).integral_part().entries()
    return ConeRay(cls, "wall_ray", lam)


def _fi_class(v: MukaiVector, wits, L: SurfaceLattice) -> Optional[MukaiVector]:
    best = None
    for w in wits:
        if mukai_pairing(w, w, L) == 0 and mukai_pairing(v, w, L) in (1, 2) and w.content() == 1:
            if best is None or (mukai_pairing(v, w, L), _height(w)) < (mukai_pairing(v, best, L), _height(best)):
                best = w
    return best


def movable_rays(v: MukaiVector, basepoint: StabilityPoint, L: SurfaceLattice,
                 budget: int = DEFAULT_EXACT_BUDGET) -> ConePair:
    """Rays of the chamber of the isotropic-class arrangement containing the basepoint."""
    _require_large(v, L)
    frame = Frame(v, L)
    x = frame.xi(basepoint.s, basepoint.t2)
    # eta of such a wall is a multiple of d_u, whose square is -<v^2>
    sides = adjacent_walls(v, x, L, keep=lambda pqr, wits: _fi_class(v, wits, L) is not None,
                           budget=budget, max_norm=frame.V)
    out = []
    for idx, best in enumerate(sides):
        if best is None:
            out.append(MovableSide("positive_cone_boundary", _boundary_side(frame, idx)))
            continue
        pqr, wits, ray = best
        u = _fi_class(v, wits, L)
        kind = f"isotropic_pairing_{mukai_pairing(v, u, L)}"
        out.append(MovableSide(kind, _wall_ray(frame, pqr, ray), u))
    return ConePair(*out)


def nef_rays(v: MukaiVector, p: StabilityPoint, L: SurfaceLattice,
             budget: int = DEFAULT_EXACT_BUDGET) -> ConePair:
    """Edge rays of the chamber containing the polarization class of p."""
    frame = Frame(v, L)
    if p.t2 <= 0:
        raise PreconditionError("interior point required")
    sides = adjacent_walls(v, frame.xi(p.s, p.t2), L, budget=budget)
    out = []
    for idx, best in enumerate(sides):
        if best is None:
            out.append(_boundary_side(frame, idx))
        else:
            out.append(_wall_ray(frame, best[0], best[2]))
    return ConePair(*out)


def ray_order(v: MukaiVector, x: ConeRay, y: ConeRay, L: SurfaceLattice) -> int:
    """-1, 0, 1 as the ray x comes before, equals, or follows y."""
    if x.lam is not None and y.lam is not None:
        return x.lam.compare(y.lam)
    frame = Frame(v, L)
    return frame.before(x.cls, y.cls) if all(
        not isinstance(c, QuadExt) for c in x.cls + y.cls) else _quad_order(frame, x.cls, y.cls)


def _quad_order(frame: Frame, x, y) -> int:
    return frame.before(tuple(QuadExt(c) if not isinstance(c, QuadExt) else c for c in x),
                        tuple(QuadExt(c) if not isinstance(c, QuadExt) else c for c in y))
