"""Symmetric-matrix model of the rank-one Mukai lattice and its isometries.

A class ``(r, dH, a)`` on a surface with ``(H^2) = 2n`` is identified with
the symmetric matrix ``((r, d*sqrt(n)), (d*sqrt(n), a))``.  The group acting
on it consists of real matrices ``((a*sqrt(r), b*sqrt(s)), (c*sqrt(s), d*sqrt(r)))``
with ``r*s = n`` and ``a*d*r - b*c*s = +-1``, acting on the right by
``M . g = g^T M g``.  Every square root cancels, so all arithmetic is integral.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional

from .charge import PreconditionError, StabilityPoint
from .lattice import MukaiVector, SurfaceLattice, mukai_pairing
from .quadext import QuadExt, squarefree_split


@dataclass(frozen=True)
class Sym2Matrix:
    x: int
    y: int
    z: int

    @classmethod
    def from_vector(cls, v: MukaiVector) -> "Sym2Matrix":
        return cls(v.r, v.d, v.a)

    def to_vector(self) -> MukaiVector:
        return MukaiVector.of(self.x, self.y, self.z)

    def bform(self, other: "Sym2Matrix", n: int) -> int:
        return 2 * n * self.y * other.y - (self.x * other.z + self.z * other.x)


def _divisors(n: int) -> list:
    small = [k for k in range(1, isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def _term(coef: int, radicand: int) -> tuple:
    """coef*sqrt(radicand) as (c, m) with m squarefree."""
    k, m = squarefree_split(radicand)
    return (coef * k, m) if coef and m else (0, 1)


def _add_terms(*terms) -> tuple:
    total, m = 0, 1
    for c, mm in terms:
        if c == 0:
            continue
        if total and mm != m:
            raise ValueError("entry is not a single radical")
        total, m = total + c, mm
    return (total, m) if total else (0, 1)


def _coef_over(entry: tuple, radicand: int) -> Optional[int]:
    """Integer x with entry == x*sqrt(radicand), if any."""
    c, m = entry
    if c == 0:
        return 0
    k, m0 = squarefree_split(radicand)
    if m0 != m or c % k:
        return None
    return c // k


@dataclass(frozen=True)
class GHat:
    """Element ((a*sqrt(r), b*sqrt(s)), (c*sqrt(s), d*sqrt(r))) modulo sign."""

    a: int
    b: int
    c: int
    d: int
    r: int
    s: int

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise ValueError("split must be positive")
        if self.det() not in (1, -1):
            raise ValueError("determinant must be +-1")

    @property
    def n(self) -> int:
        return self.r * self.s

    def det(self) -> int:
        return self.a * self.d * self.r - self.b * self.c * self.s

    @property
    def epsilon(self) -> int:
        return self.det()

    def entries(self) -> tuple:
        """Matrix entries as (coef, squarefree radicand) pairs."""
        return (_term(self.a, self.r), _term(self.b, self.s),
                _term(self.c, self.s), _term(self.d, self.r))

    @classmethod
    def from_entries(cls, ents, n: int) -> "GHat":
        for r in _divisors(n):
            s = n // r
            coefs = [_coef_over(ents[0], r), _coef_over(ents[1], s),
                     _coef_over(ents[2], s), _coef_over(ents[3], r)]
            if None in coefs:
                continue
            a, b, c, d = coefs
            if a * d * r - b * c * s in (1, -1):
                return cls(a, b, c, d, r, s).canonical()
        raise ValueError("matrix is not of the required shape")

    @classmethod
    def identity(cls, n: int) -> "GHat":
        return cls(1, 0, 0, 1, 1, n)

    @classmethod
    def integer(cls, m, n: int = 1) -> "GHat":
        """Element given by an integer matrix when the split is (1, n)."""
        (a, b), (c, d) = m
        return cls(a, b, c, d, 1, n).canonical()

    def canonical(self) -> "GHat":
        # smallest admissible r, then first nonzero entry positive
        ents = self.entries()
        for r in _divisors(self.n):
            s = self.n // r
            coefs = [_coef_over(ents[0], r), _coef_over(ents[1], s),
                     _coef_over(ents[2], s), _coef_over(ents[3], r)]
            if None not in coefs:
                break
        a, b, c, d = coefs
        lead = next(x for x in (a, b, c, d) if x)
        if lead < 0:
            a, b, c, d = -a, -b, -c, -d
        return GHat(a, b, c, d, r, s)

    def __eq__(self, other):
        if not isinstance(other, GHat):
            return NotImplemented
        x, y = self.canonical(), other.canonical()
        return (x.a, x.b, x.c, x.d, x.r, x.s) == (y.a, y.b, y.c, y.d, y.r, y.s)

    def __hash__(self):
        x = self.canonical()
        return hash((x.a, x.b, x.c, x.d, x.r, x.s))

    def matrix_str(self) -> str:
        def ent(c, rad):
            if c == 0 or rad == 1:
                return str(c)
            return f"{c}*sqrt({rad})"
        return (f"(({ent(self.a, self.r)},{ent(self.b, self.s)}),"
                f"({ent(self.c, self.s)},{ent(self.d, self.r)}))")

    def is_integer_matrix(self) -> bool:
        return all(m == 1 or c == 0 for c, m in self.entries())


def ghat_compose(g1: GHat, g2: GHat) -> GHat:
    """Matrix product g1*g2."""
    if g1.n != g2.n:
        raise ValueError("elements act on different lattices")
    a1, b1, c1, d1, r1, s1 = g1.a, g1.b, g1.c, g1.d, g1.r, g1.s
    a2, b2, c2, d2, r2, s2 = g2.a, g2.b, g2.c, g2.d, g2.r, g2.s
    ents = (
        _add_terms(_term(a1 * a2, r1 * r2), _term(b1 * c2, s1 * s2)),
        _add_terms(_term(a1 * b2, r1 * s2), _term(b1 * d2, s1 * r2)),
        _add_terms(_term(c1 * a2, s1 * r2), _term(d1 * c2, r1 * s2)),
        _add_terms(_term(c1 * b2, s1 * s2), _term(d1 * d2, r1 * r2)),
    )
    return GHat.from_entries(ents, g1.n)


def ghat_inverse(g: GHat) -> GHat:
    e = g.det()
    return GHat(e * g.d, -e * g.b, -e * g.c, e * g.a, g.r, g.s).canonical()


def ghat_power(g: GHat, k: int) -> GHat:
    base = g if k >= 0 else ghat_inverse(g)
    out = GHat.identity(g.n)
    for _ in range(abs(k)):
        out = ghat_compose(out, base)
    return out


def dualize_compose(g: GHat) -> GHat:
    """Left multiplication by diag(1, -1)."""
    return GHat(g.a, g.b, -g.c, -g.d, g.r, g.s).canonical()


def act_on_mukai(v: MukaiVector, g: GHat, L: SurfaceLattice) -> MukaiVector:
    """Right action v . g = g^T iota(v) g."""
    n = L.n
    if g.n != n:
        raise ValueError("element acts on a different lattice")
    a, b, c, d, r, s = g.a, g.b, g.c, g.d, g.r, g.s
    x, y, z = v.r, v.d, v.a
    return MukaiVector.of(
        a * a * r * x + 2 * a * c * n * y + c * c * s * z,
        a * b * x + (a * d * r + b * c * s) * y + c * d * z,
        b * b * s * x + 2 * b * d * n * y + d * d * r * z,
    )


# --- Pell equations -----------------------------------------------------------

@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    sign: int


def sqrt_cf_period(D: int) -> list:
    """Partial quotients a0; a1..ap of the periodic continued fraction of sqrt(D)."""
    a0 = isqrt(D)
    if a0 * a0 == D:
        return [a0]
    m, q, a = 0, 1, a0
    out = [a0]
    while a != 2 * a0:
        m = q * a - m
        q = (D - m * m) // q
        a = (a0 + m) // q
        out.append(a)
    return out


def pell_fundamental(D: int, sign: int = 1) -> Optional[PellSolution]:
    """Fundamental solution of x^2 - D y^2 = sign, or None."""
    if D <= 0:
        raise ValueError("D must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    cf = sqrt_cf_period(D)
    if len(cf) == 1:
        return None
    period = len(cf) - 1
    if sign == -1 and period % 2 == 0:
        return None
    steps = period if (period % 2 == 1) == (sign == -1) else 2 * period
    h0, h1, k0, k1 = 1, cf[0], 0, 1
    for i in range(1, steps):
        ai = cf[1 + (i - 1) % period]
        h0, h1 = h1, ai * h1 + h0
        k0, k1 = k1, ai * k1 + k0
    assert h1 * h1 - D * k1 * k1 == sign
    return PellSolution(h1, k1, sign)


def pell_brute(D: int, sign: int = 1, limit: int = 10 ** 6) -> Optional[PellSolution]:
    """Ascending-y search; reference implementation."""
    r = isqrt(D)
    if r * r == D:
        return None
    for y in range(1, limit):
        x2 = D * y * y + sign
        x = isqrt(x2)
        if x * x == x2 and x > 0:
            return PellSolution(x, y, sign)
    return None


# --- stabilizers ----------------------------------------------------------------

FINITE = "finite"


def stabilizer_generator(v: MukaiVector, L: SurfaceLattice):
    """Infinite-order element fixing v, or FINITE when n*l is a square."""
    n = L.n
    if v.content() != 1:
        raise PreconditionError("v must be primitive")
    sq = mukai_pairing(v, v, L)
    if sq <= 0:
        raise PreconditionError("v must have positive square")
    ell = sq // 2
    sol = pell_fundamental(n * ell, 1)
    if sol is None:
        return FINITE
    p, q = sol.x, sol.y
    r, d, a = v.r, v.d, v.a
    g = GHat(p - d * n * q, -a * q, r * q, p + d * n * q, 1, n).canonical()
    assert act_on_mukai(v, g, L) == v
    return g


@dataclass(frozen=True)
class StabMembership:
    status: str  # "fixes_v", "fixes_neg_v" or "no"
    in_star: bool


def in_stab(g: GHat, v: MukaiVector, L: SurfaceLattice) -> StabMembership:
    w = act_on_mukai(v, g, L)
    if w == v:
        status = "fixes_v"
    elif w == -v:
        status = "fixes_neg_v"
    else:
        status = "no"
    # upper-right entry b*sqrt(s) must lie in sqrt(n)*Z, i.e. b/sqrt(r) integral
    k = isqrt(g.r)
    star = (status == "fixes_v" and g.det() == 1 and k * k == g.r and g.b % k == 0)
    return StabMembership(status, star)


# --- action on the upper half-plane --------------------------------------------

def mobius_coefficients(g: GHat) -> tuple:
    """(alpha, beta, gamma, delta) with z -> (alpha z + beta)/(gamma z + delta)."""
    return (g.d * g.r, g.b, g.r * g.c * g.s, g.r * g.a)


def halfplane_action(g: GHat, p: StabilityPoint) -> StabilityPoint:
    if p.t2 <= 0:
        raise PreconditionError("interior point required")
    al, be, ga, de = mobius_coefficients(g)
    s, t2 = p.s, p.t2
    den = (ga * s + de) ** 2 + ga * ga * t2
    if den == 0:
        raise PreconditionError("action degenerates at this point")
    s_new = ((al * s + be) * (ga * s + de) + al * ga * t2) / den
    t2_new = Fraction((al * de - be * ga) ** 2) * t2 / (den * den)
    return StabilityPoint(s_new, t2_new)


def halfplane_fixed_points(g: GHat) -> list:
    """Real fixed points of the induced map on the boundary line, as QuadExt."""
    al, be, ga, de = mobius_coefficients(g)
    # ga z^2 + (de - al) z - be = 0
    if ga == 0:
        if de == al:
            return []
        return [QuadExt(Fraction(be, de - al))]
    disc = (de - al) ** 2 + 4 * ga * be
    if disc < 0:
        return []
    root = QuadExt.sqrt(disc)
    pts = [(root * s - (de - al)) / (2 * ga) for s in (-1, 1)]
    return sorted(set(pts))
