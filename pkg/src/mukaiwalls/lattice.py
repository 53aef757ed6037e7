"""Exact arithmetic in the algebraic Mukai lattice of an abelian surface.

A class is stored as ``(r, c1, a)`` where ``c1`` holds coordinates of the
Neron-Severi component in a fixed basis.  On a Picard-rank-one surface the
basis is the ample generator ``H`` with ``(H^2) = 2n`` and ``c1 = (d,)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence, Union

Number = Union[int, Fraction]


def _as_tuple(xs) -> tuple:
    return tuple(xs)


@dataclass(frozen=True)
class SurfaceLattice:
    """Neron-Severi data: Gram matrix of the intersection form and an ample class."""

    gram: tuple
    ample: tuple

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        ample = tuple(int(x) for x in self.ample)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "ample", ample)
        k = len(gram)
        if k == 0 or any(len(row) != k for row in gram):
            raise ValueError("gram must be a nonempty square matrix")
        if len(ample) != k:
            raise ValueError("ample class has the wrong length")
        for i in range(k):
            if gram[i][i] % 2:
                raise ValueError("intersection form must be even")
            for j in range(k):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("gram must be symmetric")
        if self.form(ample, ample) <= 0:
            raise ValueError("ample class must have positive square")
        if _positive_inertia(gram) != 1:
            raise ValueError("gram must have signature (1, rank-1)")

    @classmethod
    def rank_one(cls, n: int) -> "SurfaceLattice":
        if n < 1:
            raise ValueError("n must be at least 1")
        return cls(gram=((2 * n,),), ample=(1,))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def n(self) -> int:
        """Half the self-intersection of the ample class (rank one only)."""
        if self.rank != 1:
            raise ValueError("n is defined for Picard rank one only")
        return self.gram[0][0] // 2

    def form(self, x: Sequence[Number], y: Sequence[Number]) -> Number:
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(len(g)) for j in range(len(g)) if g[i][j])


def _charpoly(m) -> list:
    """Coefficients of det(xI - m), leading first (Faddeev-LeVerrier)."""
    k = len(m)
    coeffs = [Fraction(1)]
    acc = [[Fraction(0)] * k for _ in range(k)]
    for step in range(1, k + 1):
        for i in range(k):
            acc[i][i] += coeffs[-1]
        acc = [[sum(m[i][t] * acc[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
        coeffs.append(-sum(acc[i][i] for i in range(k)) / step)
    return coeffs


def _positive_inertia(gram) -> int:
    # a symmetric matrix has a real-rooted characteristic polynomial, so
    # Descartes' rule of signs counts its positive eigenvalues exactly
    signs = [c for c in _charpoly(gram) if c != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if (x > 0) != (y > 0))


@dataclass(frozen=True)
class MukaiVector:
    """Integral Mukai vector ``(r, c1, a)``."""

    r: int
    c1: tuple
    a: int

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(self.c1))
        for x in (self.r, self.a, *self.c1):
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError(f"integral entry expected, got {x!r}")

    @classmethod
    def of(cls, r: int, d: int, a: int) -> "MukaiVector":
        """Rank-one shorthand ``(r, dH, a)``."""
        return cls(r, (d,), a)

    @property
    def d(self) -> int:
        if len(self.c1) != 1:
            raise ValueError("d is defined for Picard rank one only")
        return self.c1[0]

    def entries(self) -> tuple:
        return (self.r, *self.c1, self.a)

    def __add__(self, other):
        return _combine(self, other, 1, 1)

    def __sub__(self, other):
        return _combine(self, other, 1, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k):
        return _make(k * self.r, tuple(k * x for x in self.c1), k * self.a)

    def content(self) -> int:
        return reduce(gcd, self.entries(), 0)

    def primitive_part(self) -> "MukaiVector":
        g = self.content()
        if g == 0:
            raise ValueError("zero vector has no primitive part")
        return MukaiVector(self.r // g, tuple(x // g for x in self.c1), self.a // g)

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.entries()) + ")"


@dataclass(frozen=True)
class RationalMukaiVector:
    """Mukai vector with exact rational entries."""

    r: Fraction
    c1: tuple
    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "c1", tuple(Fraction(x) for x in self.c1))
        object.__setattr__(self, "a", Fraction(self.a))

    @classmethod
    def of(cls, r, d, a) -> "RationalMukaiVector":
        return cls(r, (d,), a)

    @property
    def d(self) -> Fraction:
        if len(self.c1) != 1:
            raise ValueError("d is defined for Picard rank one only")
        return self.c1[0]

    def entries(self) -> tuple:
        return (self.r, *self.c1, self.a)

    def __add__(self, other):
        return _combine(self, other, 1, 1)

    def __sub__(self, other):
        return _combine(self, other, 1, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k):
        return _make(k * self.r, tuple(k * x for x in self.c1), k * self.a)

    def integral_part(self) -> MukaiVector:
        """Primitive integral vector on the same ray (positive multiple)."""
        den = 1
        for x in self.entries():
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in self.entries()]
        g = reduce(gcd, ints, 0)
        if g == 0:
            raise ValueError("zero vector has no primitive part")
        ints = [x // g for x in ints]
        return MukaiVector(ints[0], tuple(ints[1:-1]), ints[-1])


AnyVector = Union[MukaiVector, RationalMukaiVector]


def _make(r, c1, a):
    if all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for x in (r, a, *c1)):
        return MukaiVector(int(r), tuple(int(x) for x in c1), int(a))
    return RationalMukaiVector(r, c1, a)


def _combine(u, v, cu, cv):
    if len(u.c1) != len(v.c1):
        raise ValueError("dimension mismatch")
    return _make(cu * u.r + cv * v.r,
                 tuple(cu * x + cv * y for x, y in zip(u.c1, v.c1)),
                 cu * u.a + cv * v.a)


def as_rational(v: AnyVector) -> RationalMukaiVector:
    return RationalMukaiVector(v.r, v.c1, v.a)


def mukai_pairing(u: AnyVector, v: AnyVector, L: SurfaceLattice) -> Number:
    if len(u.c1) != L.rank or len(v.c1) != L.rank:
        raise ValueError("dimension mismatch between vector and lattice")
    return L.form(u.c1, v.c1) - u.r * v.a - u.a * v.r


@dataclass(frozen=True)
class Predicates:
    square: int
    isotropic: bool
    primitive: bool
    positive: bool


def vector_predicates(v: MukaiVector, L: SurfaceLattice) -> Predicates:
    if not any(v.entries()):
        return Predicates(0, False, False, False)
    sq = mukai_pairing(v, v, L)
    return Predicates(sq, sq == 0, v.content() == 1, is_positive(v, L))


def is_positive(v: AnyVector, L: SurfaceLattice) -> bool:
    # effectivity of c1 is tested numerically: (c1^2) >= 0 and (c1, H) > 0
    if v.r > 0:
        return True
    if v.r < 0:
        return False
    if any(v.c1):
        return L.form(v.c1, v.c1) >= 0 and L.form(v.c1, L.ample) > 0
    return v.a > 0


def twist_by_exp(v: AnyVector, k: int, L: SurfaceLattice) -> AnyVector:
    """Multiply by ``e^{kH}`` on a rank-one surface."""
    n = L.n
    r, d, a = v.r, v.d, v.a
    return _make(r, (d + r * k,), a + 2 * n * d * k + n * k * k * r)


def mukai_gram_rank_one(n: int) -> list:
    """Gram matrix of the full Mukai lattice in the basis (1,0,0), (0,H,0), (0,0,1)."""
    return [[0, 0, -1], [0, 2 * n, 0], [-1, 0, 0]]
