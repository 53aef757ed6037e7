"""The orthogonal complement of a Mukai vector and the map from stability
parameters into its positive cone.

Rays of the positive cone are compared exactly through coordinates in a fixed
integral basis of ``v^perp``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .charge import GeneralPoint, PreconditionError, StabilityPoint
from .lattice import (AnyVector, MukaiVector, RationalMukaiVector, SurfaceLattice,
                      mukai_pairing)
from .quadext import QuadExt


def xi_rank_one(v: AnyVector, s, t2, n: int) -> tuple:
    """Coordinates (r, d, a) of the polarization class at (s, t^2).

    Works verbatim with QuadExt inputs and for rank-zero ``v``.
    """
    r, d, a = v.r, v.d, v.a
    q = s * s + t2
    return (-2 * n * (d - r * s), r * n * q - a, 2 * n * (d * n * q - a * s))


def xi_vector(v: AnyVector, p, L: SurfaceLattice) -> RationalMukaiVector:
    if isinstance(p, StabilityPoint) and L.rank == 1:
        r0, d0, a0 = xi_rank_one(v, p.s, p.t2, L.n)
        if v.r == 0 and v.d == 0:
            raise PreconditionError("rank-zero class with zero c1 has no positive cone")
        return RationalMukaiVector.of(r0, d0, a0)
    g = p if isinstance(p, GeneralPoint) else GeneralPoint.from_rank_one(p)
    return xi_general(v, g, L)


def xi_general(v: AnyVector, p: GeneralPoint, L: SurfaceLattice) -> RationalMukaiVector:
    form = L.form
    beta, H, t2 = p.beta, p.H, p.t2
    h2 = form(H, H)
    r, xi, a = Fraction(v.r), tuple(Fraction(x) for x in v.c1), Fraction(v.a)
    b2 = form(beta, beta)
    if r != 0:
        delta = tuple(x / r for x in xi)
        diff = tuple(x - y for x, y in zip(beta, delta))
        sq = mukai_pairing(v, v, L)
        coef = r * ((t2 * h2 - form(diff, diff)) / 2 + Fraction(sq) / (2 * r * r))
        a_beta = -(form(beta, xi) - a - r * b2 / 2)
        lin = r * form(tuple(-x for x in diff), H)
        hpart = (Fraction(0), tuple(Fraction(x) for x in H), form(delta, H))
        epart = (Fraction(1), beta, b2 / 2 - a_beta / r)
    else:
        if not any(xi):
            raise PreconditionError("rank-zero class with zero c1 has no positive cone")
        coef = form(xi, beta) - a
        lin = form(xi, H)
        hpart = (Fraction(0), tuple(Fraction(x) for x in H), form(H, beta))
        epart = (Fraction(1), beta, b2 / 2 - t2 * h2 / 2)
    return RationalMukaiVector(
        coef * hpart[0] - lin * epart[0],
        tuple(coef * x - lin * y for x, y in zip(hpart[1], epart[1])),
        coef * hpart[2] - lin * epart[2],
    )


def orientation_class(v: AnyVector, L: SurfaceLattice) -> MukaiVector:
    """Class ``(0, r*H, (H, c1))`` whose pairing orients the positive cone.

    For ``r > 0`` this is ``r`` times ``H + (H, c1/r) rho``; the same formula
    is used for ``r <= 0`` (limit convention), which keeps every polarization
    class on the positive side.
    """
    return MukaiVector(0, tuple(v.r * h for h in L.ample), L.form(L.ample, v.c1))


def pair3(x: Sequence, y: Sequence, n: int):
    """Rank-one Mukai pairing on raw coordinate triples (QuadExt friendly)."""
    return 2 * n * x[1] * y[1] - x[0] * y[2] - x[2] * y[0]


def orientation(x: Sequence, v: AnyVector, n: int):
    ref = (0, v.r, 2 * n * v.d)
    return pair3(x, ref, n)


def kernel_basis(coeffs: Sequence[int]) -> list:
    """Integral basis of {x in Z^k : sum coeffs[i] x[i] = 0}."""
    k = len(coeffs)
    cols = [[int(i == j) for i in range(k)] for j in range(k)]  # columns of U
    c = list(coeffs)
    # unimodular column operations reducing c to (g, 0, ..., 0)
    for j in range(1, k):
        while c[j] != 0:
            q = c[0] // c[j]
            c[0] -= q * c[j]
            cols[0] = [x - q * y for x, y in zip(cols[0], cols[j])]
            c[0], c[j] = c[j], c[0]
            cols[0], cols[j] = cols[j], cols[0]
    if c[0] == 0:
        return cols
    return cols[1:]


def perp_basis(v: MukaiVector, L: SurfaceLattice) -> list:
    """Integral basis of the saturated lattice v^perp, as MukaiVectors."""
    k = L.rank
    # <x, v> = x.c1 G v.c1 - x.r v.a - x.a v.r
    lin = [-v.a] + [sum(L.gram[i][j] * v.c1[j] for j in range(k)) for i in range(k)] + [-v.r]
    out = []
    for col in kernel_basis(lin):
        out.append(MukaiVector(col[0], tuple(col[1:-1]), col[-1]))
    return _lll2(out, L) if len(out) == 2 else out


def _lll2(basis, L):
    # a light size reduction keeps coordinates small; correctness does not depend on it
    e1, e2 = basis
    for _ in range(64):
        n1 = sum(x * x for x in e1.entries())
        if n1 == 0:
            break
        dot = sum(x * y for x, y in zip(e1.entries(), e2.entries()))
        q = (2 * dot + n1) // (2 * n1)
        if q:
            e2 = e2 - e1.scale(q)
        if sum(x * x for x in e2.entries()) < n1:
            e1, e2 = e2, e1
        elif not q:
            break
    return [e1, e2]


def coords(x: Sequence, basis: list, n: int) -> tuple:
    """Coordinates of a vector of v^perp in the given two-element basis."""
    e1, e2 = basis
    g11 = pair3(e1.entries(), e1.entries(), n)
    g12 = pair3(e1.entries(), e2.entries(), n)
    g22 = pair3(e2.entries(), e2.entries(), n)
    p1 = pair3(x, e1.entries(), n)
    p2 = pair3(x, e2.entries(), n)
    det = g11 * g22 - g12 * g12
    return ((p1 * g22 - p2 * g12) / det, (p2 * g11 - p1 * g12) / det)


def cross(x: tuple, y: tuple):
    return x[0] * y[1] - x[1] * y[0]


def boundary_parameters(v: AnyVector, L: SurfaceLattice) -> tuple:
    """(s_minus, s_plus) = d/r -+ (1/r) sqrt(l/n), ordered as written."""
    if v.r == 0:
        raise PreconditionError("boundary parameters need nonzero rank")
    n = L.n
    sq = mukai_pairing(v, v, L)
    if sq <= 0:
        raise PreconditionError("v must have positive square")
    ell = Fraction(sq, 2)
    root = QuadExt.sqrt(ell / n)
    base = QuadExt(Fraction(v.d, v.r))
    return (base - root * Fraction(1, v.r), base + root * Fraction(1, v.r))


def approx(q: QuadExt, bits: int) -> Fraction:
    """Rational within 2**-bits of q (floor of scaled value)."""
    scale = 1 << bits
    m = q.radicand
    irr_num = q.irr.numerator
    den = q.irr.denominator
    # q.irr * sqrt(m) * scale = irr_num * sqrt(m * scale^2) / den
    root = isqrt(m * scale * scale)
    irr_part = Fraction(irr_num * root, den)
    if irr_num < 0:
        irr_part = Fraction(irr_num * (root + 1), den)
    return q.rat + irr_part / scale
