"""Integral binary quadratic forms a x^2 + b xy + c y^2 and their representations.

Forms are plain triples.  For a non-square discriminant, equivalence is decided
by walking the cycle of reduced forms, keeping track of the transforming matrix
so that representations can be read off.  Square discriminants factor over the
rationals and are handled by divisor enumeration.
"""
from __future__ import annotations

from math import gcd, isqrt
from typing import Iterator

Form = tuple  # (a, b, c)
Matrix = tuple  # ((p, q), (r, s)) acting on column vectors

IDENTITY = ((1, 0), (0, 1))


def discriminant(f: Form) -> int:
    a, b, c = f
    return b * b - 4 * a * c


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def evaluate(f: Form, x: int, y: int) -> int:
    a, b, c = f
    return a * x * x + b * x * y + c * y * y


def apply(f: Form, M: Matrix) -> Form:
    """The form (x, y) -> f(M (x, y))."""
    (al, be), (ga, de) = M
    a, b, c = f
    return (evaluate(f, al, ga),
            2 * a * al * be + b * (al * de + be * ga) + 2 * c * ga * de,
            evaluate(f, be, de))


def matmul(M: Matrix, N: Matrix) -> Matrix:
    (a, b), (c, d) = M
    (e, f), (g, h) = N
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def inverse(M: Matrix) -> Matrix:
    (a, b), (c, d) = M
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return ((d * det, -b * det), (-c * det, a * det))


def is_reduced(f: Form) -> bool:
    """|sqrt(D) - 2|a|| < b < sqrt(D), for non-square D."""
    a, b, _ = f
    D = discriminant(f)
    if b <= 0 or b * b >= D:
        return False
    a2 = 2 * abs(a)
    upper = a2 - b < 0 or (a2 - b) ** 2 < D
    return upper and D < (a2 + b) ** 2


def rho(f: Form) -> tuple:
    """One reduction step; returns (new form, step matrix)."""
    a, b, c = f
    D = discriminant(f)
    root = isqrt(D)
    m = 2 * abs(c)
    if c * c > D:
        r = (-b) % m
        if r > abs(c):
            r -= m
    else:
        lo = root - m + 1
        r = lo + ((-b - lo) % m)
    t = (r + b) // (2 * c)
    S = ((0, -1), (1, t))
    return apply(f, S), S


def reduce_form(f: Form) -> tuple:
    """(g, T) with g reduced and f o T = g."""
    if is_square(discriminant(f)):
        raise ValueError("reduction needs a non-square discriminant")
    T = IDENTITY
    for _ in range(10 ** 6):
        if is_reduced(f):
            return f, T
        f, S = rho(f)
        T = matmul(T, S)
    raise AssertionError("reduction did not terminate")


def cycle(f: Form) -> list:
    """The cycle of a reduced form as [(g, T)] with f o T = g, starting at f."""
    out = [(f, IDENTITY)]
    g, T = f, IDENTITY
    while True:
        g, S = rho(g)
        T = matmul(T, S)
        if g == f:
            return out
        out.append((g, T))


def proper_equivalence(f: Form, g: Form):
    """A matrix T of determinant 1 with f o T = g, or None."""
    if discriminant(f) != discriminant(g):
        return None
    fr, Tf = reduce_form(f)
    gr, Tg = reduce_form(g)
    for h, C in cycle(fr):
        if h == gr:
            return matmul(matmul(Tf, C), inverse(Tg))
    return None


def representations(f: Form, m: int) -> Iterator[tuple]:
    """Proper representations (p, q) of m != 0 by f.

    For a non-square discriminant one representative per orbit of the proper
    automorphism group is produced (every proper representation is an
    automorph image of one of them).  For a square discriminant the set is
    finite and all of it is produced.
    """
    if m == 0:
        raise ValueError("m must be nonzero")
    D = discriminant(f)
    if is_square(D):
        yield from _square_representations(f, m)
        return
    mod = 4 * abs(m)
    for b in range(2 * abs(m)):
        if (b * b - D) % mod:
            continue
        target = (m, b, (b * b - D) // (4 * m))
        T = proper_equivalence(f, target)
        if T is not None:
            p, q = T[0][0], T[1][0]
            assert evaluate(f, p, q) == m
            yield (p, q)


def _divisors(n: int) -> list:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    out = set(small) | {n // d for d in small}
    return sorted(out) + [-d for d in sorted(out)]


def _square_representations(f: Form, m: int) -> Iterator[tuple]:
    a, b, c = f
    e = isqrt(discriminant(f))
    seen = set()
    if a == 0:
        # f = y (b x + c y); b != 0 since the discriminant is b^2 > 0 here
        for q in _divisors(m):
            num = m // q - c * q
            if num % b == 0:
                seen.add((num // b, q))
    else:
        # 4 a f = (2 a x + (b - e) y)(2 a x + (b + e) y)
        N = 4 * a * m
        for X in _divisors(N):
            Y = N // X
            if e == 0 or (Y - X) % (2 * e):
                continue
            q = (Y - X) // (2 * e)
            num = X - (b - e) * q
            if num % (2 * a) == 0:
                seen.add((num // (2 * a), q))
    for p, q in sorted(seen):
        if gcd(p, q) == 1 and evaluate(f, p, q) == m:
            yield (p, q)
