"""Elements x + y*sqrt(m) of a real quadratic field, compared exactly."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import isqrt
import re


def squarefree_split(m: int) -> tuple[int, int]:
    """Return (k, m0) with m = k^2 * m0 and m0 squarefree."""
    if m < 0:
        raise ValueError("radicand must be nonnegative")
    if m == 0:
        return 0, 0
    k, m0, p = 1, 1, 2
    rest = m
    while p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            m0 *= p
        p += 1 if p == 2 else 2
    return k, m0 * rest


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def sign_of(x: Fraction, y: Fraction, m: int) -> int:
    """Sign of x + y*sqrt(m) for m >= 0."""
    sx = (x > 0) - (x < 0)
    sy = (y > 0) - (y < 0) if m else 0
    if sy == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy
    lhs, rhs = x * x, y * y * m
    if lhs == rhs:
        return 0
    return sx if lhs > rhs else sy


@total_ordering
@dataclass(frozen=True)
class QuadExt:
    rat: Fraction
    irr: Fraction = Fraction(0)
    radicand: int = 0

    def __post_init__(self):
        rat, irr, m = Fraction(self.rat), Fraction(self.irr), int(self.radicand)
        k, m0 = squarefree_split(m)
        irr *= k
        if m0 == 1:
            rat, irr, m0 = rat + irr, Fraction(0), 0
        if irr == 0:
            m0 = 0
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "irr", irr)
        object.__setattr__(self, "radicand", m0)

    @classmethod
    def sqrt(cls, q) -> "QuadExt":
        """Square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("negative radicand")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(1, q.denominator), q.numerator * q.denominator)

    def _lift(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.radicand and self.radicand and other.radicand != self.radicand:
                raise ValueError("mixed radicands")
            return other
        return QuadExt(Fraction(other))

    def _m(self, other: "QuadExt") -> int:
        return self.radicand or other.radicand

    def __add__(self, other):
        o = self._lift(other)
        return QuadExt(self.rat + o.rat, self.irr + o.irr, self._m(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.rat, -self.irr, self.radicand)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        m = self._m(o)
        return QuadExt(self.rat * o.rat + self.irr * o.irr * m,
                       self.rat * o.irr + self.irr * o.rat, m)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.rat, -self.irr, self.radicand)

    def norm(self) -> Fraction:
        return self.rat * self.rat - self.irr * self.irr * self.radicand

    def __truediv__(self, other):
        o = self._lift(other)
        nrm = o.norm()
        if nrm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        q = self * o.conjugate()
        return QuadExt(q.rat / nrm, q.irr / nrm, q.radicand)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def sign(self) -> int:
        return sign_of(self.rat, self.irr, self.radicand)

    def is_rational(self) -> bool:
        return self.irr == 0

    def compare(self, other) -> int:
        """Sign of self - other; the radicands may differ."""
        o = other if isinstance(other, QuadExt) else QuadExt(Fraction(other))
        if not (self.radicand and o.radicand and self.radicand != o.radicand):
            return (self - o).sign()
        # (x + y sqrt(m)) - z sqrt(k): compare squares when the parts disagree in sign
        x, y, m = self.rat - o.rat, self.irr, self.radicand
        z = -o.irr
        su, sw = sign_of(x, y, m), (z > 0) - (z < 0)
        if su == 0 or su == sw:
            return sw if su == 0 else su
        t = sign_of(x * x + y * y * m - z * z * o.radicand, 2 * x * y, m)
        return su if t > 0 else (sw if t < 0 else 0)

    def __eq__(self, other):
        if not isinstance(other, (QuadExt, int, Fraction)):
            return NotImplemented
        return self.compare(other) == 0

    def __hash__(self):
        return hash((self.rat, self.irr, self.radicand))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __float__(self):
        return float(self.rat) + float(self.irr) * self.radicand ** 0.5

    def __str__(self):
        if self.irr == 0:
            return fraction_str(self.rat)
        sign = "-" if self.irr < 0 else "+"
        return f"{fraction_str(self.rat)} {sign} {fraction_str(abs(self.irr))}*sqrt({self.radicand})"

    @classmethod
    def parse(cls, text: str) -> "QuadExt":
        m = re.fullmatch(r"\s*(-?[\d/]+)\s*([+-])\s*(-?[\d/]+)\*sqrt\((\d+)\)\s*", text)
        if m is None:
            return cls(Fraction(text.strip()))
        irr = Fraction(m.group(3)) * (-1 if m.group(2) == "-" else 1)
        return cls(Fraction(m.group(1)), irr, int(m.group(4)))


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Fraction(q)
    if q < 0:
        return None
    p, d = q.numerator, q.denominator
    sp, sd = isqrt(p), isqrt(d)
    if sp * sp == p and sd * sd == d:
        return Fraction(sp, sd)
    return None
