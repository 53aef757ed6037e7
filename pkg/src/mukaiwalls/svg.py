"""SVG pictures of walls in the (s, t) half-plane.

Geometry stays exact until the last step, where every coordinate is rounded to
six decimal places, so identical inputs give identical bytes.
"""
from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .atlas import Codim0, Codim1, Wall, Window
from .charge import Circle, Line
from .quadext import QuadExt

_CTX = Context(prec=50, rounding=ROUND_HALF_EVEN)
_Q = Decimal("0.000001")

WIDTH, HEIGHT, MARGIN, LEGEND = 640, 400, 40, 220


def dec(x) -> Decimal:
    """Exact value (Fraction, int, QuadExt, Decimal) as a 6-place decimal."""
    if isinstance(x, QuadExt):
        root = _CTX.sqrt(Decimal(x.radicand)) if x.radicand else Decimal(0)
        val = _CTX.add(dec_raw(x.rat), _CTX.multiply(dec_raw(x.irr), root))
    elif isinstance(x, Decimal):
        val = x
    else:
        val = dec_raw(Fraction(x))
    return val.quantize(_Q, context=_CTX)


def dec_raw(q: Fraction) -> Decimal:
    q = Fraction(q)
    return _CTX.divide(Decimal(q.numerator), Decimal(q.denominator))


def fmt(x) -> str:
    s = format(dec(x), "f")
    return "0.000000" if s == "-0.000000" else s


def codim_tag(codim) -> str:
    if isinstance(codim, Codim0):
        return "codim 0"
    if isinstance(codim, Codim1):
        return "codim 1"
    return "higher" if codim is not None else "unclassified"


class _Frame:
    def __init__(self, s_min: Fraction, s_max: Fraction, t_max: Fraction):
        self.s_min, self.t_max = s_min, t_max
        self.sx = Fraction(WIDTH - 2 * MARGIN) / (s_max - s_min)
        self.sy = Fraction(HEIGHT - 2 * MARGIN) / t_max

    def x(self, s) -> Fraction:
        return MARGIN + (s - self.s_min) * self.sx

    def y(self, t) -> Fraction:
        return HEIGHT - MARGIN - t * self.sy


def render(walls: Sequence[Wall], win: Window, t_lo: Fraction, t_hi: Fraction,
           marks: Sequence[tuple] = (), title: str = "") -> str:
    """SVG document with one <path> per wall.

    ``marks`` are (label, value) pairs drawn as ticks on the s-axis; values may
    be Fractions or QuadExt.
    """
    pts = [win.s_lo, win.s_hi] + [Fraction(dec(v)) for _, v in marks]
    span = max(pts) - min(pts)
    s_min, s_max = min(pts) - span / 10, max(pts) + span / 10
    t_max = t_hi * Fraction(11, 10)
    fr = _Frame(s_min, s_max, t_max)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH + LEGEND}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH + LEGEND} {HEIGHT}">',
        f"<title>{escape(title)}</title>",
        "<defs>",
        f'<clipPath id="plot"><rect x="{fmt(MARGIN)}" y="{fmt(MARGIN)}" '
        f'width="{fmt(WIDTH - 2 * MARGIN)}" height="{fmt(HEIGHT - 2 * MARGIN)}"/></clipPath>',
        "</defs>",
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    # shaded window
    out.append(f'<rect class="window" x="{fmt(fr.x(win.s_lo))}" y="{fmt(fr.y(t_hi))}" '
               f'width="{fmt(fr.x(win.s_hi) - fr.x(win.s_lo))}" '
               f'height="{fmt(fr.y(t_lo) - fr.y(t_hi))}" fill="#eef2ff" stroke="none"/>')
    # axes
    out.append(f'<line class="axis" x1="{fmt(MARGIN)}" y1="{fmt(fr.y(0))}" '
               f'x2="{fmt(WIDTH - MARGIN)}" y2="{fmt(fr.y(0))}" stroke="black"/>')
    if s_min <= 0 <= s_max:
        out.append(f'<line class="axis" x1="{fmt(fr.x(0))}" y1="{fmt(fr.y(0))}" '
                   f'x2="{fmt(fr.x(0))}" y2="{fmt(MARGIN)}" stroke="black"/>')
    out.append(f'<text x="{fmt(WIDTH - MARGIN)}" y="{fmt(fr.y(0) + 16)}" font-size="12">s</text>')
    out.append(f'<text x="{fmt(MARGIN - 14)}" y="{fmt(MARGIN)}" font-size="12">t</text>')
    for label, value in marks:
        x = fr.x(Fraction(dec(value)))
        out.append(f'<line class="mark" x1="{fmt(x)}" y1="{fmt(fr.y(0) - 6)}" '
                   f'x2="{fmt(x)}" y2="{fmt(fr.y(0) + 6)}" stroke="#c00"/>')
        out.append(f'<text x="{fmt(x - 8)}" y="{fmt(fr.y(0) + 28)}" font-size="11" '
                   f'fill="#c00">{escape(label)}</text>')
    out.append('<g clip-path="url(#plot)" fill="none" stroke="#1f4e9c" stroke-width="1.5">')
    for w in walls:
        out.append(_wall_path(w, fr, t_max))
    out.append("</g>")
    out.append(f'<g font-size="11" font-family="monospace">')
    out.append(f'<text x="{WIDTH}" y="{MARGIN}" font-weight="bold">walls (P,Q,R)</text>')
    for i, w in enumerate(walls):
        P, Q, R = w.pqr
        out.append(f'<text x="{WIDTH}" y="{MARGIN + 16 * (i + 1)}">'
                   f"({P},{Q},{R}) {codim_tag(w.codim)}</text>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _wall_path(w: Wall, fr: _Frame, t_max: Fraction) -> str:
    geom = w.geometry
    P, Q, R = w.pqr
    ident = f'data-pqr="{P},{Q},{R}"'
    if isinstance(geom, Line):
        x = fr.x(geom.s0)
        return f'<path {ident} d="M {fmt(x)} {fmt(fr.y(0))} L {fmt(x)} {fmt(fr.y(t_max))}"/>'
    if isinstance(geom, Circle):
        rho = QuadExt.sqrt(geom.radius2)
        left = fr.x(geom.center) - Fraction(dec(rho * fr.sx))
        right = fr.x(geom.center) + Fraction(dec(rho * fr.sx))
        rx, ry = dec(rho * fr.sx), dec(rho * fr.sy)
        return (f'<path {ident} d="M {fmt(left)} {fmt(fr.y(0))} '
                f'A {fmt(rx)} {fmt(ry)} 0 0 1 {fmt(right)} {fmt(fr.y(0))}"/>')
    return f'<path {ident} d=""/>'
