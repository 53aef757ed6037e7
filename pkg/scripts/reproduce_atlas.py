"""Walls of v = (2,1,-2) on a degree-2 K3, written as JSON and SVG.

    python scripts/reproduce_atlas.py [outdir]
"""
import sys
from fractions import Fraction
from pathlib import Path

from mukaiwalls.atlas import Window, classify_wall, enumerate_walls
from mukaiwalls.charge import Circle
from mukaiwalls.cli import main
from mukaiwalls.lattice import MukaiVector, SurfaceLattice


def table(v, win, L):
    rows = []
    for w in enumerate_walls(v, win, L):
        g = w.geometry
        shape = (f"circle c={g.center} rho^2={g.radius2}" if isinstance(g, Circle)
                 else f"line s={g.s0}")
        kind = type(classify_wall(v, w, L)).__name__
        rows.append(f"{str(w.pqr):>14}  {shape:<32} {kind}")
    return rows


if __name__ == "__main__":
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "out")
    outdir.mkdir(parents=True, exist_ok=True)
    v, L = MukaiVector.of(2, 1, -2), SurfaceLattice.rank_one(1)
    win = Window.from_t(Fraction(-11, 5), Fraction(16, 5), Fraction(1, 10), 2)
    print("\n".join(table(v, win, L)))
    target = outdir / "atlas.json"
    code = main(["walls", "--n", "1", "--v", "2,1,-2", "--window", "-2.2:3.2,0.1:2",
                 "--format", "both", "--out", str(target)])
    print(f"wrote {target} and {target.with_suffix('.svg')}")
    sys.exit(code)
