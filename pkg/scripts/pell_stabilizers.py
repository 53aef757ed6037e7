"""Pell fundamental units and stabilizer generators for small Mukai vectors.

Prints one row per primitive (r, d, a) with r > 0 and |d|, |a| <= bound.
"""
import argparse
from math import isqrt

from mukaiwalls.fm import FINITE, pell_fundamental, stabilizer_generator
from mukaiwalls.lattice import MukaiVector, SurfaceLattice, mukai_pairing


def rows(n, bound):
    L = SurfaceLattice.rank_one(n)
    for r in range(1, bound + 1):
        for d in range(-bound, bound + 1):
            for a in range(-bound, bound + 1):
                v = MukaiVector.of(r, d, a)
                sq = mukai_pairing(v, v, L)
                if v.content() != 1 or sq <= 0:
                    continue
                D = n * sq // 2
                g = stabilizer_generator(v, L)
                if g == FINITE:
                    yield v, D, None, "finite (nl is a square)"
                else:
                    yield v, D, pell_fundamental(D), g.matrix_str()


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--bound", type=int, default=3)
    args = ap.parse_args()
    print(f"{'v':>12} {'nl':>4} {'(x, y)':>16}  generator")
    for v, D, sol, gen in rows(args.n, args.bound):
        xy = "" if sol is None else f"({sol.x}, {sol.y})"
        print(f"{str(v.entries()):>12} {D:>4} {xy:>16}  {gen}")
