"""Compare the cone enumeration with the box brute force on random instances.

Reports, per instance, the number of walls each method finds and any
difference.  Walls found only by the enumeration are re-checked from their
witness class.
"""
import argparse
import random
import time
from fractions import Fraction

from mukaiwalls.atlas import Window, brute_force_walls, enumerate_walls
from mukaiwalls.charge import wall_candidate_check, wall_nonempty, wall_pqr
from mukaiwalls.lattice import MukaiVector, SurfaceLattice, mukai_pairing


def instance(rng, max_square):
    while True:
        n = rng.randint(1, 5)
        L = SurfaceLattice.rank_one(n)
        v = MukaiVector.of(*(rng.randint(-6, 6) for _ in range(3)))
        sq = mukai_pairing(v, v, L)
        if v.content() == 1 and 0 < sq <= max_square:
            break
    den = rng.randint(1, 10)
    s_lo = Fraction(rng.randint(-3 * den, 3 * den), den)
    s_hi = s_lo + Fraction(rng.randint(1, 2 * den), den)
    den = rng.randint(2, 10)
    t_lo = Fraction(1, den)
    return v, L, Window.from_t(s_lo, s_hi, t_lo, t_lo + Fraction(rng.randint(1, 2 * den), den))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=40)
    ap.add_argument("--bound", type=int, default=40)
    ap.add_argument("--max-square", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    mismatches = 0
    for i in range(args.count):
        v, L, win = instance(rng, args.max_square)
        t0 = time.perf_counter()
        fast = {w.pqr: w for w in enumerate_walls(v, win, L)}
        t1 = time.perf_counter()
        slow = {w.pqr for w in brute_force_walls(v, win, args.bound, L)}
        t2 = time.perf_counter()
        note = ""
        if set(fast) != slow:
            mismatches += 1
            extra = set(fast) - slow
            ok = all(wall_candidate_check(v, fast[p].witnesses[0], L)
                     and wall_nonempty(v, fast[p].witnesses[0], L)
                     and wall_pqr(v, fast[p].witnesses[0], L) == p for p in extra)
            note = f"  only enumerated: {sorted(extra)} valid={ok}; only brute: {sorted(slow - set(fast))}"
        print(f"{i:3d} v={v.entries()} n={L.n} walls {len(fast)}/{len(slow)} "
              f"({t1 - t0:.2f}s / {t2 - t1:.2f}s){note}")
    print(f"{mismatches} of {args.count} instances differ")


if __name__ == "__main__":
    main()
