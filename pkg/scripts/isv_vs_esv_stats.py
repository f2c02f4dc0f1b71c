"""How often uniform scaling breaks the core, and how far ISV departs from it."""

import argparse
from collections import defaultdict
from fractions import Fraction

from coopshare.core import check_core
from coopshare.game import gen_convex
from coopshare.payments import esv, isv, vickrey


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-size", type=int, default=50)
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5, 6, 7])
    args = ap.parse_args()

    print(f"{'n':>3}{'games':>7}{'esv off-core':>14}{'isv != esv':>12}{'max |diff|':>12}")
    for n in args.sizes:
        stats = defaultdict(int)
        worst = Fraction(0)
        for seed in range(args.per_size):
            g = gen_convex(n, seed)
            if any(v <= 0 for v in vickrey(g)):
                continue
            stats["games"] += 1
            e = esv(g).payments
            x = isv(g).payments
            stats["off"] += not check_core(g, e).in_core
            stats["diff"] += e != x
            worst = max([worst] + [abs(a - b) for a, b in zip(e, x)])
        print(f"{n:>3}{stats['games']:>7}{stats['off']:>14}{stats['diff']:>12}{str(worst):>12}")


if __name__ == "__main__":
    main()
