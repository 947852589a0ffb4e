"""Count Brill-Noether verdicts for B^(beta-alpha) over a grid of non-integer slopes.

    python3 scripts/verdict_landscape.py --rank-max 20 --chi-depth 10
"""

import argparse
from collections import Counter
from fractions import Fraction

from bncalc.brill_noether import BNQuery, bn_verdict, default_sections
from bncalc.invariants import make_class


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rank-max", type=int, default=20)
    ap.add_argument("--alpha-max", type=int, default=2)
    ap.add_argument("--chi-depth", type=int, default=10, help="chi from beta-alpha-depth to beta-alpha-1")
    args = ap.parse_args()

    by_rank = {}
    for r in range(2, args.rank_max + 1):
        counts = Counter()
        for al in range(1, args.alpha_max + 1):
            for a in range(1, r):
                c1 = (al - 1) * r + a
                k = default_sections(make_class(r, c1, 0))
                for chi in range(k - args.chi_depth, k):
                    counts[bn_verdict(BNQuery(make_class(r, c1, chi), k)).status.value] += 1
        by_rank[r] = counts
    names = sorted({s for c in by_rank.values() for s in c})
    print("rank  " + "  ".join(names))
    for r, c in by_rank.items():
        print(f"{r:4d}  " + "  ".join(f"{c[n]:>{len(n)}d}" for n in names))
    total = sum(by_rank.values(), Counter())
    empty = Fraction(total["Empty"], sum(total.values()))
    print(f"fraction Empty: {empty} ~ {float(empty):.3f}")


if __name__ == "__main__":
    main()
