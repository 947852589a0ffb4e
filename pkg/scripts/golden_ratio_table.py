"""Print, for each rank, which slopes a/r sit above phi - 1 and how the rest decompose.

Cross-checks the integer golden test against a 60-digit decimal value.

    python3 scripts/golden_ratio_table.py --rank-max 13
"""

import argparse
from decimal import Decimal, getcontext

from bncalc.steiner import Golden, general_steiner_stability, golden_test

getcontext().prec = 60
PHI_MINUS_ONE = (Decimal(5).sqrt() - 1) / 2


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rank-max", type=int, default=13)
    args = ap.parse_args()
    mismatches = 0
    for r in range(2, args.rank_max + 1):
        cells = []
        for a in range(r):
            above = golden_test(a, r) is Golden.ABOVE
            mismatches += above != (Decimal(a) / r > PHI_MINUS_ONE)
            cells.append(f"{a}/{r}:{general_steiner_stability(a, r)}")
        print(f"r={r:3d}  " + "  ".join(cells))
    print(f"golden test mismatches against decimal: {mismatches}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
