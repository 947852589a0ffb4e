"""Run every oracle suite over several primes and seeds and report mismatches.

    python3 scripts/oracle_sweep.py --primes 10007 32003 65521 --seeds 3
"""

import argparse

from bncalc.cli import SUITES
from bncalc.oracle import OracleConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--primes", type=int, nargs="+", default=[10007, 32003, 65521])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--trials", type=int, default=100, help="random sheaves per bound run")
    args = ap.parse_args()
    bad = 0
    for p in args.primes:
        for s in range(args.seeds):
            cfg = OracleConfig(p, s)
            cases = [c for name, fn in SUITES.items() for c in fn(cfg, args.trials if name == "bound" else None)]
            fails = [c for c in cases if not c.ok]
            bad += len(fails)
            print(f"p={p} seed={s}: {len(cases) - len(fails)}/{len(cases)} ok")
            for c in fails:
                print(f"  FAIL {c.name}: {c.detail}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
