"""``bncalc``: classify Brill-Noether loci, tabulate them, and run oracle checks.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Iterator

from . import __version__
from .brill_noether import BNQuery, BNVerdict, bn_verdict, default_sections
from .invariants import SheafClass, alpha, beta, moduli_dim, section_bound_max
from .oracle import (
    GenericityFailure,
    OracleConfig,
    PointConfig,
    collinear_points,
    elementary_transform_h0,
    ideal_h0,
    random_points,
    steiner_h0,
    sum_h0,
    with_retries,
)
from .steiner import SteinerData

SCHEMA = 1

CSV_HEADER = [
    "schema", "rank", "c1", "chi", "sections",
    "mu", "alpha", "beta", "delta", "discriminant", "moduli_dim",
    "status", "irreducible", "codim", "expected_codim",
    "ext_sub_alpha", "ext_sub_a", "ext_sub_r", "ext_b", "ext_dim",
    "moduli_nonempty_assumed", "notes",
]


class DomainError(ValueError):
    pass


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class OutputRecord:
    cls: SheafClass
    sections: int
    verdict: BNVerdict
    timestamp: str | None = None
    prime: int | None = None
    seed: int | None = None

    def derived(self) -> dict:
        mu = self.cls.slope
        out = {"mu": frac_str(mu), "alpha": None, "beta": None, "delta": None}
        if mu >= -1:
            b = beta(self.cls.rank, mu)
            out.update(alpha=alpha(mu), beta=b, delta=b - self.sections)
        out["discriminant"] = frac_str(self.cls.discriminant)
        out["moduli_dim"] = moduli_dim(self.cls)
        return out

    def to_dict(self) -> dict:
        v = self.verdict
        ext = None
        if v.extension_data is not None:
            e = v.extension_data
            ext = {
                "sub": {"alpha": e.sub.alpha, "a": e.sub.a, "r": e.sub.r},
                "b": e.b,
                "ext_dim": e.ext_dim,
            }
        prov = {"tool": "bncalc", "version": __version__}
        if self.prime is not None:
            prov.update(prime=self.prime, seed=self.seed)
        if self.timestamp is not None:
            prov["timestamp"] = self.timestamp
        return {
            "schema": SCHEMA,
            "query": {"rank": self.cls.rank, "c1": self.cls.c1, "chi": self.cls.chi,
                      "sections": self.sections},
            "derived": self.derived(),
            "verdict": {
                "status": v.status.value,
                "irreducible": v.irreducible,
                "codim": v.codim,
                "expected_codim": v.expected_codim,
                "extension_data": ext,
                "moduli_nonempty_assumed": v.moduli_nonempty_assumed,
                "notes": v.notes,
            },
            "provenance": prov,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OutputRecord":
        from .brill_noether import ExtensionData, Status

        q, v = d["query"], d["verdict"]
        ext = None
        if v["extension_data"] is not None:
            e = v["extension_data"]
            ext = ExtensionData(SteinerData(**e["sub"]), e["b"], e["ext_dim"])
        verdict = BNVerdict(
            status=Status(v["status"]),
            expected_codim=v["expected_codim"],
            moduli_nonempty_assumed=v["moduli_nonempty_assumed"],
            irreducible=v["irreducible"],
            codim=v["codim"],
            extension_data=ext,
            notes=v["notes"],
        )
        prov = d.get("provenance", {})
        return cls(SheafClass(q["rank"], q["c1"], q["chi"]), q["sections"], verdict,
                   prov.get("timestamp"), prov.get("prime"), prov.get("seed"))

    def csv_row(self) -> list:
        d = self.to_dict()
        der, v = d["derived"], d["verdict"]
        ext = v["extension_data"] or {"sub": {}, "b": None, "ext_dim": None}
        row = [
            SCHEMA, self.cls.rank, self.cls.c1, self.cls.chi, self.sections,
            der["mu"], der["alpha"], der["beta"], der["delta"], der["discriminant"], der["moduli_dim"],
            v["status"], v["irreducible"], v["codim"], v["expected_codim"],
            ext["sub"].get("alpha"), ext["sub"].get("a"), ext["sub"].get("r"), ext["b"], ext["ext_dim"],
            v["moduli_nonempty_assumed"], v["notes"],
        ]
        return ["" if x is None else str(x).lower() if isinstance(x, bool) else x for x in row]


def classify(rank: int, c1: int, chi: int, sections: int | None = None) -> OutputRecord:
    try:
        cls = SheafClass(rank, c1, chi)
        k = default_sections(cls) if sections is None else sections
        return OutputRecord(cls, k, bn_verdict(BNQuery(cls, k)))
    except (ValueError, ArithmeticError) as exc:
        raise DomainError(str(exc)) from exc


def table_records(rank_max: int, alpha_max: int, chi_min: int, chi_max: int | None = None) -> list[OutputRecord]:
    """Every non-integer slope ``alpha-1 + a/r`` with ``r <= rank_max``, ``alpha <= alpha_max``.

    ``chi`` runs from ``chi_min`` to ``chi_max``, or to ``beta - alpha`` of the
    class when ``chi_max`` is omitted.  Rows are sorted by ``(r, c1, chi)``.
    """
    recs = []
    for r in range(2, rank_max + 1):
        for al in range(1, alpha_max + 1):
            for a in range(1, r):
                c1 = (al - 1) * r + a
                top = chi_max
                if top is None:
                    top = beta(r, Fraction(c1, r)) - al
                for chi in range(chi_min, top + 1):
                    recs.append(classify(r, c1, chi))
    recs.sort(key=lambda rec: (rec.cls.rank, rec.cls.c1, rec.cls.chi))
    return recs


def write_csv(records, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow(rec.csv_row())


# -- verification suites ------------------------------------------------------

@dataclass
class Case:
    name: str
    ok: bool
    detail: str


def _retry(cfg: OracleConfig, fn: Callable[[int], object]):
    return with_retries(fn, cfg.seed, cfg.retries)


def verify_steiner(cfg: OracleConfig, trials: int | None = None) -> Iterator[Case]:
    seeds = trials or 3
    for al in range(1, 4):
        for r in range(1, 7):
            for a in range(0, r):
                d = SteinerData(al, a, r)
                want = beta(r, d.slope)
                for s in range(seeds):
                    sub = OracleConfig(cfg.prime, cfg.seed + 1000 * s, cfg.retries)
                    try:
                        got = _retry(sub, lambda sd: steiner_h0(d, 0, prime=cfg.prime, seed=sd))
                    except GenericityFailure as exc:
                        yield Case(f"steiner {al},{a},{r} seed#{s}", False, str(exc))
                        continue
                    yield Case(f"steiner alpha={al} a={a} r={r} seed#{s}", got == want,
                               f"h0={got} beta={want}")


def verify_ideal(cfg: OracleConfig, trials: int | None = None) -> Iterator[Case]:
    three = random_points(3, cfg.seed, cfg.prime, general=True)
    res = sum_h0([(PointConfig((), prime=cfg.prime), 1), (three, 1)])
    yield Case("O(1) + I_3general(1)", res.h0 == 3 and res.bound == 6 and res.deficiency == comb(3, 2),
               f"h0={res.h0} bound={res.bound} deficiency={res.deficiency}")
    for n in range(3, 7):
        z = collinear_points(n, cfg.seed + n, cfg.prime)
        h0 = ideal_h0(z, n - 1)
        bound = section_bound_max(1, n - 1)
        ok = h0 == comb(n + 1, 2) - n and bound - h0 == n
        yield Case(f"I_{n}collinear({n - 1})", ok, f"h0={h0} bound={bound} deficiency={bound - h0}")


TRANSFORM_CASES = [
    (SteinerData(1, 2, 3), 3), (SteinerData(1, 2, 3), 4), (SteinerData(1, 2, 3), 5),
    (SteinerData(1, 3, 4), 2), (SteinerData(1, 5, 7), 3),
    (SteinerData(2, 2, 3), 3), (SteinerData(2, 5, 7), 4), (SteinerData(2, 3, 4), 6),
]


def verify_transform(cfg: OracleConfig, trials: int | None = None) -> Iterator[Case]:
    for d, n in TRANSFORM_CASES:
        want_h0 = beta(d.r, d.slope) - d.alpha
        try:
            t = _retry(cfg, lambda sd: elementary_transform_h0(d, n, prime=cfg.prime, seed=sd))
        except GenericityFailure as exc:
            yield Case(f"transform {d} n={n}", False, str(exc))
            continue
        yield Case(f"transform alpha={d.alpha} a={d.a} r={d.r} points={n}",
                   t.rank_drop == d.alpha and t.h0 == want_h0,
                   f"h0={t.h0} (beta-alpha={want_h0}) rank_drop={t.rank_drop} (alpha={d.alpha})")


def random_decomposable(rng, prime: int, max_summands: int = 4, max_twist: int = 4, max_points: int = 8):
    comps = []
    for _ in range(rng.randint(1, max_summands)):
        k = rng.randint(-1, max_twist)
        n = rng.randint(0, max_points)
        seed = rng.randrange(2**32)
        z = collinear_points(n, seed, prime) if n and rng.random() < 0.3 else random_points(n, seed, prime)
        comps.append((z, k))
    return comps


def verify_bound(cfg: OracleConfig, trials: int | None = None) -> Iterator[Case]:
    rng = random.Random(cfg.seed)
    bad = 0
    n = trials or 200
    for t in range(n):
        comps = random_decomposable(rng, cfg.prime)
        res = sum_h0(comps)
        if not res.ok:
            bad += 1
            desc = ", ".join(f"I_{len(z)}({k})" for z, k in comps)
            yield Case(f"bound trial {t}", False, f"{desc}: h0={res.h0} > bound={res.bound}")
    yield Case(f"bound {n} random decomposable sheaves", bad == 0, f"{bad} violations")


SUITES = {
    "steiner": verify_steiner,
    "ideal": verify_ideal,
    "transform": verify_transform,
    "bound": verify_bound,
}


# -- argument handling ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bncalc", description="Brill-Noether loci on the projective plane.")
    p.add_argument("--version", action="version", version=f"bncalc {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("classify", help="decide one locus B^k(r, mu, chi)")
    c.add_argument("--rank", type=int, required=True)
    c.add_argument("--c1", type=int, required=True)
    c.add_argument("--chi", type=int, required=True)
    c.add_argument("--sections", type=int, default=None, help="k (default beta - alpha)")
    c.add_argument("--output", choices=["json", "csv"], default="json")
    c.add_argument("--no-timestamp", action="store_true")

    t = sub.add_parser("table", help="verdicts over a grid of non-integer slopes")
    t.add_argument("--rank-max", type=int, required=True)
    t.add_argument("--alpha-max", type=int, default=1)
    t.add_argument("--chi-min", type=int, required=True)
    t.add_argument("--chi-max", type=int, default=None, help="default: beta - alpha of each class")
    t.add_argument("--output", choices=["json", "csv"], default="csv")
    t.add_argument("--no-timestamp", action="store_true")

    v = sub.add_parser("verify", help="compare closed formulas with the finite-field oracle")
    v.add_argument("target", choices=[*SUITES, "all"])
    v.add_argument("--prime", type=int, default=None, help="default 32003 or $BNCALC_PRIME")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=None)
    return p


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def cmd_classify(args, out) -> int:
    rec = classify(args.rank, args.c1, args.chi, args.sections)
    if not args.no_timestamp:
        rec.timestamp = _now()
    if args.output == "csv":
        write_csv([rec], out)
    else:
        out.write(json.dumps(rec.to_dict(), indent=2) + "\n")
    return 0


def cmd_table(args, out, err) -> int:
    if args.rank_max < 2 or args.alpha_max < 1 or (args.chi_max is not None and args.chi_max < args.chi_min):
        err.write("bncalc table: empty grid\n")
        return 2
    recs = table_records(args.rank_max, args.alpha_max, args.chi_min, args.chi_max)
    if not recs:
        err.write("bncalc table: empty grid\n")
        return 2
    if args.output == "json":
        ts = None if args.no_timestamp else _now()
        rows = [rec.to_dict() for rec in recs]
        doc = {"schema": SCHEMA, "rows": rows}
        if ts:
            doc["timestamp"] = ts
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        write_csv(recs, out)
    return 0


def cmd_verify(args, out) -> int:
    cfg = OracleConfig.from_env(prime=args.prime, seed=args.seed)
    cfg.field  # validates the prime
    targets = list(SUITES) if args.target == "all" else [args.target]
    passed = failed = 0
    out.write(f"# bncalc {__version__} verify prime={cfg.prime} seed={cfg.seed}\n")
    for name in targets:
        for case in SUITES[name](cfg, args.trials):
            out.write(f"{'PASS' if case.ok else 'FAIL'} {case.name}: {case.detail}\n")
            passed += case.ok
            failed += not case.ok
    out.write(f"summary: {passed} passed, {failed} failed\n")
    return 0 if failed == 0 else 1


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.cmd == "classify":
            return cmd_classify(args, out)
        if args.cmd == "table":
            return cmd_table(args, out, err)
        return cmd_verify(args, out)
    except (DomainError, ValueError, ArithmeticError) as exc:
        err.write(f"bncalc: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
