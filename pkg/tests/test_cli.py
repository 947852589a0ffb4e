import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from bncalc.cli import CSV_HEADER, OutputRecord, classify, main, table_records


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def _no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(_no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(_no_floats(v) for v in obj)
    return True


class TestClassify:
    def test_json(self):
        code, out, _ = run("classify", "--rank", "3", "--c1", "2", "--chi", "2", "--no-timestamp")
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"]["status"] == "NonemptyIrreducible"
        assert doc["verdict"]["extension_data"] == {"sub": {"alpha": 1, "a": 1, "r": 3}, "b": 3, "ext_dim": 16}
        assert doc["derived"]["mu"] == "2/3"
        assert doc["query"]["sections"] == 4
        assert _no_floats(doc)
        assert "timestamp" not in doc["provenance"]

    def test_byte_identical(self):
        argv = ("classify", "--rank", "8", "--c1", "6", "--chi", "12", "--no-timestamp")
        assert run(*argv)[1] == run(*argv)[1]

    def test_timestamp_present_by_default(self):
        doc = json.loads(run("classify", "--rank", "2", "--c1", "1", "--chi", "3")[1])
        assert "timestamp" in doc["provenance"]

    def test_csv(self):
        code, out, _ = run("classify", "--rank", "4", "--c1", "2", "--chi", "0", "--output", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0 and rows[0] == CSV_HEADER
        assert rows[1][CSV_HEADER.index("status")] == "Empty"

    def test_sections_override(self):
        doc = json.loads(run("classify", "--rank", "3", "--c1", "2", "--chi", "2", "--sections", "6")[1])
        assert doc["verdict"]["status"] == "EmptyBySectionBound"

    def test_round_trip(self):
        for args in [(3, 2, 2), (8, 6, 12), (4, 2, 0), (1, 2, 3), (2, 0, 4)]:
            rec = classify(*args)
            again = OutputRecord.from_dict(json.loads(json.dumps(rec.to_dict())))
            assert again.to_dict() == rec.to_dict()

    def test_domain_error(self):
        code, _, err = run("classify", "--rank", "2", "--c1", "-3", "--chi", "0")
        assert code == 3 and "bncalc:" in err
        assert run("classify", "--rank", "0", "--c1", "0", "--chi", "0")[0] == 3

    def test_usage_error(self, capsys):
        assert run("classify", "--rank", "x", "--c1", "0", "--chi", "0")[0] == 2
        assert run("frobnicate")[0] == 2


class TestTable:
    def test_row_count(self):
        code, out, _ = run("table", "--rank-max", "6", "--chi-min", "-3", "--chi-max", "2")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0 and rows[0] == CSV_HEADER
        assert len(rows) - 1 == sum(r - 1 for r in range(2, 7)) * 6

    def test_default_chi_range(self):
        recs = table_records(4, 1, -2)
        # chi runs up to beta - alpha of each class
        tops = {}
        for rec in recs:
            tops[rec.cls.c1, rec.cls.rank] = max(tops.get((rec.cls.c1, rec.cls.rank), -99), rec.cls.chi)
        assert tops[(2, 3)] == 4 and tops[(1, 2)] == 2

    def test_sorted_and_contains_equality_case(self):
        recs = table_records(8, 1, 0)
        keys = [(r.cls.rank, r.cls.c1, r.cls.chi) for r in recs]
        assert keys == sorted(keys)
        row = next(r for r in recs if (r.cls.rank, r.cls.c1, r.cls.chi) == (8, 6, 12))
        assert row.verdict.codim == row.verdict.expected_codim == 13

    def test_only_non_integer_slopes(self):
        assert all(Fraction(r.cls.c1, r.cls.rank).denominator > 1 for r in table_records(5, 2, -1))

    def test_json(self):
        code, out, _ = run("table", "--rank-max", "3", "--chi-min", "0", "--output", "json", "--no-timestamp")
        doc = json.loads(out)
        assert code == 0 and doc["schema"] == 1 and _no_floats(doc)
        assert len(doc["rows"]) == len(table_records(3, 1, 0))

    def test_empty_grid(self):
        assert run("table", "--rank-max", "1", "--chi-min", "0")[0] == 2
        assert run("table", "--rank-max", "4", "--chi-min", "5", "--chi-max", "1")[0] == 2


class TestVerify:
    @pytest.mark.parametrize("target", ["steiner", "ideal", "transform"])
    def test_suites_pass(self, target):
        code, out, _ = run("verify", target, "--seed", "7")
        assert code == 0
        assert "FAIL" not in out and "summary:" in out

    def test_bound(self):
        code, out, _ = run("verify", "bound", "--trials", "40")
        assert code == 0 and "0 failed" in out

    def test_env_prime(self, monkeypatch):
        monkeypatch.setenv("BNCALC_PRIME", "10007")
        code, out, _ = run("verify", "ideal")
        assert code == 0 and "prime=10007" in out

    def test_bad_prime(self):
        assert run("verify", "ideal", "--prime", "32004")[0] == 3

    def test_module_entry_point(self):
        res = subprocess.run([sys.executable, "-m", "bncalc", "classify", "--rank", "2", "--c1", "1",
                              "--chi", "3", "--no-timestamp"], capture_output=True, text=True)
        assert res.returncode == 0
        assert json.loads(res.stdout)["verdict"]["status"] == "WholeModuliSpace"
