import csv
import io
import json
from fractions import Fraction

import pytest

from wlab.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_eval_json_encloses_three_halves():
    code, out, _ = call("eval", "--fn", "geom3", "--at", "1", "--precision", "16", "--format", "json")
    assert code == 0
    row = json.loads(out)["series"][0]
    lo, hi = Fraction(row["lower"]), Fraction(row["upper"])
    assert lo <= Fraction(3, 2) <= hi and hi - lo <= Fraction(1, 1 << 15)


def test_germ_csv():
    code, out, _ = call("germ", "--fn", "geom2", "--count", "4", "--precision", "12", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["index"] for r in rows] == ["0", "1", "2", "3"]
    for k, r in enumerate(rows):
        assert Fraction(r["lower"]) <= Fraction(1, 2 ** (k + 1)) <= Fraction(r["upper"])


def test_sum_from_file(tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"advice": 4, "coeffs": [[1, 1, 0, 1], [0, 1, 0, 1], [1, 2, 0, 1]]}))
    code, out, _ = call("sum", "--file", str(f), "--at", "1/2", "--precision", "10", "--format", "csv")
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert Fraction(row["lower"]) <= Fraction(9, 8) <= Fraction(row["upper"])


def test_zeros_and_deg(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"coeffs": ["-2", "0", "1"], "bound": 3}))
    code, out, _ = call("zeros", "--file", str(f), "--precision", "12", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["series"]) == 2
    code, out, _ = call("deg", "--file", str(f))
    assert code == 0 and "2" in out


def test_reduce_verified_and_fuel_failure():
    code, out, _ = call("reduce", "count_le_cn", "--instance", "supp257")
    assert code == 0 and "answer: 3" in out and "verified" in out
    assert call("reduce", "count_le_cn", "--instance", "supp257", "--fuel", "3")[0] == 2
    assert call("reduce", "cn_le_bound", "--instance", "set4_11", "--policy", "alt")[0] == 0


def test_reduce_from_literal(tmp_path):
    f = tmp_path / "s.json"
    f.write_text(json.dumps({"values": [0, 3, 0, 0, 5], "generator": "zero"}))
    code, out, _ = call("reduce", "count_le_max", "--file", str(f))
    assert code == 0 and "answer: 2" in out


@pytest.mark.parametrize("argv", [
    ["reduce", "no_such_reduction"],
    ["reduce"],
    ["eval", "--fn", "nope", "--at", "0"],
    ["eval", "--fn", "geom3", "--at", "0", "--precision", "-1"],
    ["frobnicate"],
    ["reduce", "cn_eq_max"],
])
def test_usage_errors_exit_one(argv):
    assert call(*argv)[0] == 1


def test_env_precision(monkeypatch):
    monkeypatch.setenv("WLAB_DEFAULT_PRECISION", "6")
    code, out, _ = call("eval", "--fn", "geom3", "--at", "1", "--format", "json")
    assert code == 0 and json.loads(out)["precision"] == 6
    monkeypatch.setenv("WLAB_DEFAULT_PRECISION", "six")
    assert call("eval", "--fn", "geom3", "--at", "1")[0] == 1


def test_bump_stall_exits_two():
    assert call("bump", "--fn", "bump0", "--at", "0", "--precision", "40")[0] == 2


def test_output_is_deterministic():
    argv = ["germ", "--fn", "geom3", "--count", "5", "--precision", "14", "--format", "json"]
    assert call(*argv)[1] == call(*argv)[1]


def test_list_and_validate():
    code, out, _ = call("list", "--format", "json")
    assert code == 0
    assert any(row["id"] == "count_le_cn" for row in json.loads(out)["catalog"])
    code, out, _ = call("validate", "--name", "geom3", "--depth", "6")
    assert code == 0
