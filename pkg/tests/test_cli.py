import json
import math

import pytest

from polycomb.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out) if out else None


def test_factor_round_trip(capsys):
    code, doc = run_json(capsys, "factor", "--P", '["-1","0","4"]')
    assert code == 0
    assert doc["schema_version"] == 1
    assert doc["config"]["subcommand"] == "factor"
    res = doc["result"]
    assert res["sign"] == 1 and res["content"] == 1
    assert [f["poly"] for f in res["factors"]] == [["-1", "2"], ["1", "2"]]


def test_bounds_table(capsys):
    code, doc = run_json(capsys, "bounds", "--table")
    assert code == 0
    rows = doc["result"]["table"]
    stored = {3: 2.5, 4: 3.1213, 5: 3.7122, 6: 4.2839, 7: 4.8423}
    for row in rows:
        assert abs(row["exact_degree_bound"] - stored[row["n"]]) < 5e-5


def test_bounds_formula(capsys):
    code, doc = run_json(capsys, "bounds", "--formula", "wirsing", "--args", "[3]")
    assert code == 0 and doc["result"]["value"] == 2.5
    code, doc = run_json(capsys, "bounds", "--formula", "gamma", "--args", "[4, -1, 2.718281828459045]")
    assert code == 0 and abs(doc["result"]["gamma"] - 3.0) < 1e-9
    code, doc = run_json(capsys, "bounds", "--formula", "gyory", "--args", "[3, 0]")
    assert code == 0 and doc["result"]["value"] > 1e100


def test_szegedy_command(capsys):
    code, doc = run_json(capsys, "szegedy", "--P", '["0","0","0","1"]')
    assert code == 0
    assert doc["result"]["b"] == 2
    assert doc["result"]["certificate"]["factors"][0]["mult"] == 1


def test_roots_command(capsys):
    code, doc = run_json(capsys, "roots", "--P", '["-2","0","1"]')
    assert code == 0
    disks = doc["result"]["disks"]
    assert len(disks) == 2
    vals = sorted(d["re_float"] for d in disks)
    assert abs(vals[1] - math.sqrt(2)) < 1e-9


def test_gap_command(capsys):
    code, doc = run_json(capsys, "gap", "--P", '["0","-1","1"]', "--Q", '["-1","3"]', "--H", "10")
    assert code == 0
    lo, hi = doc["result"]["gap_float"]
    assert abs(lo - 1 / 3) < 1e-12 and abs(hi - 1 / 3) < 1e-12


def test_exponent_command(capsys):
    code, doc = run_json(
        capsys, "exponent", "--xi", "cf:[0,1,2,1,1,3,1,2,1,1,4,1]", "--n", "1", "--X", "50"
    )
    assert code == 0
    assert doc["result"]["value"] >= 0.8
    code, doc = run_json(
        capsys, "exponent", "--xi", "liouville:10,3", "--n", "1", "--X", "1000"
    )
    assert code == 0 and doc["result"]["value"] >= 2.9
    code, doc = run_json(
        capsys, "exponent", "--xi", "3/7", "--n", "1", "--X", "30", "--variant", "lambda"
    )
    assert code == 0 and doc["result"]["witness_x"] is not None


def test_census_csv_deterministic(tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    for out in (out1, out2):
        code = main(
            [
                "census",
                "--counterexample",
                "S_quadratic",
                "--H",
                "10000",
                "--delta",
                "0.5",
                "--seed",
                "7",
                "--out",
                str(out),
            ]
        )
        assert code == 0
    b1, b2 = out1.read_bytes(), out2.read_bytes()
    assert b1 == b2
    text = b1.decode()
    assert text.startswith("# schema_version=1\n# config=")
    lines = text.strip().splitlines()
    assert lines[2] == "index,degree,reducible,factor_degrees"
    rows = [l.split(",") for l in lines[3:]]
    assert sum(int(r[2]) for r in rows) == 4  # reducible count at H = 1e4
    red_row = next(r for r in rows if r[2] == "1")
    assert red_row[3] == "1+1"


def test_census_json_output(capsys):
    code, doc = run_json(
        capsys,
        "census",
        "--kind",
        "S",
        "--P",
        '["0","0","1"]',
        "--Q",
        '["-1"]',
        "--H",
        "1000",
        "--delta",
        "0.5",
        "--format",
        "json",
    )
    assert code == 0
    res = doc["result"]
    assert res["total_indices"] == len([p for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)])
    assert res["reducible_count"] + res["irreducible_count"] == res["total_indices"]


def test_conjugate_command(capsys):
    code, doc = run_json(
        capsys, "conjugate", "--P", '["3","2","1"]', "-a", "0", "-b", "1", "-c", "1", "-d", "0"
    )
    assert code == 0
    assert doc["result"]["poly"] == ["1", "2", "3"]


def test_usage_error_exit_code(capsys):
    assert main(["nonsense"]) == 64
    capsys.readouterr()
    assert main([]) == 64
    capsys.readouterr()


def test_precondition_exit_code(capsys):
    # zero polynomial
    assert main(["factor", "--P", "[]"]) == 2
    capsys.readouterr()
    # non-coprime census
    code = main(
        ["census", "--kind", "S", "--P", '["0","0","1"]', "--Q", '["0","2"]',
         "--H", "100", "--delta", "0.5"]
    )
    assert code == 2
    capsys.readouterr()


def test_exponent_json_deterministic(tmp_path):
    outs = []
    for name in ("x1.json", "x2.json"):
        path = tmp_path / name
        code = main(
            ["exponent", "--xi", "cf:[0,2,1,1,3,1,2,1,1,2]", "--n", "2", "--X", "40",
             "--out", str(path), "--seed", "3"]
        )
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
