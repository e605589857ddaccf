import json
from fractions import Fraction as F

import pytest

from covgamma.certifier import verify_covering
from covgamma.cli import main
from covgamma.configs import catalog_entry
from covgamma.manifest import SCHEMA, strip_volatile
from covgamma.witness import VERTICES, build_witness_set, certify_lower_bound


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.startswith("{") else out.out
    return code, doc, out.err


def test_verify_catalog_m6(capsys):
    code, doc, _ = run(capsys, "verify", "--catalog", "m6")
    assert code == 0 and doc["verdict"]["status"] == "covered"
    assert doc["schema"] == SCHEMA
    # byte-for-byte with the library call
    lib = verify_covering(catalog_entry("m6").config()).to_json()
    assert json.dumps(doc["verdict"], sort_keys=True) == json.dumps(lib, sort_keys=True)
    m = doc["manifest"]
    assert m["command"] == "verify" and m["inputs"] == {"catalog": "m6"} and "timestamp" in m


def test_verify_lambda_override(capsys):
    code, doc, _ = run(capsys, "verify", "--catalog", "m6", "--lambda", "13/20")
    assert code == 2 and doc["verdict"]["status"] == "not_covered"
    assert doc["config"]["lambda"] == "13/20" and "witness" in doc["verdict"]


def test_verify_budget_exit_3(capsys):
    code, doc, _ = run(capsys, "verify", "--catalog", "m6", "--budget", "2")
    assert code == 3 and doc["verdict"]["status"] == "inconclusive"


def test_verify_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("COVGAMMA_BUDGET", "2")
    code, doc, _ = run(capsys, "verify", "--catalog", "m6")
    assert code == 3 and doc["manifest"]["budgets"] == {"cells": 2}
    monkeypatch.setenv("COVGAMMA_BUDGET", "lots")
    assert run(capsys, "verify", "--catalog", "m6")[0] == 1


def test_verify_config_file(capsys, tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"lambda": "1", "translations": [["0", "0", "0"]]}))
    code, doc, _ = run(capsys, "verify", str(p))
    assert code == 0
    p.write_text(json.dumps({"lambda": 0.5, "translations": [[0, 0, 0]]}))
    assert run(capsys, "verify", str(p))[0] == 1
    p.write_text("{not json")
    assert run(capsys, "verify", str(p))[0] == 1


@pytest.mark.parametrize("argv", [["verify", "missing.json"], ["verify"],
                                  ["verify", "--catalog", "m99"],
                                  ["verify", "--catalog", "m6", "--lambda", "0.65"],
                                  ["lower", "--m", "x", "--lambda", "1"],
                                  ["lower", "--m", "5", "--lambda", "1", "--witness", "edges"],
                                  ["lower", "--m", "0", "--lambda", "1"],
                                  ["nodes", "--lambda", "1/4"], ["nodes", "--lambda", "1"],
                                  ["table", "--m-min", "5", "--m-max", "4"],
                                  ["search", "--m", "3"], ["bogus"]])
def test_malformed_input_exit_1(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_lower_m5(capsys):
    code, doc, _ = run(capsys, "lower", "--m", "5", "--lambda", "1", "--witness", "vertices")
    assert code == 0 and doc["verdict"]["status"] == "certified"
    lib = certify_lower_bound(5, 1, build_witness_set([VERTICES])).to_json()
    assert doc["verdict"] == lib


def test_lower_m6_counterexample(capsys):
    code, doc, _ = run(capsys, "lower", "--m", "6", "--lambda", "1", "--witness", "vertices")
    assert code == 2
    assert sorted(len(g) for g in doc["verdict"]["counterexample"]["groups"]) == [1] * 6


def test_lower_m13_three_fifths(capsys):
    code, doc, _ = run(capsys, "lower", "--m", "13", "--lambda", "3/5",
                       "--witness", "vertices,nodes")
    # the prescribed witness set admits a grouping with every ratio below 3/5
    assert code == 2
    ce = doc["verdict"]["counterexample"]
    assert all(F(r) < F(3, 5) for r in ce["ratios"])


def test_lower_m10_three_fifths(capsys):
    code, _, _ = run(capsys, "lower", "--m", "10", "--lambda", "3/5", "--witness", "vertices,nodes")
    assert code == 0


def test_nodes(capsys):
    code, doc, _ = run(capsys, "nodes", "--lambda", "2/3")
    assert code == 0 and doc["count"] == 8 and doc["degenerate"]
    assert {tuple(d["point"]) for d in doc["nodes"]} == {
        tuple(f"{s}1/3" for s in signs)
        for signs in [(a, b, c) for a in ("", "-") for b in ("", "-") for c in ("", "-")]}
    code, doc, _ = run(capsys, "nodes", "--lambda", "3/5", "--midpoints")
    assert doc["count"] == 24 and not doc["degenerate"] and len(doc["midpoints"]) == 24
    pp = [d["point"] for d in doc["nodes"] if d["facet"] == "+++"]
    assert ["2/5", "2/5", "1/5"] in pp


def test_search(capsys):
    code, doc, _ = run(capsys, "search", "--complete", "m10")
    assert code == 0 and doc["found"]["verified"] == "covered"
    code, doc, _ = run(capsys, "search", "--m", "1", "--lambda", "1")
    assert code == 0 and doc["found"]["translations"] == [["0", "0", "0"]]
    code, doc, _ = run(capsys, "search", "--m", "6", "--lambda", "3/5", "--iterations", "3")
    assert code == 2 and doc["found"] is None


def test_table_files(capsys, tmp_path):
    code = main(["table", "--m-min", "4", "--m-max", "6", "--out-dir", str(tmp_path)])
    capsys.readouterr()
    assert code == 0
    doc = json.loads((tmp_path / "gamma_table.json").read_text())
    assert doc["schema"] == SCHEMA and doc["manifest"]["command"] == "table"
    assert [r["upper"] for r in doc["rows"]] == ["1", "1", "2/3"]
    csv = (tmp_path / "gamma_table.csv").read_text().splitlines()
    assert csv[0].startswith("# {") and csv[1].startswith("m,lower,upper")
    assert len(csv) == 5


def test_table_io_error(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["table", "--m-min", "4", "--m-max", "4", "--out-dir", str(blocker)]) == 1


@pytest.mark.parametrize("argv", [["verify", "--catalog", "m10"],
                                  ["lower", "--m", "9", "--lambda", "2/3",
                                   "--witness", "vertices,centers"],
                                  ["nodes", "--lambda", "4/7", "--midpoints"]])
def test_deterministic_modulo_timestamp(capsys, argv):
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert strip_volatile(a) == strip_volatile(b)


def test_out_file(capsys, tmp_path):
    p = tmp_path / "v.json"
    run(capsys, "verify", "--catalog", "m6", "--out", str(p))
    assert json.loads(p.read_text())["verdict"]["status"] == "covered"


def test_console_script():
    import shutil
    import subprocess
    exe = shutil.which("covgamma")
    if exe is None:
        pytest.skip("console script not installed")
    p = subprocess.run([exe, "nodes", "--lambda", "3/5"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["count"] == 24
    p = subprocess.run([exe, "nodes", "--lambda", "1/4"], capture_output=True, text=True)
    assert p.returncode == 1 and "error" in p.stderr
