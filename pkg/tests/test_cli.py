import csv
import io
import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from trycolor.cli import SWEEP_COLUMNS, cli_main, main


def invoke(*args):
    res = CliRunner().invoke(main, list(args))
    return res.exit_code, res.output


def test_run_mother():
    code, out = invoke("run", "--algo", "mother", "--n", "200", "--delta", "8", "--d", "0", "--k", "1",
                       "--seed", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] and rep["k"] == 1
    assert all(c["pass"] for c in rep["checks"].values())


@pytest.mark.parametrize("algo,extra", [("linial", []), ("kdelta", ["--k", "2"]), ("defective1", ["--d", "1"]),
                                        ("defectiveR", ["--d", "1"]), ("outdegree", ["--beta", "2"]),
                                        ("epscolor", ["--delta", "16", "--eps", "1/2"]), ("chop", ["--input", "greedy"]),
                                        ("greedy", ["--input", "greedy"])])
def test_run_every_algo(algo, extra):
    code, out = invoke("run", "--algo", algo, "--n", "150", "--seed", "2", *extra)
    assert code == 0, out
    assert json.loads(out)["pass"]


def test_sweep_csv_iterations():
    code, out = invoke("sweep", "--algo", "kdelta", "--n", "300", "--delta", "16", "--k", "1,2,4,8",
                       "--include-x", "--seed", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0].keys()) == SWEEP_COLUMNS
    assert len(rows) == 5
    for r in rows:
        q, k = int(r["q"]), int(r["k"])
        assert int(r["iterations"]) == -(-q // k)
        assert r["verifier_pass"] == "1"


def test_oneround_commands():
    code, out = invoke("oneround", "tight", "--delta", "2", "--m", "4")
    rep = json.loads(out)
    assert code == 0 and rep["upper"]["q"] == 3 and rep["upper"]["satisfiable"]
    assert rep["lower"]["q"] == 2 and not rep["lower"]["satisfiable"]
    code, out = invoke("oneround", "reduce", "--delta", "3", "--m", "8", "--k", "2", "--graphs", "3")
    assert code == 0 and json.loads(out)["table"]["proper"]


def test_rulingset():
    code, out = invoke("rulingset", "--r", "2", "--n", "200", "--delta", "16")
    assert code == 0 and json.loads(out)["check"]["pass"]
    code, out = invoke("rulingset", "--r", "2", "--B", "3", "--n", "200", "--delta", "6")
    assert code == 0 and json.loads(out)["r"] == 2  # C = 7 colors, 3^2 >= 7


def test_gen_and_verify(tmp_path):
    g, c = tmp_path / "g.txt", tmp_path / "c.txt"
    code, _ = invoke("gen", "--kind", "ring", "--n", "10", "--delta", "2", "--out", str(g),
                     "--coloring-out", str(c))
    assert code == 0
    assert invoke("verify", "--graph", str(g), "--coloring", str(c))[0] == 0
    bad = tmp_path / "bad.txt"
    lines = c.read_text().splitlines()
    lines[2] = lines[1]  # ring neighbours 0 and 1 now share a color
    bad.write_text("\n".join(lines) + "\n")
    code, out = invoke("verify", "--graph", str(g), "--coloring", str(bad))
    assert code == 1 and not json.loads(out)["pass"]
    members = tmp_path / "m.txt"
    members.write_text("0 3 6\n")
    assert invoke("verify", "--graph", str(g), "--members", str(members), "--r", "2")[0] == 0
    assert invoke("verify", "--graph", str(g), "--members", str(members), "--r", "1")[0] == 1


@pytest.mark.parametrize("args", [["run", "--algo", "mother", "--bogus"], ["oneround", "reduce", "--delta", "4",
                                  "--m", "6", "--k", "3"], ["run", "--algo", "kdelta", "--k", "10000"],
                                  ["sweep", "--k", "a,b"], ["nosuch"]])
def test_usage_errors_exit_2(args):
    assert cli_main(args) == 2


def test_repeats_are_byte_identical():
    args = ("run", "--algo", "defectiveR", "--n", "300", "--delta", "12", "--d", "2", "--seed", "7")
    assert invoke(*args)[1] == invoke(*args)[1]
    args = ("sweep", "--n", "200", "--delta", "8", "--seed", "4")
    assert invoke(*args)[1] == invoke(*args)[1]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "trycolor.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "sweep" in out.stdout
