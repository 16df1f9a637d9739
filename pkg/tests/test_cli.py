import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from hypaut.cli import EXIT_DOMAIN, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main

import golden as pd


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def schema(name):
    text = resources.files("hypaut").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def test_admissible_list(capsys):
    code, out, _ = run(capsys, "admissible", "--dim", "3", "--deg", "4", "--list")
    assert code == EXIT_OK and out == "2, 3, 5, 7, 61\n"
    code, out, _ = run(capsys, "admissible", "--dim", "3", "--deg", "4")
    assert out == "2, 3, 5, 7, 61\n"


def test_admissible_check(capsys):
    code, out, _ = run(capsys, "admissible", "--dim", "3", "--deg", "4", "--check", "13")
    assert code == EXIT_OK and "not-realizable" in out
    code, out, _ = run(capsys, "admissible", "--dim", "3", "--deg", "4", "--check", "61",
                       "--format", "json")
    v = json.loads(out)["verdict"]
    assert v["verdict"] == "realizable" and v["ell"] == 5


def test_admissible_flags_linear_only(capsys):
    code, out, _ = run(capsys, "admissible", "--dim", "2", "--deg", "4", "--max")
    assert code == EXIT_OK and "linear-automorphisms-only" in out
    code, out, _ = run(capsys, "admissible", "--dim", "1", "--deg", "3", "--list", "--format", "json")
    assert json.loads(out)["interpretation"] == "linear-automorphisms-only"


def test_usage_errors_exit_64(capsys):
    assert run(capsys, "gorinov", "--dim", "3", "--deg", "2")[0] == EXIT_USAGE
    assert run(capsys, "admissible", "--dim", "0", "--deg", "3")[0] == EXIT_USAGE
    assert run(capsys, "admissible", "--dim", "x", "--deg", "3")[0] == EXIT_USAGE
    assert run(capsys, "admissible", "--dim", "3")[0] == EXIT_USAGE
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "table", "--which", "3")[0] == EXIT_USAGE
    assert run(capsys, "admissible", "--dim", "3", "--deg", "4", "--list", "--max")[0] == EXIT_USAGE
    assert run(capsys, "table", "--which", "1", "--format", "xml")[0] == EXIT_USAGE


def test_domain_errors_exit_2(capsys):
    code, _, err = run(capsys, "jacobian", "--dim", "2", "--deg", "3")
    assert code == EXIT_DOMAIN and "p.p.a.v." in err
    code, _, err = run(capsys, "admissible", "--dim", "3", "--deg", "4", "--check", "1")
    assert code == EXIT_DOMAIN and err.startswith("error:")
    assert run(capsys, "witness", "--dim", "3", "--deg", "4", "--prime", "13")[0] == EXIT_DOMAIN
    assert run(capsys, "klein", "--dim", "3", "--deg", "3", "--witness", "7")[0] == EXIT_DOMAIN
    assert run(capsys, "factor", "0")[0] == EXIT_DOMAIN


def test_effort_exhaustion_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("HYPAUT_EFFORT", "20")
    p, q = 100000000000000000000000000319, 100000000000000000000000100033
    code, out, err = run(capsys, "factor", str(4 * p * q))
    assert code == EXIT_RESOURCE and out == ""
    partial = json.loads(err.strip().splitlines()[-1])
    assert partial == {"partial": {"2": 2}, "cofactor": p * q}


def test_table1_golden(capsys):
    code, out, _ = run(capsys, "table", "--which", "1")
    lines = out.splitlines()
    assert code == EXIT_OK and len(lines) == 2 + 8
    for line, (n, primes) in zip(lines[2:], sorted(pd.TABLE1.items())):
        assert line == f"| {n} | {', '.join(map(str, primes))} |"


def test_table2_golden(capsys):
    code, out, _ = run(capsys, "table", "--which", "2")
    lines = out.splitlines()
    assert lines[0] == "| n\\d | 3 | 4 | 5 | 6 | 7 | 8 | 9 |"
    for line, (n, row) in zip(lines[2:], sorted(pd.TABLE2.items())):
        cells = ["-" if v is None else str(v) for v in row]
        assert line == f"| {n} | " + " | ".join(cells) + " |"
    code, out, _ = run(capsys, "table", "--which", "2", "--rows", "9", "--format", "plain")
    assert out == "683, 661, 2113, 5281, 51828151, 10746341, 87211\n"


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--which", "2", "--format", "csv")
    rows = out.splitlines()
    assert rows[0] == "n,3,4,5,6,7,8,9"
    assert rows[1] == "2,5,-,17,13,37,43,19"


def test_klein_singularity(capsys):
    code, out, _ = run(capsys, "klein", "--dim", "3", "--deg", "5", "--singularity",
                       "--format", "json")
    rep = json.loads(out)
    assert rep["p"] == 41
    assert rep["singularity"]["type"] == "1/41(15,17,9)"
    assert rep["singularity"]["gorenstein"] is True
    assert rep["smooth"] is True


def test_klein_extremal(capsys):
    rep = json.loads(run(capsys, "klein", "--dim", "3", "--deg", "3", "--format", "json")[1])
    assert rep["extremal"]["exists"] and rep["extremal"]["p"] == 11
    assert rep["signature"] == [1, 9, 4, 3, 5]
    rep = json.loads(run(capsys, "klein", "--dim", "4", "--deg", "3", "--format", "json")[1])
    assert rep["extremal"]["exists"] is False and rep["extremal"]["p"] is None


def test_jacobian(capsys):
    rep = json.loads(run(capsys, "jacobian", "--dim", "3", "--deg", "3", "--stabilizer", "5",
                         "--format", "json")[1])
    assert rep["g"] == 5 and rep["component_dimension"] == 3
    assert rep["permutation"] == "(2,10,6,8,7)"
    rep = json.loads(run(capsys, "jacobian", "--dim", "5", "--deg", "3", "--stabilizer", "11",
                         "--format", "json")[1])
    assert rep["g"] == 21 and rep["component_dimension"] == 33


def test_gorinov(capsys):
    rep = json.loads(run(capsys, "gorinov", "--dim", "2", "--deg", "3", "--check-conjecture",
                         "--format", "json")[1])
    assert rep["all_realizable"] and rep["bound"]["integral"]
    assert [e["p"] for e in rep["primes"]] == [2, 3, 5]
    code, out, _ = run(capsys, "gorinov", "--dim", "3", "--deg", "3")
    assert code == EXIT_OK and '"integral": true' in out


JSON_CASES = [
    ("admissible", ["admissible", "--dim", "3", "--deg", "4", "--list"]),
    ("admissible", ["admissible", "--dim", "3", "--deg", "4", "--check", "15"]),
    ("admissible", ["admissible", "--dim", "2", "--deg", "4", "--max"]),
    ("admissible", ["admissible", "--dim", "4", "--deg", "3", "--bound"]),
    ("admissible", ["admissible", "--dim", "5", "--deg", "4", "--new"]),
    ("table1", ["table", "--which", "1"]),
    ("table2", ["table", "--which", "2"]),
    ("klein", ["klein", "--dim", "3", "--deg", "5", "--singularity"]),
    ("klein", ["klein", "--dim", "4", "--deg", "3"]),
    ("jacobian", ["jacobian", "--dim", "3", "--deg", "4", "--stabilizer", "9"]),
    ("gorinov", ["gorinov", "--dim", "3", "--deg", "4", "--check-conjecture"]),
    ("gorinov", ["gorinov", "--dim", "2", "--deg", "3"]),
    ("witness", ["witness", "--dim", "2", "--deg", "3", "--prime", "5"]),
    ("factor", ["factor", "-244"]),
    ("cyclotomic", ["cyclotomic", "12", "--at", "-3"]),
]


@pytest.mark.parametrize("name,argv", JSON_CASES)
def test_json_outputs_validate_and_are_deterministic(capsys, name, argv):
    code, first, _ = run(capsys, *argv, "--format", "json")
    assert code == EXIT_OK
    jsonschema.validate(json.loads(first), schema(name))
    _, second, _ = run(capsys, *argv, "--format", "json")
    assert first == second


@pytest.mark.parametrize("fmt", ["plain", "markdown", "csv"])
def test_every_format_renders(capsys, fmt):
    for _, argv in JSON_CASES:
        code, out, _ = run(capsys, *argv, "--format", fmt)
        assert code == EXIT_OK and out.endswith("\n")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypaut", "admissible", "--dim", "3", "--deg", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "2, 3, 5, 7, 61\n"
    proc = subprocess.run([sys.executable, "-m", "hypaut", "gorinov", "--dim", "3", "--deg", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 64
