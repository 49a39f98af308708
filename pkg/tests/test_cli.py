"""Command-line interface: outputs, exit codes, replay."""

import json
import subprocess
import sys

import pytest

from hallcluster.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from hallcluster.mutation import initial_seed
from hallcluster.quiver import kronecker


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_char_example(capsys):
    code, out, _ = run(capsys, "char", "--quiver", "kronecker.json", "--field", "2,2", "--module", "M(1)", "--json")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert sorted(tuple(t["exp"]) for t in obj["terms"]) == [(0, -1), (2, -1)]
    assert obj["provenance"]["module_dims"] == [0, 1]


def test_char_shifted(capsys):
    code, out, _ = run(capsys, "char", "--module", "S1", "--injective", "I2", "--json")
    assert code == EXIT_OK
    assert sorted(tuple(t["exp"]) for t in json.loads(out)["terms"]) == [(-1, 1), (-1, 3)]


def test_json_is_byte_deterministic(capsys):
    argv = ("psi", "--module", "M(1)", "--module", "N(1)", "--json")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and a.endswith("\n")


def test_mutate_palindrome_restores(capsys):
    code, out, _ = run(capsys, "mutate", "--quiver", "kronecker.json", "--seq", "1,2,1", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["history"] == [1, 2, 1]
    _, out, _ = run(capsys, "mutate", "--seq", "1,2,1,1,2,1", "--json")
    obj = json.loads(out)
    start = initial_seed(kronecker())
    assert obj["Btilde"] == [list(r) for r in start.Btilde]
    assert obj["cluster"] == [x.to_json()["terms"] for x in start.cluster]


def test_mutate_from_seed_file(capsys, tmp_path):
    _, out, _ = run(capsys, "mutate", "--seq", "1", "--json")
    path = tmp_path / "seed.json"
    path.write_text(out)
    _, back, _ = run(capsys, "mutate", "--seed", str(path), "--seq", "1", "--json")
    assert json.loads(back)["cluster"] == [x.to_json()["terms"] for x in initial_seed(kronecker()).cluster]


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--vector", "1,0", "--direction", "1", "--json")
    assert code == EXIT_OK
    assert sorted(tuple(t["exp"]) for t in json.loads(out)["terms"]) == [(-1, 0), (-1, 2)]


def test_hall_star_needs_two(capsys):
    code, _, err = run(capsys, "hall-star", "--module", "S1")
    assert code == EXIT_USAGE and err


def test_hall_star(capsys):
    code, out, _ = run(capsys, "hall-star", "--field", "2,1", "--module", "S1", "--module", "S2", "--json")
    assert code == EXIT_OK and json.loads(out)


@pytest.mark.parametrize(
    "argv",
    [
        ("char", "--module", "Q(1)"),
        ("char", "--field", "4,1", "--module", "S1"),
        ("char", "--quiver", "nosuchquiver", "--module", "S1"),
        ("mutate", "--seq", "3"),
        ("mutate", "--seq", "a,b"),
        ("verify", "--suite", "nope"),
        ("verify",),
        ("frobnicate",),
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_cap_exit_code(capsys):
    code, _, err = run(capsys, "char", "--module", "M(3)", "--cap", "1")
    assert code == EXIT_CAP
    assert "cap" in err


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "kronecker-recursion")
    assert code == EXIT_OK and "pass" in out
    code, out, _ = run(capsys, "verify", "--suite", "shift-monomials", "--seed-name", "A3", "--field", "3,1", "--json")
    assert code == EXIT_OK and json.loads(out)[0]["status"] == "pass"


def test_verify_inconclusive_exit(capsys):
    assert run(capsys, "verify", "--suite", "multi2", "--field", "2,1", "--cap", "1")[0] == EXIT_CAP


def test_verify_config_and_golden(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"matrix": [["A2", [2, 1]]], "suites": ["compat", "euler"]}))
    gold = tmp_path / "gold"
    code, _, _ = run(capsys, "verify", "--all", "--config", str(cfg), "--golden", str(gold))
    assert code == EXIT_OK
    assert len(list((gold / "v1").iterdir())) == 2


def test_verify_failure_exit(capsys, tmp_path, monkeypatch):
    from hallcluster import verify

    def broken(env, rec, params):
        rec.add("x", "forced", False, {"lhs": 0, "rhs": 1})

    monkeypatch.setitem(verify._RUNNERS, "compat", broken)
    assert run(capsys, "verify", "--suite", "compat")[0] == EXIT_FAIL


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--field", "2,1", "--json")
    assert code == EXIT_OK
    names = set(json.loads(out))
    assert {"S1", "P2", "I1", "M(3)", "N(2)", "R(1)@lambda=inf"} <= names
    _, out, _ = run(capsys, "catalog", "--quiver", "A3", "--field", "2,1", "--json")
    assert {"[1,1]", "[1,3]", "[2,3]"} <= set(json.loads(out))


def test_catalog_random_seeded(capsys):
    argv = ("catalog", "--random", "2,2", "--rng-seed", "5", "--json")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_seed_dump_replay(capsys, tmp_path):
    dump = tmp_path / "dump.json"
    code, out, _ = run(capsys, "psi", "--module", "M(2)", "--json", "--seed-dump", str(dump))
    assert code == EXIT_OK
    rec = json.loads(dump.read_text())
    assert "--seed-dump" not in rec["argv"] and rec["exit_code"] == 0
    code, again, _ = run(capsys, "replay", str(dump))
    assert code == EXIT_OK and again == out
    rec["output_sha256"] = "0" * 64
    dump.write_text(json.dumps(rec))
    assert run(capsys, "replay", str(dump))[0] == EXIT_FAIL


def test_console_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hallcluster", "char", "--module", "S2", "--json"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["terms"]
