import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from shlab.cli import main

GOLDEN = Path(__file__).parent / "golden"
PROOFS = Path(__file__).parent.parent / "src" / "shlab" / "data" / "proofs"
# set SHLAB_UPDATE_GOLDEN=1 to rewrite the golden files after an intended change
UPDATE = os.environ.get("SHLAB_UPDATE_GOLDEN") == "1"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


DEDUCTION = "((x -> (x & y)) -> ((x -> (x & y)) & ((y' -> (y' & x')))))"

# name -> (argv, expected exit code)
CASES = {
    "algebra-show-L1dm": (["algebra", "show", "L1dm"], 0),
    "algebra-check-L1dp-DMSH": (["algebra", "check", "L1dp", "--class", "DMSH"], 1),
    "enumerate-3": (["enumerate", "--order", "3", "--class", "SH"], 0),
    "identity-deduction-L1dm": (["identity", "check", "--algebra", "L1dm", "--expr", DEDUCTION], 1),
    "identity-C1-L1dm": (["identity", "check", "--algebra", "L1dm", "--id", "C1"], 0),
    "base-verify-dm.L1": (["base", "verify", "--key", "dm.L1"], 0),
    "base-verify-adhoc": (["base", "verify", "--generators", "D1", "--ambient", "DQDBSH",
                           "--ids", "FTF"], 0),
    "logic-decide-dpcshc3": (["logic", "decide", "--logic", "DPCSHC3", "x | x'"], 0),
    "logic-decide-dmshc3": (["logic", "decide", "--logic", "DMSHC3", "x | x'"], 1),
    "free-2e-1": (["free", "--generators", "2e", "--arity", "1", "--terms"], 0),
    "member-L1dm-2e": (["member", "--algebra", "L1dm", "--generators", "2e"], 1),
    "member-D2": (["member", "--algebra", "D2", "--generators", "DQDBSH"], 0),
    "proof-check-top": (["proof", "check", str(PROOFS / "top.proof")], 0),
    "proof-check-mutation": (["proof", "check", str(PROOFS / "mut-join-demorgan-half--scp-forward.proof")], 1),
    "proof-search-scp": (["proof", "search", "--logic", "DHMSH", "--goal", "y' => x'",
                          "--premise", "x => y", "--depth", "2"], 0),
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_json(name, capsys):
    argv, want = CASES[name]
    code, out, _ = run(capsys, *argv, "--json")
    assert code == want
    doc = json.loads(out)
    assert doc["schema"] == "shlab/1" and doc["ok"] == (code == 0)
    path = GOLDEN / f"{name}.json"
    if UPDATE:
        path.write_text(out)
    assert out == path.read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_text_mode_exit_codes(name, capsys):
    argv, want = CASES[name]
    code, out, _ = run(capsys, *argv)
    assert code == want
    assert out.strip()


def test_spec_examples_text(capsys):
    code, out, _ = run(capsys, "identity", "check", "--algebra", "L1dm", "--expr", DEDUCTION)
    assert code == 1 and "x=1, y=a" in out
    code, out, _ = run(capsys, "enumerate", "--order", "3", "--class", "SH")
    assert code == 0 and "10 algebras" in out
    code, out, _ = run(capsys, "logic", "decide", "--logic", "DPCSHC3", "x | x'")
    assert code == 0 and "valid" in out


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["algebra", "show", "NOPE"],
    ["logic", "decide", "--logic", "DPCSHC3", "x | | y"],
    ["enumerate"],
    ["identity", "check", "--algebra", "L1dm"],
    ["logic", "decide", "--logic", "DHMSH", "x"],
    ["base", "verify", "--key", "no.such"],
    ["proof", "check", "/nonexistent.proof"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_undecided_message(capsys):
    code, _, err = run(capsys, "logic", "decide", "--logic", "DHMSH", "x")
    assert "undecided here" in err


def test_consequence_with_premise_file(tmp_path, capsys):
    f = tmp_path / "gamma.txt"
    f.write_text("x => y\n# comment\n\n")
    code, out, _ = run(capsys, "logic", "consequence", "--logic", "library", "--premises", str(f), "y' => x'")
    assert code == 0
    code, out, _ = run(capsys, "logic", "consequence", "--logic", "V(L1dm)", "x")
    assert code == 1


def test_list_commands(capsys):
    for argv in (["algebra", "list"], ["logic", "list"], ["base", "list", "--curated"],
                 ["registry", "dump", "--json"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and out.strip()
    code, out, _ = run(capsys, "registry", "dump")
    doc = json.loads(out)
    assert doc["command"] == "registry dump" and doc["ok"] and doc["result"]


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "enumerate" in out


def test_cap_env_var(capsys, monkeypatch):
    monkeypatch.setenv("SHLAB_MAX_CLOSURE", "10")
    code, _, err = run(capsys, "free", "--generators", "L1dm", "--arity", "1")
    assert code == 2 and "cap" in err.lower()


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "shlab", "base", "verify", "--key", "rdq.D2", "--json"]
    a = subprocess.run(argv, capture_output=True, text=True)
    b = subprocess.run(argv, capture_output=True, text=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_console_script_installed():
    r = subprocess.run(["shlab", "logic", "decide", "--logic", "L(2ebar)", "(0 -> 1) => 0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "valid" in r.stdout
