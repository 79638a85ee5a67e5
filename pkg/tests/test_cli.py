import json
import subprocess
import sys

import pytest

from srplab.cli import main
from srplab.srp import ThresholdReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_srp_table(capsys):
    code, out, _ = run(capsys, "srp", "--gens", "4,5,11", "--max-power", "3")
    lines = out.splitlines()
    assert code == 0
    assert "l=1  HOLDS" in lines[1]
    assert "l=2  FAILS" in lines[2] and "t^11" in lines[2]
    assert "l=3  FAILS   Propagated" in lines[3]
    assert lines[-1] == "threshold: 1"


def test_expect_holds_exit_codes(capsys):
    assert run(capsys, "srp", "--gens", "4,5,11", "--max-power", "2", "--expect", "holds")[0] == 1
    assert run(capsys, "srp", "--gens", "3,4,5", "--max-power", "3", "--expect", "holds")[0] == 0


def test_semigroup_info_for_naturals(capsys):
    code, out, _ = run(capsys, "semigroup", "--gens", "1", "info")
    assert code == 0 and "genus 0" in out


@pytest.mark.parametrize("argv", [
    ["srp", "--gens", "4,5,11"],
    ["bogus"],
    ["ideal", "--gens", "4,5,11", "frobnicate"],
    ["srp", "--gens", "4,5,11", "--max-power", "0"],
    ["--threads", "0", "cone", "--gens", "3,4,5"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


@pytest.mark.parametrize("argv", [
    ["semigroup", "--gens", "4,6"],
    ["ideal", "--gens", "4,5,11", "--monomials", "t^7", "mu"],
    ["ideal", "--gens", "4,5,11", "--power", "2", "colon"],
    ["graph", "analyze", "/nonexistent.json"],
])
def test_input_errors_exit_2(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("srplab: error:")


def test_ideal_operations(capsys):
    base = ["ideal", "--gens", "4,5,11", "--power", "2"]
    assert json.loads(run(capsys, *base, "mu", "--json")[1])["result"] == 7
    assert json.loads(run(capsys, *base, "e", "--json")[1])["result"] == 16
    ic = json.loads(run(capsys, *base, "ic", "--json")[1])["result"]
    assert "t^11" in ic.split("; ")
    rr = json.loads(run(capsys, *base, "rr", "--json")[1])
    assert rr["certificate"] == "power-of-max"
    colon = json.loads(run(capsys, "ideal", "--gens", "4,5,11", "--power", "3", "colon", "--by", "s", "--json")[1])
    assert colon["result"] == "t^8; t^9; t^10; s*t^4; s*t^5; s*t^11; s^2"
    mono = run(capsys, "ideal", "--gens", "4,5,11", "--monomials", "s^2 ; s*t^4;t^8", "ll")[1]
    assert mono.startswith("ll(")


def test_global_flags_before_or_after_subcommand(capsys):
    a = run(capsys, "--json", "cone", "--gens", "4,5,11")[1]
    b = run(capsys, "cone", "--gens", "4,5,11", "--json")[1]
    assert a == b and json.loads(a)["cone"]["failure_witness"] == 11


@pytest.mark.parametrize("argv", [
    ["srp", "--gens", "10,11,79", "--max-power", "4"],
    ["dao", "--gens", "4,5,11", "--max-power", "3", "--monomials", "t^8; t^9; t^10; t^11; s*t^4; s*t^5; s^2"],
    ["pgcheck", "--ordinary-genus", "2", "--max-power", "6"],
    ["graph", "analyze", "--named", "D4", "--bound", "2", "--candidates"],
    ["hyper", "--dim", "3", "--deg", "5", "--smax", "50", "--values"],
])
def test_json_is_deterministic(argv, capsys):
    first = run(capsys, *argv, "--json")[1]
    second = run(capsys, *argv, "--json")[1]
    assert first == second
    data = json.loads(first)
    assert json.dumps(data, sort_keys=True, indent=2) + "\n" == first


def test_srp_json_round_trips_to_report(capsys):
    out = run(capsys, "srp", "--gens", "4,5,11", "--max-power", "3", "--json")[1]
    rep = ThresholdReport.from_dict(json.loads(out))
    assert json.dumps(rep.to_dict(), sort_keys=True, indent=2) + "\n" == out


def test_graph_file(tmp_path, capsys):
    path = tmp_path / "a2.json"
    path.write_text('{"vertices":[{"self":-2,"genus":0},{"self":-2,"genus":0}],"edges":[[0,1]]}')
    data = json.loads(run(capsys, "graph", "analyze", str(path), "--bound", "2", "--json")[1])
    assert data["fundamental_cycle"] == [1, 1] and data["rational"]
    assert [g["Z"] for g in data["gaps"]] == [[1, 1], [1, 2], [2, 1], [2, 2]]


def test_pgcheck_plain(capsys):
    code, out, _ = run(capsys, "pgcheck", "--ordinary-genus", "3", "--max-power", "4")
    assert code == 0 and "m^2 = Q m: True" in out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "srplab.cli", "hyper", "--dim", "2", "--deg", "4", "--smax", "20"],
                          capture_output=True, text=True, check=True)
    assert "sup c(s) = 3" in proc.stdout
