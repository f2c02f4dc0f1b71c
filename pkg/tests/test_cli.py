import json
import subprocess
import sys
from pathlib import Path

import pytest

from coopshare.cli import main
from coopshare.io import game_from_json

DATA = Path(__file__).resolve().parent.parent / "data"
EX3 = str(DATA / "example3.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def ex2_game(tmp_path, capsys):
    path = tmp_path / "ex2.json"
    assert run(capsys, "exchange", str(DATA / "example2_bids.json"), "-o", str(path))[0] == 0
    return str(path)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.mark.parametrize(
    "method, payments",
    [
        ("vickrey", ["5", "7", "2"]),
        ("esv", ["5/2", "7/2", "1"]),
        ("isv", ["5/2", "7/2", "1"]),
        ("ea", ["5/2", "5/2", "2"]),
    ],
)
def test_compute_json(capsys, method, payments):
    code, out, _ = run(capsys, "compute", EX3, "--method", method, "--json")
    assert code == 0
    data = json.loads(out)
    assert data.get("payments", data.get("final")) == payments


def test_compute_wea_vickrey_table(capsys):
    code, out, _ = run(capsys, "compute", EX3, "--method", "wea", "--weights", "vickrey")
    assert code == 0
    assert "round 1: {1,2,3} average 1/2" in out
    rows = [line.split() for line in out.splitlines()[-3:]]
    assert rows == [["1", "5/2", "5"], ["2", "7/2", "7"], ["3", "1", "2"]]


def test_compute_table_matches_json(capsys):
    _, table, _ = run(capsys, "compute", EX3, "--method", "threshold", "--budget", "6")
    _, raw, _ = run(capsys, "compute", EX3, "--method", "threshold", "--budget", "6", "--json")
    data = json.loads(raw)
    assert f"threshold {data['threshold']}" in table
    for line, pay in zip(table.splitlines()[-3:], data["payments"]):
        assert line.split()[1] == pay


def test_compute_errors(capsys, tmp_path, ex2_game):
    assert run(capsys, "compute", EX3, "--method", "esv", "--budget", "100")[0] == 1
    assert run(capsys, "compute", EX3, "--method", "esv", "--budget", "x")[0] == 2
    assert run(capsys, "compute", str(tmp_path / "none.json"), "--method", "esv")[0] == 2
    w = write(tmp_path, "w.json", {"weights": ["1", "2"]})
    assert run(capsys, "compute", EX3, "--method", "wea", "--weights", w)[0] == 2
    code, out, _ = run(capsys, "compute", ex2_game, "--method", "isv")
    assert code == 0


def test_check_core(capsys, tmp_path, ex2_game):
    esv = write(tmp_path, "esv.json", {"payoffs": ["9/4", "3/4", "0", "9/4", "3/4"]})
    code, out, _ = run(capsys, "check", ex2_game, "--core", esv)
    assert code == 1
    assert out == "not in core: coalition {s1,d2} is paid 9/2 < 5\n"
    isv = write(tmp_path, "isv.json", {"payoffs": ["5/2", "1/2", "0", "5/2", "1/2"]})
    assert run(capsys, "check", ex2_game, "--core", isv)[:2] == (0, "in core\n")
    code, out, _ = run(capsys, "check", ex2_game, "--core", esv, "--json")
    assert json.loads(out)["violated"] == ["s1", "d2"]
    short = write(tmp_path, "short.json", {"payoffs": ["1"]})
    assert run(capsys, "check", ex2_game, "--core", short)[0] == 2


def test_check_properties(capsys, ex2_game):
    assert run(capsys, "check", EX3, "--convex")[:2] == (0, "convex\n")
    code, out, _ = run(capsys, "check", ex2_game, "--convex", "--json")
    assert code == 1 and len(json.loads(out)["witness"]) == 2
    assert run(capsys, "check", ex2_game, "--superadditive")[0] == 0


def test_check_imputation(capsys, tmp_path):
    good = write(tmp_path, "a.json", {"payoffs": ["3", "3", "1"]})
    bad = write(tmp_path, "b.json", {"payoffs": ["3", "3", "0"]})
    assert run(capsys, "check", EX3, "--imputation", good)[0] == 0
    assert run(capsys, "check", EX3, "--imputation", bad)[0] == 1


def test_lorenz(capsys, tmp_path):
    a = write(tmp_path, "a.json", {"payoffs": ["3", "3"]})
    b = write(tmp_path, "b.json", {"payoffs": ["2", "4"]})
    assert run(capsys, "lorenz", "--dominates", a, b)[:2] == (0, "dominates\n")
    assert json.loads(run(capsys, "lorenz", "--dominates", b, a, "--json")[1]) == {"verdict": "dominated_by"}
    code, out, _ = run(capsys, "lorenz", "--curve", b, "--json")
    assert code == 0 and json.loads(out)[-1] == ["2", "6"]
    w = write(tmp_path, "w.json", {"weights": ["1", "0"]})
    assert run(capsys, "lorenz", "--curve", b, "--weights", w)[0] == 2


def test_exchange_and_gen(capsys, tmp_path):
    code, out, _ = run(capsys, "exchange", str(DATA / "example1_bids.json"))
    g = game_from_json(json.loads(out))
    assert g.total == 5 and g.labels == ("s1", "d1", "d2")
    one = run(capsys, "gen", "--convex", "--players", "5", "--seed", "4")[1]
    two = run(capsys, "gen", "--convex", "--players", "5", "--seed", "4")[1]
    assert one == two and game_from_json(json.loads(one)).n == 5
    assert run(capsys, "gen", "--convex", "--players", "13")[0] == 2


def test_seed_from_environment(capsys, monkeypatch):
    base = run(capsys, "gen", "--convex", "--players", "4", "--seed", "9")[1]
    monkeypatch.setenv("COOPSHARE_SEED", "9")
    assert run(capsys, "gen", "--convex", "--players", "4", "--seed", "1")[1] == base
    monkeypatch.setenv("COOPSHARE_SEED", "nine")
    assert run(capsys, "gen", "--convex", "--players", "4")[0] == 2


def test_verify_small(capsys):
    argv = ["verify", "--count", "4", "--sizes", "3-4", "--lemma-pairs", "20", "--samples", "4"]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.startswith("seed 0: pass ")
    code, out, _ = run(capsys, *argv, "--json", "--no-examples")
    data = json.loads(out)
    assert data["summary"]["fail"] == 0
    assert not any(c["game"].startswith("example") for c in data["checks"])
    assert run(capsys, "verify", "--sizes", "3-x")[0] == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "coopshare", "compute", EX3, "--method", "vickrey"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and "vickrey" in res.stdout
