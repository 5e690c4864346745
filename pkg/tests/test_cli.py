import json
import re
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from coalform import report
from coalform.cli import main

DATA = resources.files("coalform") / "data"
NUMBER = re.compile(r"-?\d+(?:\.\d+)?(?:e[-+]?\d+)?(?:/\d+)?")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def leaves(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from leaves(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from leaves(v)
    else:
        yield obj


def numbers_in(text):
    return set(NUMBER.findall(text))


def json_numbers(doc):
    found = set()
    for leaf in leaves(doc):
        if isinstance(leaf, bool):
            continue
        found |= numbers_in(str(leaf))
    return found


def test_enumerate_structures(capsys):
    code, out, err = run(capsys, "enumerate", "--players", 3, "--max-size", 2, "--structures", "--json")
    assert code == 0 and not err
    doc = json.loads(out)
    assert doc["count"] == 4
    assert doc["structures"] == ["1|2|3", "1|2,3", "1,3|2", "1,2|3"]


def test_enumerate_single(capsys):
    code, out, _ = run(capsys, "enumerate", "--players", 1, "--max-size", 1)
    assert code == 0
    assert out.splitlines() == ["players=1 max_size=1 count=1", "1"]


def test_enumerate_diagrams(capsys):
    code, out, _ = run(capsys, "enumerate", "--players", 3, "--max-size", 2, "--diagrams", "--json")
    assert json.loads(out)["diagrams"] == [[2, 1], [1, 1, 1]]


def test_enumerate_bad_bounds(capsys):
    code, out, err = run(capsys, "enumerate", "--players", 2, "--max-size", 3)
    assert code == 1 and not out and "error" in err


def test_solve_pure_pd(capsys):
    code, out, _ = run(capsys, "solve", "--spec", DATA / "pd.json", "--method", "pure", "--json")
    assert code == 0
    eqs = json.loads(out)["equilibria"]
    picked = [tuple(s[0]["choice"] for s in e["support"]) for e in eqs]
    assert picked == [("(1|2,H)", "(1|2,H)"), ("(1|2,H)", "(1,2,H)"),
                      ("(1,2,H)", "(1|2,H)"), ("(1,2,H)", "(1,2,H)")]
    assert all(e["payoffs"] == ["-2", "-2"] for e in eqs)


def test_solve_support_pd_component(capsys):
    code, out, _ = run(capsys, "solve", "--spec", DATA / "pd.json", "--json")
    comp = [e for e in json.loads(out)["equilibria"] if e["component"]]
    assert comp[0]["structure_distribution"] == [{"structure": "1|2", "probability": "3/4"},
                                                 {"structure": "1,2", "probability": "1/4"}]


def test_invalid_spec_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"players": []}')
    code, out, err = run(capsys, "solve", "--spec", bad)
    assert code == 1 and not out and "players" in err
    code, _, err = run(capsys, "solve", "--spec", tmp_path / "missing.json")
    assert code == 1 and "cannot read" in err


def test_nonconvergence_exit_2(capsys):
    code, out, err = run(capsys, "solve", "--spec", DATA / "pd_k1.json", "--method", "replicator",
                         "--steps", 1, "--no-polish")
    assert code == 2 and not out and "replicator" in err


def test_replicator_cli(capsys):
    code, out, _ = run(capsys, "solve", "--spec", DATA / "pennies.json", "--method", "replicator", "--json")
    assert code == 0
    assert json.loads(out)["equilibria"][0]["converged"]


def test_stability_strong(capsys):
    code, out, _ = run(capsys, "stability", "--spec", DATA / "pd_k1.json", DATA / "pd.json",
                       "--criterion", "strong", "--json")
    assert code == 0
    verdict = json.loads(out)["verdicts"][0]
    assert not verdict["stable"]
    assert "structure distribution mass 3/4 on separated (1|2)" in [w["reason"] for w in verdict["witnesses"]]
    code, out, _ = run(capsys, "stability", "--spec", DATA / "pd-raised_k1.json", DATA / "pd-raised.json",
                       "--criterion", "strong", "--json")
    assert json.loads(out)["verdicts"][0]["stable"]


def test_stability_local_table(capsys):
    code, out, _ = run(capsys, "stability", "--spec", DATA / "pd_k1.json", DATA / "pd.json",
                       "--criterion", "local", "--k", 2)
    assert code == 0
    assert "local K=2: stable" in out


def test_example_round_trip(capsys, tmp_path):
    target = tmp_path / "pd.json"
    code, _, _ = run(capsys, "example", "pd", "--payoffs", "1,-1,2,0", "--out", target)
    assert code == 0
    code, out, _ = run(capsys, "solve", "--spec", target, "--method", "pure", "--json")
    eqs = json.loads(out)["equilibria"]
    assert eqs and all(s[0]["choice"].endswith(",H)") for e in eqs for s in e["support"])
    code, _, err = run(capsys, "example", "pd", "--payoffs", "1,2", "--out", target)
    assert code == 1 and "four values" in err


SCHEMA_CASES = [
    ("enumerate", "--players", 4, "--max-size", 2, "--structures"),
    ("enumerate", "--players", 5, "--max-size", 3, "--diagrams"),
    ("solve", "--spec", DATA / "pd.json"),
    ("solve", "--spec", DATA / "pennies.json"),
    ("solve", "--spec", DATA / "three_players.json", "--method", "auto"),
    ("solve", "--spec", DATA / "pd.json", "--method", "replicator"),
    ("stability", "--spec", DATA / "pd_k1.json", DATA / "pd.json", "--criterion", "global"),
    ("stability", "--spec", DATA / "pd_k1.json", DATA / "pd.json", "--criterion", "strong"),
]


@pytest.mark.parametrize("argv", SCHEMA_CASES, ids=lambda a: " ".join(map(str, a[:2])))
def test_json_schema_and_table_agreement(capsys, argv):
    code, out_json, _ = run(capsys, *argv, "--json")
    assert code == 0
    doc = json.loads(out_json)
    jsonschema.validate(doc, report.schema())
    code, out_table, _ = run(capsys, *argv)
    assert numbers_in(out_table) <= json_numbers(doc)


@pytest.mark.parametrize("argv", SCHEMA_CASES[2:4] + SCHEMA_CASES[6:], ids=lambda a: " ".join(map(str, a[:2])))
def test_deterministic_json(capsys, argv):
    first = run(capsys, *argv, "--json")[1]
    assert run(capsys, *argv, "--json")[1] == first


def test_entry_point_subprocess():
    out = subprocess.run([sys.executable, "-m", "coalform", "enumerate", "--players", "3", "--max-size", "3"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.splitlines()[0] == "players=3 max_size=3 count=5"
