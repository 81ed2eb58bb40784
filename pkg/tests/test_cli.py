import json
import subprocess
import sys

import pytest

from teamcheck import oracle
from teamcheck.cli import main

SMALL = ["--bounds", "max_worlds=2", "variables=p"]

TWO_WORLDS = {
    "variables": ["p"],
    "worlds": ["w1", "w2"],
    "edges": [],
    "valuation": {"p": ["w1"]},
    "teams": {"both": ["w1", "w2"], "second": ["w2"]},
}

CHAIN = {
    "variables": ["p"],
    "worlds": ["a", "b"],
    "edges": [["a", "b"]],
    "valuation": {"p": ["b"]},
    "teams": {"root": ["a"], "all": ["a", "b"]},
}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, data in (("t6", TWO_WORLDS), ("chain", CHAIN)):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(data))
        paths[name] = str(path)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_sat(files, capsys):
    code, out, _ = run(capsys, "check", "--model", files["t6"], "--team", "both", "--formula", "E p")
    assert code == 0
    assert out.startswith("SAT")


def test_check_unsat(files, capsys):
    code, out, _ = run(capsys, "check", "--model", files["t6"], "--team", "second", "--formula", "E p")
    assert code == 1
    assert out.startswith("UNSAT")


def test_check_json_agrees_with_text(files, capsys):
    for team, holds in (("both", True), ("second", False)):
        code, out, _ = run(
            capsys, "check", "--json", "--model", files["t6"], "--team", team, "--formula", "E p"
        )
        payload = json.loads(out)
        assert payload["holds"] is holds
        assert payload["verdict"] == ("SAT" if holds else "UNSAT")
        assert code == (0 if holds else 1)


def test_bisim_not_zero_bisimilar(files, capsys):
    code, out, _ = run(
        capsys, "bisim", "--model-a", files["t6"], "--team-a", "both",
        "--model-b", files["t6"], "--team-b", "second", "--k", "0",
    )
    assert code == 1
    assert "not 0-bisimilar" in out
    assert "separated at k=0" in out


def test_bisim_same_team(files, capsys):
    code, out, _ = run(
        capsys, "bisim", "--model-a", files["chain"], "--team-a", "root",
        "--model-b", files["chain"], "--team-b", "root",
    )
    assert code == 0
    assert out.strip() == "bisimilar"


def test_hintikka_world_and_team(files, capsys):
    code, out, _ = run(capsys, "hintikka", "--model", files["chain"], "--world", "b", "--k", "0")
    assert code == 0 and out.strip() == "p"
    code, out, _ = run(capsys, "hintikka", "--json", "--model", files["chain"], "--team", "all", "--k", "1")
    assert code == 0
    assert len(json.loads(out)["hintikka_set"]) == 2


def test_translate(files, capsys):
    code, out, _ = run(capsys, "translate", "--formula", "<>p")
    assert code == 0 and out.strip() == "exists y. E(x, y) & W_p(y)"
    code, out, _ = run(capsys, "translate", "--chi", "--model", files["t6"], "--team", "both", "--k", "0")
    assert code == 0 and out.strip()


def test_express_targets(files, tmp_path, capsys):
    cls = tmp_path / "class.json"
    cls.write_text(json.dumps([{"model": "t6.json", "team": "both"}]))
    for target in ("mtl", "fo", "atom"):
        code, out, _ = run(capsys, "express", "--class", str(cls), "--k", "0", "--target", target)
        assert code == 0 and out.strip()


def test_equiv_and_properties(capsys):
    code, out, _ = run(capsys, "equiv", "--formula-a", "p & p", "--formula-b", "p", "--max-worlds", "2")
    assert code == 0 and out.startswith("VERIFIED")
    code, out, _ = run(capsys, "equiv", "--formula-a", "<>p", "--formula-b", "[]p", "--max-worlds", "2")
    assert code == 1 and out.startswith("FALSIFIED") and "counterexample:" in out
    code, out, _ = run(capsys, "properties", "--formula", "E p", "--check", "downward-closed", "--max-worlds", "2")
    assert code == 1
    code, out, _ = run(capsys, "properties", "--formula", "<>p", "--check", "invariance", "--k", "1", "--max-worlds", "2")
    assert code == 0


def test_locality_flag(capsys):
    code, _, _ = run(
        capsys, "properties", "--formula", "<>p", "--check", "local", "--d", "1",
        "--undirected", "--max-worlds", "2",
    )
    assert code == 0
    code, _, err = run(capsys, "properties", "--formula", "<>p", "--check", "local")
    assert code == 2 and "--d" in err


def test_random_is_deterministic(capsys):
    argv = ["random", "--seed", "7", "--worlds", "3", "--edge-prob", "0.5", "--vars", "p,q"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert json.loads(first)["worlds"]


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--model", "/nonexistent.json", "--team", "x", "--formula", "p"],
        ["frobnicate"],
        ["hintikka", "--model", "M", "--k", "0"],
        ["random", "--seed", "1", "--worlds", "0", "--edge-prob", "0.5", "--vars", "p"],
        ["random", "--seed", "1", "--worlds", "2", "--edge-prob", "2", "--vars", "p"],
        ["suite", "--bounds", "nonsense"],
        ["suite", "--bounds", "max_worlds=x"],
    ],
)
def test_usage_and_data_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("teamcheck:") or "usage" in err


def test_bad_formula_and_team(files, capsys):
    code, _, err = run(capsys, "check", "--model", files["t6"], "--team", "both", "--formula", "p &")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "check", "--model", files["t6"], "--team", "nope", "--formula", "p")
    assert code == 2


def test_team_cap_from_environment(files, capsys, monkeypatch):
    monkeypatch.setenv("TEAMCHECK_MAX_TEAM", "1")
    code, _, err = run(capsys, "check", "--model", files["t6"], "--team", "both", "--formula", "E p | E p")
    assert code == 2 and "exceeds cap 1" in err
    monkeypatch.setenv("TEAMCHECK_MAX_TEAM", "x")
    code, _, _ = run(capsys, "check", "--model", files["t6"], "--team", "both", "--formula", "p")
    assert code == 2


def test_suite_small_bounds(capsys):
    code, out, _ = run(capsys, "suite", *SMALL)
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == len(oracle.SUITE)
    for name, line in zip(oracle.SUITE, lines):
        assert line.startswith(f"VERIFIED  {name}:")
        assert not line.endswith("s)")


def test_suite_is_byte_stable_without_timing(capsys):
    argv = ["suite", *SMALL, "--only", "type-counts", "inclusion-separation"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    _, timed, _ = run(capsys, *argv, "--timing")
    assert timed != first and timed.rstrip().endswith("s)")


def test_suite_json(capsys):
    code, out, _ = run(capsys, "suite", "--json", *SMALL, "--only", "type-counts")
    payload = json.loads(out)
    assert code == 0
    assert [r["claim"] for r in payload["reports"]] == ["type-counts"]
    assert "seconds" not in payload["reports"][0]


def test_suite_mutation_falsifies_characterization(capsys):
    code, out, _ = run(capsys, "suite", *SMALL, "--only", "team-characterization", "--mutate")
    assert code == 1
    assert out.startswith("FALSIFIED team-characterization")
    assert "counterexample:" in out


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "teamcheck", "check", "--model", files["t6"], "--team", "both", "--formula", "E p"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("SAT")
