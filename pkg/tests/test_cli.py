from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gtkcenter.cli import EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_OK, main
from gtkcenter.core import graph_from_json
from gtkcenter.gridtiling import instance_from_json, instance_to_json, is_b_covered
from gtkcenter.reduction import parse_label

from conftest import t1_instance, unsolvable_instance


@pytest.fixture
def t1_file(tmp_path):
    path = tmp_path / "t1.json"
    path.write_text(instance_to_json(t1_instance()))
    return path


def run(capsys, *argv) -> tuple[int, str]:
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_gen_is_deterministic(capsys):
    code, first = run(capsys, "gen", "--chi", 2, "--n", 3, "--seed", 4)
    assert code == EXIT_OK
    _, second = run(capsys, "gen", "--chi", 2, "--n", 3, "--seed", 4)
    assert first == second
    assert instance_from_json(first).chi == 2


def test_augment(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(instance_to_json(unsolvable_instance()))
    code, out = run(capsys, "augment", path)
    assert code == EXIT_OK
    aug = instance_from_json(out)
    assert aug.n == 4 and is_b_covered(aug)


def test_reduce_and_export(capsys, t1_file, tmp_path):
    code, out = run(capsys, "reduce", t1_file)
    assert code == EXIT_OK
    assert len(graph_from_json(out, parse_label)) == 37
    target = tmp_path / "t1.dot"
    assert run(capsys, "export", t1_file, "--format", "dot", "--out", target)[0] == EXIT_OK
    assert target.read_text().startswith("graph G {")


def test_solve_gt(capsys, t1_file, tmp_path):
    code, out = run(capsys, "solve-gt", t1_file)
    assert code == EXIT_OK and json.loads(out)["chosen"] in ([[[1, 1]]], [[[2, 2]]])
    path = tmp_path / "bad.json"
    path.write_text(instance_to_json(unsolvable_instance()))
    assert json.loads(run(capsys, "solve-gt", path)[1]) == {"chosen": None}


def test_solve_kcenter_modes(capsys, t1_file, tmp_path):
    code, out = run(capsys, "solve-kcenter", t1_file)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["centers"]) <= 5 and doc["cost"] == "8/1"
    doc = json.loads(run(capsys, "solve-kcenter", t1_file, "--approx")[1])
    assert len(doc["centers"]) == 5
    graph_file = tmp_path / "g.json"
    run(capsys, "reduce", t1_file, "--out", graph_file)
    doc = json.loads(run(capsys, "solve-kcenter", "--graph", graph_file, "--k", 5, "--radius", "15/2")[1])
    assert doc == {"centers": None, "cost": None}
    assert run(capsys, "solve-kcenter", "--graph", graph_file)[0] == EXIT_INPUT


def test_verify(capsys, t1_file):
    code, out = run(capsys, "verify", t1_file, "--id", "t1", "--optimum")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["structure"]["passed"]
    assert doc["verdict"]["agree"] and doc["verdict"]["instance_id"] == "t1"
    assert doc["verdict"]["optimum_cost"] == "8/1"


def test_params(capsys, t1_file):
    code, out = run(capsys, "params", t1_file)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert set(doc) >= {"kappa", "hd", "doubling", "pathwidth"}
    assert doc["doubling"]["passes_d"] == 3


def test_sweep(capsys, tmp_path):
    code, out = run(capsys, "sweep", "--chi", "1,2", "--n", 2, "--seeds", 2, "--out", tmp_path / "s", "--no-params")
    assert code == EXIT_OK
    assert len(out.strip().splitlines()) == 5
    assert run(capsys, "sweep", "--chi", 1)[0] == EXIT_INPUT


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "verify", tmp_path / "missing.json")[0] == EXIT_INPUT
    assert run(capsys, "verify")[0] == EXIT_INPUT
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert run(capsys, "reduce", broken)[0] == EXIT_INPUT
    # a non-covered instance cannot be built directly
    assert run(capsys, "reduce", "--chi", 2, "--n", 2, "--pairs", 1, "--direct")[0] == EXIT_INPUT
    code = main(["verify", "--chi", "2", "--n", "2", "--seed", "1", "--budget-nodes", "1"])
    assert code == EXIT_INCONCLUSIVE
    code = main(["params", "--chi", "2", "--n", "2", "--budget-vertices", "5", "--budget-doubling", "5"])
    assert code == EXIT_OK
    assert EXIT_FAIL == 1


def test_module_entry_point(t1_file):
    proc = subprocess.run(
        [sys.executable, "-m", "gtkcenter", "solve-gt", str(t1_file)], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "chosen" in proc.stdout
