import json
import shutil
import subprocess
import sys

import pytest

from higherar.algebra import lambda_n
from higherar.cli import main
from higherar.rep import projective


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None, err


def test_algebra_build(capsys, tmp_path):
    code, doc, _ = run_json(capsys, "algebra", "build", "--named", "lambda2")
    assert code == 0 and doc["dim"] == 5
    path = tmp_path / "alg.json"
    doc.pop("dim")
    doc.pop("basis")
    path.write_text(json.dumps(doc))
    code, again, _ = run_json(capsys, "algebra", "build", "--algebra", str(path))
    assert code == 0 and again["dim"] == 5


def test_module_json_round_trip(capsys, tmp_path):
    L = lambda_n(2)
    path = tmp_path / "p0.json"
    path.write_text(json.dumps(projective(L, 0).to_json()))
    code, doc, _ = run_json(capsys, "rep", "hom", "--named", "lambda2", str(path), "P:0")
    assert code == 0
    code2, doc2, _ = run_json(capsys, "rep", "hom", "--named", "lambda2", "P:0", "P:0")
    assert doc == doc2


def test_homology_conditions(capsys):
    code, doc, _ = run_json(capsys, "homology", "conditions", "--named", "aus:A3")
    assert code == 0
    assert doc["gl_dim"] == 2


def test_cluster_verify_and_mn(capsys):
    code, doc, _ = run_json(capsys, "cluster", "verify", "--named", "lambda2",
                            "--modules", "P:0", "P:1", "P:2", "S:0", "--n", "2")
    assert code == 0 and doc["holds"]
    code, doc, _ = run_json(capsys, "cluster", "verify", "--named", "lambda2",
                            "--modules", "P:0", "P:1", "P:2", "--n", "2")
    assert code == 1 and not doc["holds"]


def test_grid_dot_matches_golden(capsys, golden):
    code, out, _ = run(capsys, "higher", "qn", "--type", "A4", "--n", "1", "--dot")
    assert code == 0
    assert out == (golden / "grid_A4_n1.dot").read_text()


def test_coxeter_exit_codes(capsys):
    code, doc, _ = run_json(capsys, "cox", "equal", "1 2 1 3 2", "2 1 2 3 2", "--quiver", "cyclic3")
    assert code == 0
    code, doc, _ = run_json(capsys, "cox", "equal", "1 2", "2 1", "--quiver", "cyclic3")
    assert code == 1


def test_mf_commands(capsys):
    code, doc, _ = run_json(capsys, "mf", "classify", "--factors", "x-y^2,x+y^2,y")
    assert code == 0 and doc["counts"] == {"ct": 6, "rigid": 7}
    code, doc, _ = run_json(capsys, "mf", "verify", "--random", "20", "--seed", "3")
    assert code == 0 and doc["all_hold"]


def test_mckay(capsys):
    code, doc, _ = run_json(capsys, "mckay", "--weights", "1,1,1,1", "--order", "2")
    assert code == 0


@pytest.mark.parametrize("argv", [["algebra", "info", "--named", "nonsense"],
                                  ["algebra", "frobnicate"],
                                  ["mf", "verify"],
                                  ["cox", "reduce", "1 9", "--quiver", "cyclic3"]])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "error" in json.loads(err.strip().splitlines()[-1])


def test_runtime_failure_exit_code(capsys, tmp_path):
    path = tmp_path / "kronecker.json"
    path.write_text(json.dumps({"vertices": [1, 2], "nilpotency": 2, "relations": [],
                                "arrows": [{"id": "a", "src": 1, "tgt": 2},
                                           {"id": "b", "src": 1, "tgt": 2}]}))
    code, _, err = run(capsys, "ar", "knit", "--algebra", str(path), "--dim-cap", "6")
    assert code == 3
    assert json.loads(err)["error"] == "KnitError"
    code, _, err = run(capsys, "ar", "knit", "--algebra", str(tmp_path / "missing.json"))
    assert code == 2


def test_deterministic_output(capsys):
    first = run(capsys, "ar", "knit", "--named", "A3")
    second = run(capsys, "ar", "knit", "--named", "A3")
    assert first == second and first[0] == 0


def test_console_script():
    exe = shutil.which("higherar")
    cmd = [exe] if exe else [sys.executable, "-m", "higherar.cli"]
    proc = subprocess.run(cmd + ["cox", "reduce", "1 1 2", "--quiver", "A2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)
