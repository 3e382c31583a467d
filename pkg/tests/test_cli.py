import json
import subprocess
import sys

import numpy as np
import pytest

from leibniz import catalog
from leibniz.cli import main
from leibniz.io import FormatError, algebra_from_dict, algebra_to_dict, dump_json, matrix_from_dict, matrix_to_dict
from leibniz.linalg import exp_nilpotent


def write(path, obj):
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def matrix_file(path, M):
    return write(path, matrix_to_dict(np.asarray(M, dtype=complex)))


def test_show_format(capsys):
    assert main(["catalog", "show", "null2"]) == 0
    assert capsys.readouterr().out == '{"dim":2,"brackets":[{"i":0,"j":0,"k":1,"re":1.0,"im":0.0}]}\n'


def test_show_labels_and_emit(tmp_path, capsys):
    out = tmp_path / "a.json"
    assert main(["catalog", "show", "nonliftable-2", "--emit", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["basis"] == ["e1", "e2", "f1", "f2"]
    assert capsys.readouterr().out == ""


def test_list(capsys):
    assert main(["catalog", "list"]) == 0
    ids = [line.split("\t")[0] for line in capsys.readouterr().out.splitlines()]
    assert ids == catalog.catalog_ids()


def test_unknown_id(capsys):
    assert main(["catalog", "show", "bogus"]) == 1
    assert "null2" in capsys.readouterr().err


def test_check_exit_codes(tmp_path, capsys):
    good = write(tmp_path / "g.json", algebra_to_dict(catalog.null2()))
    assert main(["check", good]) == 0
    bad = write(tmp_path / "b.json", {"dim": 1, "brackets": [{"i": 0, "j": 0, "k": 0, "re": 1.0, "im": 0.0}]})
    assert main(["check", bad]) == 1
    assert "(0, 0, 0)" in capsys.readouterr().out
    assert main(["check", write(tmp_path / "m.json", "{not json")]) == 2
    assert main(["check", str(tmp_path / "missing.json")]) == 2


@pytest.mark.parametrize("obj", [
    {"dim": 2, "brackets": [{"i": 0, "j": 0, "k": 1, "re": 1}, {"i": 0, "j": 0, "k": 1, "re": 1}]},
    {"dim": 2, "brackets": [{"i": 0, "j": 2, "k": 1, "re": 1}]},
    {"dim": 0},
    {"dim": 2, "basis": ["a"]},
    {"dim": 2, "brackets": [{"i": 0, "j": 0, "k": 1, "re": "x"}]},
    [1, 2],
])
def test_parse_errors(tmp_path, obj):
    with pytest.raises(FormatError):
        algebra_from_dict(obj)
    assert main(["check", write(tmp_path / "x.json", obj)]) == 2


def test_io_roundtrip():
    for entry in catalog.entries():
        back = algebra_from_dict(json.loads(dump_json(algebra_to_dict(entry.algebra))))
        assert back == entry.algebra
    M = np.array([[1 + 2j, 0], [3, -1j]])
    assert np.array_equal(matrix_from_dict(matrix_to_dict(M)), M)
    with pytest.raises(FormatError):
        matrix_from_dict({"rows": 1, "cols": 2, "entries": [[1, 0]]})


def test_analyze_examples(capsys):
    assert main(["analyze", "catalog:null2", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["is_nilpotent"] and rep["derivation_dim"] == 2 and rep["nonsingular_witness"] is not None
    assert main(["analyze", "catalog:remark-5", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["characteristically_nilpotent"] and rep["nonsingular_witness"] is None
    assert main(["analyze", "catalog:aff1", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["is_solvable"] and not rep["is_nilpotent"] and rep["nonsingular_witness"] is None


def test_analyze_report_consistency(capsys):
    for cid in catalog.catalog_ids():
        assert main(["analyze", f"catalog:{cid}", "--json"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert not rep["is_nilpotent"] or rep["is_solvable"]
        assert not rep["is_lie"] or rep["l_ann_dim"] == 0
        assert rep["engel_nilpotent"] == rep["is_nilpotent"]


def test_analyze_human_and_errors(tmp_path, capsys):
    assert main(["analyze", "catalog:heisenberg"]) == 0
    assert "derivation_dim: 6" in capsys.readouterr().out
    assert main(["analyze", "catalog:bogus"]) == 2
    bad = write(tmp_path / "b.json", {"dim": 1, "brackets": [{"i": 0, "j": 0, "k": 0, "re": 1.0}]})
    assert main(["analyze", bad]) == 1


def test_jc_der(tmp_path, capsys):
    alg = write(tmp_path / "a.json", algebra_to_dict(catalog.null2()))
    assert main(["jc-der", alg, "--map", matrix_file(tmp_path / "d.json", np.diag([1, 2])), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] and out["D0"]["entries"] == [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [2.0, 0.0]]
    assert all(e == [0.0, 0.0] for e in out["T"]["entries"])
    assert main(["jc-der", alg, "--map", matrix_file(tmp_path / "i.json", np.eye(2))]) == 1
    assert main(["jc-der", alg, "--map", matrix_file(tmp_path / "w.json", np.eye(3))]) == 2


def test_jc_aut(tmp_path, capsys):
    alg = write(tmp_path / "a.json", algebra_to_dict(catalog.null2()))
    T = np.array([[0, 0], [1, 0]])
    assert main(["jc-aut", alg, "--map", matrix_file(tmp_path / "u.json", exp_nilpotent(T)), "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["A0"]["entries"] == [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
    assert out["T"]["entries"][2] == [1.0, 0.0]
    assert main(["jc-aut", alg, "--map", matrix_file(tmp_path / "s.json", 2 * np.eye(2))]) == 1


def test_cluster_ambiguity_exit(tmp_path, capsys):
    alg = write(tmp_path / "a.json", algebra_to_dict(catalog.abelian(3)))
    D = np.diag([0.0, 0.6e-6, 1.2e-6])
    assert main(["jc-der", alg, "--map", matrix_file(tmp_path / "d.json", D)]) == 3
    assert "--eps-cluster" in capsys.readouterr().err
    assert main(["jc-der", alg, "--map", str(tmp_path / "d.json"), "--eps-cluster", "1e-8"]) == 0


def test_bad_arguments():
    assert main([]) == 2
    assert main(["check"]) == 2


def test_console_script(tmp_path):
    out = subprocess.run([sys.executable, "-m", "leibniz.cli", "catalog", "show", "null2"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.startswith('{"dim":2')
