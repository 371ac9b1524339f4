import json
import subprocess
import sys

import pytest

from fusionflag import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dim_plain(capsys):
    code, out, _ = run(capsys, "dim", "--n", "1", "--m", "4")
    assert code == 0 and out == "9\n"


def test_dim_json_schema(capsys):
    code, out, _ = run(capsys, "dim", "--n", "2", "--weight", "1,1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "fusionflag/1" and doc["dim"] == 10


def test_dim_even(capsys):
    code, out, _ = run(capsys, "dim", "--n", "2", "--m", "2", "--even")
    assert out == "10\n"


def test_dim_even_general_weight(capsys):
    code, out, _ = run(capsys, "dim", "--n", "2", "--weight", "1,1", "--even")
    assert code == 0 and out == "5\n"


def test_char_csv(capsys):
    code, out, _ = run(capsys, "char", "--n", "1", "--m", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["weight,mult", "2,1", "1,1", "0,1", "-1,1", "-2,1"]


def test_fusion_independence(capsys):
    code, out, _ = run(capsys, "fusion", "--n", "1", "--partition", "1,1", "--z", "0,1", "--z", "0,-1")
    doc = json.loads(out)
    assert code == 0 and doc["independent"]
    a, b = doc["characters"]
    assert a["table"] == b["table"] and a["graded_dims"] == [5, 4]


def test_fusion_csv(capsys):
    code, out, _ = run(capsys, "fusion", "--n", "1", "--partition", "2,1", "--format", "csv")
    assert code == 0 and out.startswith("weight,degree,mult\n")


def test_flags(capsys):
    code, out, _ = run(capsys, "flags", "--n", "1", "--partition", "2,1")
    doc = json.loads(out)
    assert code == 0 and doc["dimension_identity"]
    assert doc["predicted_graded_dims"] == [7, 8]
    assert doc["pbw"]["count"] == 15
    assert [p["partition_image"] for p in doc["pieces"]] == [[2, 1], [1, 1], [2, 0], [1, 0]]


def test_flags_csv(capsys):
    code, out, _ = run(capsys, "flags", "--n", "1", "--partition", "1,1", "--format", "csv")
    assert out.splitlines()[0] == "indices,partition_image,degree_shift,even_dims_product"


def test_poset(capsys):
    code, out, _ = run(capsys, "poset", "--n", "1", "--m", "4", "--k", "2")
    doc = json.loads(out)
    assert code == 0 and doc["violations"] == 0 and len(doc["rows"]) == 9


def test_verify_main_partition(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "main", "--n", "1", "--partition", "2,1")
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    case = doc["cases"][0]
    assert case["characters_equal"] and case["predicted_graded_dims"] == case["computed_graded_dims"] == [7, 8]


def test_verify_weyl_dims(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "weyl")
    doc = json.loads(out)
    assert code == 0 and doc["dims"][:4] == [3, 9, 27, 81]
    assert doc["dims"][4:] == [2, 4, 8, 16, 32, 64]


def test_verify_half_integer(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "lemma-half-integer", "--n", "2")
    doc = json.loads(out)
    assert code == 0 and doc["total"] == 10


def test_verify_chevalley_dump(capsys, tmp_path):
    path = tmp_path / "c.csv"
    code, out, _ = run(capsys, "verify", "--theorem", "chevalley", "--n", "2", "--dump-constants", str(path))
    assert code == 0
    assert path.read_text().startswith("alpha,beta,c\n")


def test_verify_chevalley_dump_several(capsys, tmp_path):
    path = tmp_path / "c.csv"
    code, out, _ = run(capsys, "verify", "--theorem", "chevalley", "--dump-constants", str(path))
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["c_n1.csv", "c_n2.csv", "c_n3.csv"]


def test_verify_presentation_single(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "presentation", "--n", "2", "--m", "2")
    assert code == 0 and json.loads(out)["cases"][0]["dim"] == 14


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "truncated", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "case,ok,detail" and len(lines) == 25


def test_failed_check_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(cli, "suite_weyl", lambda **kw: {"cases": [{"ok": False}]})
    code, out, _ = run(capsys, "verify", "--theorem", "weyl")
    assert code == 1 and json.loads(out)["ok"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["dim", "--n", "0", "--m", "1"],
        ["dim", "--m", "1"],
        ["fusion", "--n", "1", "--partition", "1,2"],
        ["fusion", "--n", "1", "--partition", "1,1", "--z", "1,1"],
        ["verify", "--theorem", "nonsense"],
        ["dim", "--n", "2", "--weight", "1,2"],
        ["poset", "--n", "1", "--m", "2"],
        ["verify", "--theorem", "weyl", "--bound-multiplier", "0"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "dim", "--n", "1", "--m", "1", "--out", str(tmp_path / "missing" / "x.json"))
    assert code == 3 and "error" in err


def test_out_file(capsys, tmp_path):
    path = tmp_path / "d.json"
    code, out, _ = run(capsys, "dim", "--n", "1", "--m", "2", "--format", "json", "--out", str(path))
    assert code == 0 and out == "" and json.loads(path.read_text())["dim"] == 5


def test_deterministic(capsys):
    argv = ["verify", "--theorem", "demazure"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "fusionflag", "dim", "--n", "1", "--m", "4"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "9\n"
