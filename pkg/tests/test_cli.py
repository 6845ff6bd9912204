import json
import os

import pytest

from algext.algebra import algebra_from_json, algebra_validate
from algext.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json(capsys, *argv):
    code, out, _ = _run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_missing_file_exits_2(capsys):
    code, _, err = _run(capsys, "verify", "--datum", "/nonexistent/datum.json")
    assert code == 2 and "UsageError" in err


def test_bad_field_exits_2(capsys):
    code, _, _ = _run(capsys, "supersolvable", "--dim", "2", "--field", "GF(6)")
    assert code == 2


def test_verify_bad_datum(capsys, data_dir):
    code, out, _ = _run(capsys, "verify", "--datum", os.path.join(data_dir, "bad_datum.json"))
    assert code == 1
    for name in ("A4", "A6", "A10", "A12"):
        assert name in out


def test_verify_algebra(capsys, data_dir):
    code, doc = _json(capsys, "verify", "--algebra", os.path.join(data_dir, "anagal1.json"))
    assert code == 0


def test_verify_sample(capsys):
    code, doc = _json(capsys, "verify", "--sample", "30", "--field", "GF(3)", "--max-dim", "2")
    assert code == 0


def test_classify_codim1(capsys, data_dir):
    code, doc = _json(capsys, "classify", "--codim1", "--base", os.path.join(data_dir, "k00.json"))
    assert code == 0 and len(doc["classes"]) == 4
    code, doc = _json(capsys, "classify", "--codim1", "--base", "k00", "--field", "GF(3)",
                      "--mode", "cohomologous")
    assert code == 0 and len(doc["classes"]) == 7


def test_flag_enum(capsys):
    code, doc = _json(capsys, "flag-enum", "--base", "k01", "--field", "GF(3)")
    assert code == 0
    assert len(doc["datums"]) == 72


def test_supersolvable(capsys):
    code, doc = _json(capsys, "supersolvable", "--dim", "3", "--field", "GF(3)")
    assert code == 0 and len(doc["algebras"]) == 6
    for entry in doc["algebras"]:
        assert algebra_validate(algebra_from_json(entry["algebra"])).ok


def test_catalog_check(capsys):
    code, out, _ = _run(capsys, "catalog", "--dim", "3", "--field", "GF(2)", "--check")
    assert code == 0 and "PASS" in out


def test_galois_all_methods(capsys, data_dir):
    code, doc = _json(capsys, "galois", "--algebra", os.path.join(data_dir, "anagal1.json"),
                      "--sub", "1,x", "--method", "all")
    assert code == 0
    assert doc["order"] == 2 and doc["is_galois"]
    assert all(doc["agreement"].values())


def test_galois_presentation(capsys):
    code, doc = _json(capsys, "galois", "--algebra", "x^2 = 0, y^2 = y, xy = x, yx = 0",
                      "--sub", "1,x", "--field", "GF(3)")
    assert code == 0 and doc["order"] == 3


def test_factorize_then_bicrossed(capsys, tmp_path):
    code, doc = _json(capsys, "factorize", "--algebra", "x^2 = 0, y^2 = y, xy = x, yx = 0",
                      "--sub", "1,x", "--complement", "y")
    assert code == 0
    path = tmp_path / "mp.json"
    path.write_text(json.dumps(doc))
    code, built = _json(capsys, "product", "bicrossed", "--input", str(path))
    assert code == 0
    assert algebra_validate(algebra_from_json(built["algebra"])).ok


def test_oracle_json_is_one_document(capsys):
    code, out, _ = _run(capsys, "oracle", "--dim", "2", "--field", "GF(2)", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["valid"] == 4 and len(doc["classes"]) == 3


def test_oracle_codim1_agrees(capsys):
    code, doc = _json(capsys, "oracle", "--codim1", "k01", "--field", "GF(3)")
    assert code == 0
    assert doc["agree"] and doc["flag_classes"] == len(doc["classes"]) == 8
