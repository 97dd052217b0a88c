import json

import pytest

from cohomotopy.cli import COMMANDS, run
from cohomotopy.matrix import identity
from cohomotopy.rings import PolyRing
from cohomotopy.serialize import matrix_to_doc

GENERATING = [c for c in COMMANDS if c not in ("check-loop", "check-homotopy", "verify")]


def _json(capsys, argv):
    code = run(argv + ["--json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def _write(tmp_path, doc, name="doc.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


@pytest.mark.parametrize("command", GENERATING)
def test_every_document_verifies(command, capsys, tmp_path):
    code, doc = _json(capsys, [command])
    assert code == 0
    assert "kind" in doc
    assert run(["verify", "--quiet", "--file", _write(tmp_path, doc)]) == 0


@pytest.mark.parametrize("command", ["chi", "mv-witness", "cocycle", "split-complete", "milnor-patch"])
@pytest.mark.parametrize("ring", ["cylinder", "torus"])
def test_documents_on_other_squares(command, ring, capsys, tmp_path):
    code, doc = _json(capsys, [command, "--ring", ring, "--seed", "5"])
    assert code == 0
    assert run(["verify", "--quiet", "--file", _write(tmp_path, doc)]) == 0


def test_constant_loop_file(tmp_path, capsys):
    doc = {"ring": "Q", "var": "T", "matrix": matrix_to_doc(identity(PolyRing(("T",))))}
    assert run(["check-loop", "--file", _write(tmp_path, doc)]) == 0


def test_failed_loop_names_condition(tmp_path, capsys):
    doc = {"ring": "Q", "var": "T", "matrix": [["1", "T"], ["0", "1"]]}
    assert run(["check-loop", "--file", _write(tmp_path, doc)]) == 1
    assert "alpha(1)" in capsys.readouterr().err


def test_failed_homotopy_names_condition(tmp_path, capsys):
    doc = {
        "ring": "Q",
        "matrix": [["1", "T - T^2"], ["0", "1"]],
        "ends": [[["1", "T - T^2"], ["0", "1"]], [["1", "0"], ["0", "1"]]],
    }
    assert run(["check-homotopy", "--file", _write(tmp_path, doc)]) == 1
    assert "gamma(T,1) = second loop" in capsys.readouterr().err


def test_tampered_document_fails(tmp_path, capsys):
    code, doc = _json(capsys, ["factor"])
    doc["factors"][0]["r"] = "12345"
    assert run(["verify", "--file", _write(tmp_path, doc)]) == 1


def test_input_errors(tmp_path, capsys):
    assert run(["check-loop"]) == 2
    assert run(["check-loop", "--file", str(tmp_path / "none.json")]) == 2
    p = tmp_path / "bad.json"
    p.write_text("{")
    assert run(["verify", "--file", str(p)]) == 2
    assert run(["verify", "--file", _write(tmp_path, {"kind": "mystery"})]) == 2
    assert run(["chi", "--ring", "nowhere"]) == 2
    assert run(["check-loop", "--file", _write(tmp_path, {"ring": "Q", "matrix": [["1", "T^"], ["0", "1"]]})]) == 2
    assert run(["no-such-command"]) == 2


def test_swan_demo(capsys):
    code, doc = _json(capsys, ["swan-demo", "--n", "3"])
    assert code == 0 and doc["verdict"] == "non-free" and abs(doc["winding"]) == 2
    for n in (1, 2):
        code, doc = _json(capsys, ["swan-demo", "--n", str(n)])
        assert code == 0 and doc["verdict"] == "inconclusive"


def test_klein_and_torus_demos(capsys):
    code, doc = _json(capsys, ["klein-demo"])
    assert doc["invariant_factors"] == [1, 2] and doc["group"] == "Z_2"
    code, doc = _json(capsys, ["torus-demo"])
    assert doc["group"] == "Z"


def test_human_output_and_quiet(capsys):
    assert run(["klein-demo"]) == 0
    assert "Z_2" in capsys.readouterr().out
    assert run(["klein-demo", "--quiet"]) == 0
    assert capsys.readouterr().out == ""


def test_seeded_runs_are_deterministic(capsys):
    a = _json(capsys, ["milnor-patch", "--seed", "7"])
    b = _json(capsys, ["milnor-patch", "--seed", "7"])
    c = _json(capsys, ["milnor-patch", "--seed", "8"])
    assert a == b and a != c
