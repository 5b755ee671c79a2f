import json

import pytest

from virtualih.cli import main
from virtualih.fanfile import corpus_dir, load_document, loads_document


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def path(name):
    return str(corpus_dir() / f"{name}.fan")


def test_validate(capsys):
    code, out = run(capsys, "validate", path("cube"), "--format", "structured")
    data = json.loads(out)
    assert code == 0 and data["results"]["cones"] == 27 and len(data["sha256"]) == 64
    code, _ = run(capsys, "validate", path("pentagon_sqrt5"))
    assert code == 0


def test_validate_reports_overlap(tmp_path, capsys):
    p = tmp_path / "bad.fan"
    p.write_text(json.dumps({"ambient_dim": 2, "field": "Q",
                             "rays": [["1", "0"], ["1", "1"], ["0", "1"]],
                             "cones": [[0, 2], [1, 2]]}))
    code, out = run(capsys, "validate", str(p))
    assert code == 2 and "witness" in out


def test_hvector(capsys):
    code, out = run(capsys, "hvector", path("cube"), "--format", "structured")
    assert json.loads(out)["results"]["poincare"] == [1, 5, 5, 1]
    code, out = run(capsys, "hvector", path("square_cone"), "--local", "top",
                    "--format", "structured")
    assert json.loads(out)["results"]["local"] == [1, 1]
    code, out = run(capsys, "hvector", path("half_plane"), "--relative", "--format", "structured")
    assert json.loads(out)["results"]["poincare"] == [0, 1, 1]


def test_hvector_refuses_prism(capsys):
    code, out = run(capsys, "hvector", path("prism_sides"), "--format", "structured")
    data = json.loads(out)
    assert code == 1 and data["results"]["witnesses"] == [[]]
    code, out = run(capsys, "hvector", path("prism_sides"), "--assume-qc")
    assert code == 0


def test_quasiconvex(capsys):
    code, out = run(capsys, "quasiconvex", path("prism_sides"), "--format", "structured")
    data = json.loads(out)
    assert code == 1 and not data["results"]["quasi_convex"]
    assert data["results"]["witnesses"] == [[]]


def test_sheaf(capsys, tmp_path):
    out_model = tmp_path / "model.json"
    code, out = run(capsys, "sheaf", path("square_cone"), "--format", "structured",
                    "--model-out", str(out_model))
    data = json.loads(out)
    assert code == 0 and data["results"]["generators"] == {"0": 1, "2": 1}
    assert json.loads(out_model.read_text())["cones"]
    code, out2 = run(capsys, "sheaf", path("square_cone"), "--format", "structured", "--seed", "5")
    assert json.loads(out2)["results"]["generators"] == {"0": 1, "2": 1}


def test_reports_are_deterministic(capsys):
    _, a = run(capsys, "sheaf", path("cube"), "--format", "structured")
    _, b = run(capsys, "sheaf", path("cube"), "--format", "structured")
    assert a == b
    _, c = run(capsys, "validate", path("cube"), "--timing")
    assert "timing" in c


def test_verify_single(capsys):
    code, out = run(capsys, "verify", path("square_cone_star"))
    assert code == 0 and "FAIL" not in out


def test_verify_needs_target(capsys):
    assert main(["verify"]) == 2


def test_fan_file_round_trip():
    for name in ("cube", "sqrt5_square_cone", "square_cone_star"):
        text = (corpus_dir() / f"{name}.fan").read_text()
        assert loads_document(text).dumps() == text
    doc = load_document(path("pentagon_sqrt5"))
    assert doc.field == "Q(sqrt 5)"
