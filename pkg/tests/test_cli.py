import json

import pytest

from srlat.cli import main
from srlat.constructions import s_k
from srlat.diagram import LatticeDiagram
from srlat.io import lattice_to_json
from srlat.render import render_svg

S1_RECIPE = {"base": [1, 1], "steps": [{"op": "multifork", "cell_peak": "g_1_1", "k": 1}]}


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def s1_file(tmp_path):
    return write(tmp_path / "s1.json", S1_RECIPE)


def test_build(tmp_path, s1_file):
    out = tmp_path / "built.json"
    assert main(["build", s1_file, "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["vertices"]) == 7 and data["recipe"] == S1_RECIPE
    grid_file = write(tmp_path / "g.json", {"base": [2, 2], "steps": []})
    assert main(["build", grid_file, "-o", str(out)]) == 0
    assert len(json.loads(out.read_text())["vertices"]) == 9


def test_build_rejects_a_bad_cell(tmp_path, capsys):
    bad = write(tmp_path / "bad.json", {"base": [1, 1], "steps": [
        {"op": "multifork", "cell_peak": "nope", "k": 1}]})
    assert main(["build", bad]) == 2
    assert "step 1" in capsys.readouterr().err


def test_missing_file_is_an_input_error(tmp_path):
    assert main(["lamps", str(tmp_path / "absent.json")]) == 2


def test_build_is_deterministic(tmp_path, s1_file):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["build", s1_file, "-o", str(a)])
    main(["build", str(a), "-o", str(b)])
    assert a.read_text() == b.read_text()


def test_render(tmp_path, s1_file):
    svg = tmp_path / "s1.svg"
    assert main(["render", s1_file, "-o", str(svg)]) == 0
    text = svg.read_text()
    assert text.count("<circle") == 7 and text.count("<line") == 9
    assert text.count('stroke-width="4.5"') == 3
    main(["render", s1_file, "-o", str(tmp_path / "again.svg")])
    assert (tmp_path / "again.svg").read_text() == text
    square = render_svg(LatticeDiagram({"0": (0, 0), "a": (1, 0), "b": (0, 1), "1": (1, 1)},
                                       [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]))
    assert square.count("<circle") == 4 and square.count("<line") == 4


def test_lamps_and_conlat(s1_file, capsys):
    assert main(["lamps", s1_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["lamps"]) == 3 and out["relations_equal"]
    assert main(["conlat", s1_file]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["con_size"] == 5 and out["iso"]


def test_quotient(tmp_path, s1_file, capsys):
    assert main(["quotient", s1_file, "--edge", "s1_f1,g_1_1"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "c1-pass"
    part = write(tmp_path / "p.json", {"blocks": [["g_0_0", "g_1_1"]]})
    assert main(["quotient", s1_file, "--partition", part]) == 2
    assert main(["quotient", s1_file, "--edge", "s1_f1"]) == 2


def test_thrust_brosum_jsum(tmp_path, s1_file, capsys):
    assert main(["thrust", s1_file, "--lamp", "g_1_1", "--k", "2"]) == 0
    capsys.readouterr()
    assert main(["brosum", s1_file, "--lamp", "g_1_1"]) == 0
    assert len(json.loads(capsys.readouterr().out)["lamp_poset"]["elements"]) == 4
    m = write(tmp_path / "m.json", {"base": [1, 1], "steps": []})
    assert main(["jsum", s1_file, "--at", "g_1_1", "--m", m]) == 0
    assert len(json.loads(capsys.readouterr().out)["lamp_poset"]["elements"]) == 5


def test_thrust_needs_a_recipe(tmp_path):
    bare = write(tmp_path / "bare.json", lattice_to_json(s_k(1)))
    assert main(["thrust", bare, "--lamp", "g_1_1"]) == 2


def test_check(tmp_path, s1_file, capsys):
    grid_file = write(tmp_path / "g.json", {"base": [3, 3], "steps": []})
    assert main(["check", grid_file]) == 0
    capsys.readouterr()
    s2_file = write(tmp_path / "s2.json", {"base": [1, 1], "steps": [
        {"op": "multifork", "cell_peak": "g_1_1", "k": 2}]})
    assert main(["check", s2_file, "--suite", "quotient", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["checks"]["quotient.main-theorem-c1-pass"]


def test_check_flags_crossing_edges(tmp_path, capsys):
    crossed = {"vertices": [{"id": v, "p": p, "q": q} for v, p, q in
                            [("0", 0, 0), ("a", 1, 0), ("b", 0, 1), ("c", 1, 2), ("d", 2, 1),
                             ("1", 2, 2)]],
               "covers": [["0", "a"], ["0", "b"], ["a", "c"], ["b", "d"], ["c", "1"], ["d", "1"]]}
    assert main(["check", write(tmp_path / "x.json", crossed)]) == 1
    assert "structure.builds" in capsys.readouterr().out


def test_corpus(tmp_path):
    out = tmp_path / "c.json"
    assert main(["corpus", "--max-steps", "1", "--max-k", "2", "--max-grid", "2", "--quiet",
                 "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["failed"] == 0 and data["lattices"] > 4
    shapes = {(len(p["elements"]), len(p["covers"])) for p in data["lamp_posets"]}
    assert (3, 2) in shapes and (2, 0) in shapes
    assert main(["corpus", "--max-steps", "0", "--max-grid", "1", "--quiet", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["lattices"] == 1
    assert main(["corpus", "--max-steps", "0", "--max-grid", "2", "--quiet", "-o", str(out)]) == 0
    assert all(not p["covers"] for p in json.loads(out.read_text())["lamp_posets"])
