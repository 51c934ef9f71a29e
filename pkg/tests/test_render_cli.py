import json
import subprocess
import sys

import pytest

from corpus import K4_DOC
from dualgrid import RenderStyle, draw, parse_graph, platonic, render_svg
from dualgrid.cli import main


def test_k4_svg_counts():
    r = draw(parse_graph(K4_DOC))
    svg = render_svg(r.quad, r.drawing)
    # six primal and six dual edges, one of them bent
    assert svg.count("<line ") == 11
    assert svg.count("<polyline ") == 1
    assert svg.count("<circle ") == 8
    assert 'stroke="blue"' in svg and 'stroke="red"' in svg


def test_svg_deterministic_and_grid():
    r = draw(platonic("cube"))
    assert render_svg(r.quad, r.drawing) == render_svg(r.quad, r.drawing)
    assert 'class="grid"' in render_svg(r.quad, r.drawing, RenderStyle(show_grid=True))
    with pytest.raises(ValueError):
        RenderStyle(scale=0)


def test_svg_y_points_up():
    r = draw(parse_graph(K4_DOC))
    svg = render_svg(r.quad, r.drawing, RenderStyle(scale=1, margin=0))
    u = r.drawing.coords["p:1"]
    top = max(max(p) for p in list(r.drawing.coords.values()) + [r.drawing.bend_point])
    assert f'cx="{u[0]}" cy="{top - u[1]}"' in svg


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_round_trip(tmp_path, capsys):
    g, d, d2, t = (str(tmp_path / x) for x in ("g.json", "d.json", "d2.json", "t.jsonl"))
    assert run(["gen", "--kind", "sparsified", "--n", "15", "--seed", "4", "--out", g], capsys)[0] == 0
    assert run(["embed", g, "--out", d, "--trace", t], capsys)[0] == 0
    assert run(["embed", g, "--engine", "reference", "--out", d2], capsys)[0] == 0
    assert open(d).read() == open(d2).read()
    code, out, _ = run(["verify", g, d, "--trace", t], capsys)
    assert code == 0 and json.loads(out)["ok"]
    svg = str(tmp_path / "x.svg")
    assert run(["render", g, d, "--out", svg], capsys)[0] == 0
    assert open(svg).read().startswith("<?xml")


def test_cli_dodecahedron(tmp_path, capsys):
    g, d = str(tmp_path / "g.json"), str(tmp_path / "d.json")
    assert run(["gen", "--kind", "platonic", "--name", "dodecahedron", "--out", g], capsys)[0] == 0
    assert run(["embed", g, "--bend", "dual", "--out", d], capsys)[0] == 0
    assert run(["verify", g, d], capsys)[0] == 0


def test_cli_corrupted_drawing(tmp_path, capsys):
    g, d = tmp_path / "g.json", tmp_path / "d.json"
    g.write_text(json.dumps(K4_DOC))
    assert run(["embed", str(g), "--out", str(d)], capsys)[0] == 0
    doc = json.loads(d.read_text())
    doc["coords"]["f:3"] = doc["coords"]["p:4"]
    d.write_text(json.dumps(doc))
    code, out, _ = run(["verify", str(g), str(d)], capsys)
    assert code == 1
    report = json.loads(out)
    assert not report["ok"]
    assert any("witness" in c for c in report["checks"] if not c["passed"])
    code, _, err = run(["render", str(g), str(d), "--out", str(tmp_path / "x.svg")], capsys)
    assert code == 1
    assert run(["render", str(g), str(d), "--force", "--out", str(tmp_path / "x.svg")], capsys)[0] == 0


def test_cli_errors_are_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(["embed", str(bad)], capsys)
    assert code == 2 and json.loads(err)["error"] == "MalformedDocument"
    code, _, err = run(["embed", str(tmp_path / "missing.json")], capsys)
    assert code == 2 and json.loads(err)["error"] == "MalformedDocument"
    two = tmp_path / "two.json"
    two.write_text(json.dumps({"vertices": list("abcd"), "rotation": {"a": ["c", "b", "d"], "b": ["d", "a", "c"], "c": ["a", "b"], "d": ["b", "a"]}, "outer_face": ["a", "c", "b", "d"]}))
    code, _, err = run(["embed", str(two)], capsys)
    assert code == 2 and json.loads(err)["error"] == "NotThreeConnected"


def test_demo(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "dualgrid", "demo", "--out-dir", str(tmp_path)],
        capture_output=True, text=True, check=True,
    )
    info = json.loads(out.stdout)
    assert info["ok"] and info["n"] == 32
    assert (tmp_path / "dodecahedron.svg").exists()
