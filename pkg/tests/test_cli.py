import json
import xml.etree.ElementTree as ET

import pytest

from gridobs.cli import main
from gridobs.fixtures import fixture
from gridobs.grid import read_graph, read_representation, write_graph, write_representation
from gridobs.render import render_svg

SVG = "{http://www.w3.org/2000/svg}"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_fixture_then_verify(tmp_path, capsys):
    r, g = tmp_path / "r.json", tmp_path / "g.json"
    code, out = run(capsys, "fixture", "--class", "empty", "--n", "7", "--out", str(r), "--graph-out", str(g))
    assert code == 0 and json.loads(out)["obstacles"] == 6
    code, out = run(capsys, "verify", "--rep", str(r), "--graph", str(g))
    assert code == 0 and json.loads(out)["matches"] is True


def test_verify_mismatch_reports_missing_edge(tmp_path, capsys):
    r, g = tmp_path / "p.json", tmp_path / "c.json"
    write_representation(r, fixture("path", 10)[1])
    write_graph(g, fixture("cycle", 10)[0])
    code, out = run(capsys, "verify", "--rep", str(r), "--graph", str(g))
    report = json.loads(out)
    assert code == 1
    assert report["missing_edges"] == [[0, 9]]


def test_usage_errors(tmp_path, capsys):
    assert main(["frobnicate"]) == 2
    assert main(["verify", "--rep"]) == 2
    assert main(["--threads", "0", "visgraph", "--rep", "x.json"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["visgraph", "--rep", str(bad)]) == 2
    assert main(["visgraph", "--rep", str(tmp_path / "missing.json")]) == 2
    assert main(["fixture", "--class", "complete_bipartite", "--n", "3", "--out", str(tmp_path / "o.json")]) == 2
    assert main(["embed3d", "--graph", "g.json"]) == 2
    capsys.readouterr()


def test_render_svg_structure(tmp_path, capsys):
    g, rep = fixture("empty", 7)
    r, out = tmp_path / "r.json", tmp_path / "r.svg"
    write_representation(r, rep)
    assert main(["render-svg", "--rep", str(r), "--out", str(out)]) == 0
    root = ET.parse(out).getroot()
    assert root.tag == SVG + "svg"
    assert len(root.findall(f".//{SVG}circle")) == 7
    assert len([e for e in root.iter(SVG + "rect") if e.get("class") == "obstacle"]) == 6


def test_render_blocked_with_paths():
    g, rep = fixture("binary_tree", 2)
    root = ET.fromstring(render_svg(rep, g))
    rects = list(root.iter(SVG + "rect"))
    assert len([e for e in rects if e.get("class") == "free"]) == len(rep.cells)
    assert len([e for e in rects if e.get("class") == "obstacle"]) == rep.obstacle_count()
    assert len(list(root.iter(SVG + "polyline"))) == len(g.edges)


def test_render_is_deterministic():
    g, rep = fixture("cycle", 9)
    assert render_svg(rep, g) == render_svg(rep, g)


def test_pipeline_subcommands(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text('{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]}')
    rep = tmp_path / "rep.json"
    code, out = run(capsys, "embed2d", "--graph", str(g), "--out", str(rep), "--geometry", str(tmp_path / "geo.json"))
    assert code == 0
    assert json.loads((tmp_path / "geo.json").read_text())["box_half_side_lattice"] >= 4
    code, out = run(capsys, "check-c4-invariant", "--rep", str(rep), "--graph", str(g))
    assert code == 0 and json.loads(out) == {"ok": True}
    code, out = run(capsys, "visgraph", "--rep", str(rep), "--out", str(tmp_path / "vg.json"))
    assert code == 0 and read_graph(tmp_path / "vg.json") == read_graph(g)
    code, out = run(capsys, "components", "--rep", str(rep))
    assert code == 0 and json.loads(out)["count"] >= 1
    rep3 = tmp_path / "rep3.json"
    code, out = run(capsys, "--threads", "2", "embed3d", "--graph", str(g), "--out", str(rep3))
    assert code == 0 and read_representation(rep3).dim == 3
    code, out = run(capsys, "embed3d", "--graph", str(g), "--dry-run")
    assert code == 0 and json.loads(out)["r"] == 2


def test_strip_and_analysis_subcommands(tmp_path, capsys):
    r = tmp_path / "r.json"
    r.write_text('{"dim":2,"default":"free","vertices":[[0,0],[40,1]],"cells":[[5,0],[6,1]]}')
    code, out = run(capsys, "compress-strip", "--rep", str(r), "--height", "2", "--out", str(tmp_path / "c.json"), "--stats")
    stats = json.loads(out)
    assert code == 0 and stats["width_after"] <= stats["width_before"] and stats["within_k_bound"]
    g = tmp_path / "g.json"
    g.write_text('{"n":3,"edges":[]}')
    code, out = run(capsys, "obsnum-exact", "--graph", str(g), "--window", "5x5", "--cap", "3")
    assert code == 0 and json.loads(out)["obstacle_number_upper_bound"] == 2
    assert main(["obsnum-exact", "--graph", str(g), "--window", "five"]) == 2
    capsys.readouterr()


def test_reduction_subcommands(tmp_path, capsys):
    pts = tmp_path / "points.json"
    code, out = run(capsys, "reduce-gpse", "--n", "8", "--k1", "3", "--k2", "2", "--variant", "oeps", "--out", str(pts))
    assert code == 0
    saved = json.loads(pts.read_text())
    assert set(saved) == {"p0", "p1", "p2"} and len(saved["p0"]) == 15
    assert main(["reduce-gpse", "--n", "7", "--k1", "3", "--k2", "2"]) == 1
    g = tmp_path / "g.json"
    g.write_text('{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}')
    sq = tmp_path / "sq.json"
    sq.write_text("[[0,0],[2,0],[2,2],[0,2]]")
    code, out = run(capsys, "oeps-decide", "--graph", str(g), "--points", str(sq), "--out", str(tmp_path / "w.json"))
    assert code == 0 and json.loads(out)["answer"] == "yes"
    assert read_representation(tmp_path / "w.json").n == 4
    capsys.readouterr()


@pytest.mark.parametrize("argv", [["fixture", "--class", "cycle", "--n", "11"], ["reduce-gpse", "--n", "4", "--k1", "1", "--k2", "2"]])
def test_outputs_are_deterministic(tmp_path, capsys, argv):
    outs = []
    for i in range(2):
        extra = ["--out", str(tmp_path / f"o{i}.json")]
        main(argv + extra)
        outs.append((capsys.readouterr().out, (tmp_path / f"o{i}.json").read_bytes()))
    assert outs[0] == outs[1]
