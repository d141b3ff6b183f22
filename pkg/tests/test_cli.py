import json
import subprocess
import sys
import xml.dom.minidom
from fractions import Fraction

import pytest

from digiray.cli import main
from digiray.constructions import greedy_weak_cdr
from digiray.grid import load_tree, tree_to_json
from digiray.metrics import frontier, frontier_from_csv
from digiray.points import pointset_from_csv
from digiray.render import RenderSpec, heat_color, render_heatmap, render_pointset, render_tree
from digiray.staircase import symmetric_staircases


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_build_greedy(tmp_path, capsys):
    out = tmp_path / "g.json"
    code, _, _ = run(capsys, "build", "greedy", "--n", 32, "-o", out)
    assert code == 0
    t = load_tree(out)
    assert t == greedy_weak_cdr(32)
    assert t.meta["construction"] == "greedy"


def test_build_errors(capsys):
    code, _, err = run(capsys, "build", "greedy", "--n", 31)
    assert code == 2 and "NotPowerOfTwo" in err
    code, _, err = run(capsys, "build", "tradeoff", "--n", 24, "--c", 0)
    assert code == 2 and "BadScale" in err
    with pytest.raises(SystemExit) as exc:
        main(["build", "spiral", "--n", "4"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_build_tradeoff(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert run(capsys, "build", "tradeoff", "--n", 24, "--c", 3, "-o", out)[0] == 0
    assert load_tree(out).meta["c"] == 3


def test_verify(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(tree_to_json(greedy_weak_cdr(16)))
    code, out, _ = run(capsys, "verify", path, "--mode", "proper")
    assert code == 1
    assert "S4 violators (12)" in out
    code, out, _ = run(capsys, "verify", path, "--mode", "weak")
    assert code == 0 and "verify: ok" in out


def test_schema_and_missing_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2}')
    code, _, err = run(capsys, "verify", bad)
    assert code == 3 and "schema" in err
    csv = tmp_path / "bad.csv"
    csv.write_text("color,x\nblue,0.5\n")
    assert run(capsys, "discrepancy", csv)[0] == 3
    assert run(capsys, "metrics", tmp_path / "missing.json")[0] == 2


def test_metrics(tmp_path, capsys):
    path = tmp_path / "a.json"
    run(capsys, "build", "axis-order", "--n", 4, "-o", path)
    code, out, _ = run(capsys, "metrics", path)
    doc = json.loads(out)
    assert code == 0
    assert doc["error"] == "1" and doc["witness_ray"] == [2, 2]
    assert doc["kappa1"] == 0 and doc["kappa2"] == 0


def test_map_then_discrepancy(tmp_path, capsys):
    tree = tmp_path / "a.json"
    pts = tmp_path / "a.csv"
    run(capsys, "build", "axis-order", "--n", 32, "-o", tree)
    code, _, err = run(capsys, "map", tree, "--check", "-o", pts)
    assert code == 0 and "FAIL" not in err
    code, out, _ = run(capsys, "discrepancy", pts, "--json")
    doc = json.loads(out)
    assert code == 0
    assert Fraction(doc["value"]) == 9
    assert doc["m"] == 32
    code, out, _ = run(capsys, "discrepancy", pts)
    assert "D*: 9" in out and "closure:" in out


def test_map_float(tmp_path, capsys):
    tree = tmp_path / "g.json"
    run(capsys, "build", "greedy", "--n", 8, "-o", tree)
    code, out, _ = run(capsys, "map", tree, "--float")
    assert code == 0 and out.startswith("color,x,y\n")
    assert pointset_from_csv(out).m == 8


def test_map_check_failure(tmp_path, capsys, monkeypatch):
    import digiray.cli as cli
    from digiray.mapping import MappingReport

    def broken(tree, aux=None):
        rep = MappingReport()
        rep.fail("bijection", {"reason": "forced"})
        return rep

    monkeypatch.setattr(cli, "validate_mapping", broken)
    tree = tmp_path / "g.json"
    run(capsys, "build", "greedy", "--n", 8, "-o", tree)
    code, _, err = run(capsys, "map", tree, "--check", "-o", tmp_path / "x.csv")
    assert code == 1 and "counterexample bijection" in err


def test_staircase_and_render(tmp_path, capsys):
    pts = tmp_path / "s7.csv"
    svg = tmp_path / "s7.svg"
    assert run(capsys, "staircase", "--m", 7, "-o", pts)[0] == 0
    assert pointset_from_csv(pts.read_text()) == symmetric_staircases(7)
    assert run(capsys, "render", "pointset", pts, "-o", svg)[0] == 0
    text = svg.read_text()
    xml.dom.minidom.parseString(text)
    assert text.count("<polyline") == 7
    heat = tmp_path / "h.svg"
    assert run(capsys, "render", "heatmap", pts, "--size", 128, "--cells", 16, "-o", heat)[0] == 0
    assert heat.read_text().count("<rect") == 16 * 16 + 1


def test_staircase_greedy_bands(capsys):
    code, out, _ = run(capsys, "staircase", "--m", 16, "--xi", 2)
    assert code == 0
    ps = pointset_from_csv(out)
    assert ps.blue and all(0 <= c <= 1 for p in ps.blue + ps.red for c in p)
    assert run(capsys, "staircase", "--m", 0)[0] == 2


def test_frontier_matches_module(tmp_path, capsys):
    files = []
    for name, n in (("greedy", 16), ("axis-order", 8), ("tradeoff", 12)):
        f = tmp_path / ("%s.json" % name)
        run(capsys, "build", name, "--n", n, "--c", 2, "-o", f)
        files.append(f)
    code, out, _ = run(capsys, "frontier", *files)
    assert code == 0
    assert frontier_from_csv(out) == frontier([load_tree(f) for f in files])


def test_probe(tmp_path, capsys):
    f = tmp_path / "p.json"
    run(capsys, "build", "random-proper", "--n", 16, "--dim", 3, "--seed", 1, "-o", f)
    code, out, _ = run(capsys, "probe", f)
    assert code == 0 and json.loads(out)["crossing_deviation"] == "21/8"
    odd = tmp_path / "odd.json"
    run(capsys, "build", "axis-order", "--n", 5, "--dim", 3, "-o", odd)
    assert run(capsys, "probe", odd)[0] == 2


def test_outputs_are_deterministic(tmp_path, capsys):
    outputs = []
    for k in range(2):
        d = tmp_path / str(k)
        d.mkdir()
        run(capsys, "build", "random-weak", "--n", 12, "--seed", 5, "-o", d / "t.json")
        run(capsys, "map", d / "t.json", "-o", d / "p.csv")
        run(capsys, "render", "tree", d / "t.json", "-o", d / "t.svg")
        run(capsys, "render", "heatmap", d / "p.csv", "--cells", 20, "-o", d / "h.svg")
        outputs.append([(d / n).read_bytes() for n in ("t.json", "p.csv", "t.svg", "h.svg")])
    assert outputs[0] == outputs[1]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "digiray", "build", "greedy", "--n", "7"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_render_functions():
    t = greedy_weak_cdr(8)
    svg = render_tree(t)
    xml.dom.minidom.parseString(svg)
    assert svg.count("<line") == len(t.vertices) - 1
    assert svg.count("<circle") == 2
    ps = symmetric_staircases(3)
    assert render_pointset(ps) == render_pointset(ps)
    assert render_heatmap(ps, RenderSpec("heatmap", size=64, heat_cells=4)).count("<rect") == 17
    assert heat_color(-1) == "#000000" and heat_color(1) == "#00ff00" and heat_color(5) == "#00ff00"
    with pytest.raises(ValueError):
        RenderSpec("movie")
