from __future__ import annotations

import json
import re
import subprocess
import sys
from fractions import Fraction as Q

import pytest

from oracles import PPAS
from stabwalls.cli import run_cli
from stabwalls.enumeration import enumerate_walls
from stabwalls.lattice import from_lattice
from stabwalls.scenario import Scenario, ScenarioError, bundled_scenarios, check_expectations, load_scenario, parse_witness
from stabwalls.svg import PlotSpec, emit_svg

FIXTURES = {p.name: p for p in bundled_scenarios()}


def fixture(name):
    return str(FIXTURES[name])


def run(capsys, *argv):
    code = run_cli(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_round_trip(name):
    sc = load_scenario(FIXTURES[name])
    again = Scenario.from_json(json.loads(json.dumps(sc.to_json())))
    assert again == sc
    assert again.to_json() == sc.to_json()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_bundled_expectations(name):
    checks = check_expectations(load_scenario(FIXTURES[name]))
    assert checks and all(c.ok for c in checks), [c.to_json() for c in checks if not c.ok]


def test_parse_witness():
    w = parse_witness(PPAS, "1,1,1")
    assert (w.x, w.y1, w.z) == (1, 1, 1)
    with pytest.raises(ScenarioError):
        parse_witness(PPAS, "1,1")


def test_bounds_command(capsys):
    code, out, _ = run(capsys, "bounds", fixture("ppas_k4.json"))
    data = json.loads(out)
    assert code == 0
    assert (data["C_lower"], data["R0"], data["s_min"], data["s_max"]) == ("-1/2", "3/2", "-2", "1")
    code, out, _ = run(capsys, "bounds", fixture("ppas_k4.json"), "--format", "table")
    assert code == 0 and re.search(r"C_lower\s+-1/2", out)


def test_enumerate_ogrady(capsys):
    code, out, _ = run(capsys, "enumerate", fixture("ogrady.json"))
    assert code == 0 and json.loads(out)["circles"] == []


def test_wall_nesting_ray_commands(capsys):
    code, out, _ = run(capsys, "wall", fixture("product_k4.json"), "--witness", "1,2;1,2")
    assert code == 0 and json.loads(out) == {"kind": "semicircle", "C": "-2", "Rsq": "12", "u": "0"}
    code, out, _ = run(capsys, "nesting", fixture("ppas_k4.json"))
    assert code == 0 and json.loads(out)["nested"] is True
    code, out, _ = run(capsys, "ray", fixture("ppas_k4.json"), "--s", "0")
    assert code == 0 and json.loads(out)["miniwalls"][0]["t_sq"] == "2"
    code, out, _ = run(capsys, "enumerate", fixture("product_multi_u.json"), "--format", "table")
    assert code == 0 and out.count("u ") == 5


def test_run_all(capsys, tmp_path):
    code, out, _ = run(capsys, "scenario", "run-all")
    assert code == 0 and json.loads(out)["failed"] == 0
    bad = json.loads(FIXTURES["ppas_k4.json"].read_text())
    bad["expected"]["F"] = "5"
    (tmp_path / "bad.json").write_text(json.dumps(bad))
    code, out, _ = run(capsys, "scenario", "run-all", "--dir", str(tmp_path))
    assert code == 1 and json.loads(out)["failed"] == 1


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "bounds", str(tmp_path / "missing.json"))[0] == 2
    (tmp_path / "broken.json").write_text("{")
    assert run(capsys, "bounds", str(tmp_path / "broken.json"))[0] == 2
    data = json.loads(FIXTURES["ppas_k4.json"].read_text())
    data["character"]["ch2"] = "1/2"
    (tmp_path / "nonint.json").write_text(json.dumps(data))
    code, _, err = run(capsys, "bounds", str(tmp_path / "nonint.json"))
    assert code == 2 and "ch2 - c1^2/2" in err
    data["surface"]["gram"] = [["-2"]]
    (tmp_path / "nonample.json").write_text(json.dumps(data))
    code, _, err = run(capsys, "bounds", str(tmp_path / "nonample.json"))
    assert code == 2 and "signature" in err
    assert run(capsys, "wall", fixture("ppas_k4.json"), "--witness", "1,x,1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "enumerate", fixture("ppas_k4.json"), "--radius-sq-min", "0")[0] == 2


def test_plot_command(capsys, tmp_path):
    out_file = tmp_path / "walls.svg"
    code, out, _ = run(capsys, "plot", fixture("ppas_k4.json"), "--out", str(out_file))
    assert code == 0 and out_file.read_text().startswith("<?xml")
    code, _, _ = run(capsys, "plot", fixture("product_multi_u.json"), "--out", str(out_file), "--mode", "parabola")
    assert code == 0 and 'class="c0-trace"' in out_file.read_text()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "stabwalls", "bounds", fixture("finiteness.json")], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["finiteness"]["critical_ray"] == "1/5"


def _numbers(svg):
    return [float(x) for x in re.findall(r'(?:x1|x2|y1|y2|x|y)="(-?[\d.e+-]+)"', svg)]


def test_svg_deterministic_and_enclosed():
    ws = enumerate_walls(from_lattice(PPAS, 1, (2,), 0), 0, PPAS)
    spec = PlotSpec()
    a, b = emit_svg(ws, spec), emit_svg(ws, spec)
    assert a == b
    assert a.count('class="wall"') == 1 and 'class="c0"' in a
    assert all(-1e-6 <= x <= max(spec.width, spec.height) + 1e-6 for x in _numbers(a))
    for m in re.finditer(r'd="M ([\d.]+) ([\d.]+) A ([\d.]+) ([\d.]+) 0 0 1 ([\d.]+) ([\d.]+)"', a):
        x1, y0, rx, ry, x2, _ = map(float, m.groups())
        assert 0 <= x1 < x2 <= spec.width and y0 - ry >= 0
    # C0 = 0 sits at s = 0, which is also the vertical axis
    c0 = re.search(r'class="c0" x1="([\d.]+)"', a).group(1)
    axis = re.findall(r'class="axis" x1="([\d.]+)"', a)[1]
    assert c0 == axis
    assert all(len(n.replace("-", "").replace(".", "").lstrip("0")) <= 12 for n in re.findall(r'[\d.]+', a) if "." in n)


def test_svg_empty_and_multi():
    ws = enumerate_walls(from_lattice(PPAS, 2, (2,), 0), 0, PPAS)
    svg = emit_svg(ws)
    assert 'class="wall"' not in svg and 'class="axis"' in svg and 'class="c0"' in svg
    sc = load_scenario(FIXTURES["product_multi_u.json"])
    sets = [enumerate_walls(sc.character, u, sc.surface) for u in sc.slices]
    svg = emit_svg(sets)
    colors = set(re.findall(r'class="wall"[^>]*stroke="(#[0-9a-f]+)"', svg))
    assert len(colors) == len(sc.slices)
    with pytest.raises(ValueError):
        PlotSpec(mode="3d")
