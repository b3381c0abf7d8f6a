"""
Scenario files and figures.

Scenarios bundle a surface, a character, slice values, filters and expected
results.  The same files drive the command line tool (`stabwalls ...`).
"""

from __future__ import annotations

import sys
import tempfile
from pathlib import Path

from stabwalls import enumerate_walls
from stabwalls.cli import run_cli
from stabwalls.scenario import bundled_scenarios, check_expectations, load_scenario
from stabwalls.svg import PlotSpec, emit_svg

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="stabwalls-"))
out_dir.mkdir(parents=True, exist_ok=True)

fixtures = {p.name: p for p in bundled_scenarios()}
print("bundled scenarios:", ", ".join(sorted(fixtures)))

sc = load_scenario(fixtures["ppas_k4.json"])
for check in check_expectations(sc):
    print(f"   {check.key}: {'ok' if check.ok else 'FAILED'} {check.detail}")

# one u-slice, then a stack of slices
ws = enumerate_walls(sc.character, sc.u, sc.surface)
(out_dir / "ppas_k4.svg").write_text(emit_svg(ws, PlotSpec(title=sc.name)))

multi = load_scenario(fixtures["product_multi_u.json"])
sets = [enumerate_walls(multi.character, u, multi.surface) for u in multi.slices]
(out_dir / "product_slices.svg").write_text(emit_svg(sets, PlotSpec(title=multi.name)))
(out_dir / "product_su.svg").write_text(emit_svg(sets, PlotSpec(mode="parabola", title=multi.name)))
print("figures written to", out_dir)

# the command line front end, called in-process
code = run_cli(["bounds", str(fixtures["ppas_k4.json"]), "--format", "table"])
code |= run_cli(["scenario", "run-all", "--format", "table"])
sys.exit(code)
