"""
Bounds on where walls can live.

A pair (m, n) with g' n y1 - m x = p and no small-denominator fraction
between m/n and y1 g'/x gives a line that every wall stays left of.  With
R^2 = (C - y1/x)^2 - F this bounds the centres below and the radii above.
"""

from __future__ import annotations

import json

from stabwalls import SurfaceGeom, bounds_report, finiteness_probe, from_lattice, mn_search, xi_value

ppas = SurfaceGeom(((2,),), (1,))
product = SurfaceGeom(((0, 1), (1, 0)), (1, 1), (1, -1))

for k in (2, 4, 9):
    rep = bounds_report(from_lattice(ppas, 1, (2,), 4 - k), 0, ppas)
    print(f"ppas k={k}: (m,n)={rep.mn} C in [{rep.C_lower}, {rep.C0}) R <= {rep.R0} s in [{rep.s_min}, {rep.s_max})")

rep = bounds_report(from_lattice(product, 1, (2, 2), 0), 0, product)
print(f"product k=4: (m,n)={rep.mn} C_lower={rep.C_lower} R0={rep.R0} s_max={rep.s_max}")

# p > 1: several formulas are reported side by side
v = from_lattice(ppas, 2, (2,), 0)
rep = bounds_report(v, 0, ppas)
print("(2, 2w, 0):", rep.label, rep.C_lower, [(b.label, str(b.C_lower)) for b in rep.variants])

v = from_lattice(ppas, 5, (10,), 0)
p, xi = xi_value(v, ppas)
print(f"(5, 10w, 0): p={p} xi={xi} (m,n)={mn_search(v, 0, ppas, xi)}")

# special cases
print("line bundle:", bounds_report(from_lattice(ppas, 1, (1,), 1), 0, ppas).special)
print("torsion:", bounds_report(from_lattice(ppas, 0, (1,), 2), 0, ppas).special)
print("finiteness of (5, 3w, 1):", finiteness_probe(from_lattice(ppas, 5, (3,), 1), 0, ppas))
print(json.dumps(bounds_report(from_lattice(ppas, 1, (2,), 0), 0, ppas).to_json(), indent=1)[:400])
