"""
Enumerating walls.

enumerate_walls scans every integral class inside the region cut out by the
bounds and keeps the ones that pass the Bogomolov and heart filters.  A
radius cutoff (default R^2 >= 1/100) keeps the search finite.
"""

from __future__ import annotations

from fractions import Fraction as Q

from stabwalls import EnumFilters, SurfaceGeom, enumerate_walls, from_lattice, miniwalls_on_ray, verify_nesting

ppas = SurfaceGeom(((2,),), (1,))
product = SurfaceGeom(((0, 1), (1, 0)), (1, 1), (1, -1))


def show(title, ws):
    print(title)
    for e in ws.circles:
        wits = ", ".join(f"({w.w.x}, {[str(c) for c in w.w.c1]}, {w.w.z})" for w in e.witnesses)
        print(f"   C={e.C}  R^2={e.Rsq}  by {wits}")
    if not ws.circles:
        print("   no walls")
    for line in ws.vertical_lines:
        print(f"   vertical line s={line.s} ({len(line.witnesses)} classes)")


for k in (3, 4, 5):
    ws = enumerate_walls(from_lattice(ppas, 1, (2,), 4 - k), 0, ppas)
    show(f"ppas (1, 2w, {4 - k})", ws)
    print("   nested:", verify_nesting(ws).nested)

show("torsion (0, w, 2)", enumerate_walls(from_lattice(ppas, 0, (1,), 2), 0, ppas))
show("torsion (0, w, 1)", enumerate_walls(from_lattice(ppas, 0, (1,), 1), 0, ppas))
show("(2, 2w, 0), ranks up to 100", enumerate_walls(from_lattice(ppas, 2, (2,), 0), 0, ppas, EnumFilters(rank_max=100, radius_sq_min=None)))
show("product (1, w, -3)", enumerate_walls(from_lattice(product, 1, (1, 1), -3), 0, product))

# mini-walls: where the walls cross a vertical ray
ws = enumerate_walls(from_lattice(ppas, 1, (2,), -1), 0, ppas)
hits, _ = miniwalls_on_ray(ws, Q(-1, 4))
print("mini-walls on s=-1/4:", [str(h.t_sq) for h in hits])

# what the filters removed
ws = enumerate_walls(from_lattice(ppas, 1, (2,), -1), 0, ppas, EnumFilters(require_heart_condition=False))
print("without the heart filter:", len(ws.circles), "circles; rejections", ws.rejections)
