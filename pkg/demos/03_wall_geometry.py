"""
Walls in a slice.

For a class v and a destabilising class w, the locus where their slopes
agree in the (s, t) half-plane is a semicircle (C, R^2) centred on the
s-axis, or the vertical line s = y1/x when the two omega-slopes match.
"""

from __future__ import annotations

from fractions import Fraction as Q

from stabwalls.walls import witness_class
from stabwalls import (
    F_value,
    SurfaceGeom,
    c1_window,
    c_naught,
    from_lattice,
    radius_sq_from_center,
    wall_circle,
    wall_through_point,

)

ppas = SurfaceGeom(((2,),), (1,))
product = SurfaceGeom(((0, 1), (1, 0)), (1, 1), (1, -1))

for k in (2, 4, 9):
    v = from_lattice(ppas, 1, (2,), 4 - k)
    w = from_lattice(ppas, 1, (1,), 1)
    loc = wall_circle(v, w, 0, ppas)
    print(f"k={k}: F={F_value(v, 0, ppas)} C0={c_naught(v, 0, ppas)} wall of O(w): C={loc.C} R^2={loc.Rsq}")

# on the product surface the slice parameter u matters through gamma
v = from_lattice(product, 1, (1, 1), -3)
for m in range(0, 4):
    loc = wall_circle(v, from_lattice(product, 1, (1, 0), -m), 0, product)
    print(f"w=(1, l1, {-m}):", loc.to_json())
for u in (Q(-1), Q(0), Q(1, 2)):
    print(f"u={u}: F={F_value(v, u, product)} C0={c_naught(v, u, product)}")

# torsion classes have a wall centre independent of the witness
v0 = from_lattice(ppas, 0, (1,), 1)
print("rank 0:", wall_circle(v0, from_lattice(ppas, 1, (1,), 1), 0, ppas).to_json())

# same slope gives a vertical line
v2 = from_lattice(ppas, 2, (2,), 0)
print("same slope:", wall_circle(v2, from_lattice(ppas, 1, (1,), 1), 0, ppas).to_json())

# the unique pseudo-wall through a point, and the radius from a centre
v4 = from_lattice(ppas, 1, (2,), 0)
print("through (-1/2, t^2=9/4):", wall_through_point(v4, 0, Q(-1, 2), Q(9, 4), ppas))
print("R^2 at C=-1:", radius_sq_from_center(v4, -1, 0, ppas))
print("c1 window for rank 3 under (2, 2w, 0):", [str(e) for e in c1_window(v2, 3, 0, ppas)])
print("flags:", witness_class(v4, from_lattice(ppas, 2, (1,), 0), 0, ppas).flags)
