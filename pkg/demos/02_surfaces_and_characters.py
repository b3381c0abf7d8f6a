"""
Surfaces and Chern characters.

A surface is described by its Neron-Severi Gram matrix, an ample class
omega and a class gamma orthogonal to it.  Characters are stored in the
coordinates (x, y1, y2, alpha^2, z) used by every wall formula.
"""

from __future__ import annotations

from stabwalls import SurfaceGeom, bogomolov_holds, from_coordinates, from_lattice, twist_by_omega
from stabwalls.errors import InvalidCharacter, InvalidSurface

ppas = SurfaceGeom(((2,),), (1,))  # principal polarisation, omega^2 = 2
product = SurfaceGeom(((0, 1), (1, 0)), (1, 1), (1, -1))  # E x E, omega = l1 + l2, gamma = l1 - l2

for name, s in [("ppas", ppas), ("product", product)]:
    print(f"{name}: g={s.g} d={s.d} gtilde={s.gtilde} g'={s.gprime}")

v = from_lattice(product, 1, (2, 1), 2)
print("c1 = 2 l1 + l2 on the product:", f"y1={v.y1} y2={v.y2} alpha^2={v.alpha_sq}")

for k in range(0, 5):
    v = from_lattice(ppas, 1, (2,), 4 - k)
    print(f"(1, 2w, {4 - k}): Bogomolov {bogomolov_holds(v, ppas)}")

print("(2, w, 1):", bogomolov_holds(from_lattice(ppas, 2, (1,), 1), ppas))

# twisting by exp(omega) multiplies Chern characters
t = twist_by_omega(from_lattice(ppas, 1, (2,), 0), 1, ppas)
print("(1, 2w, 0) * exp(w) =", (t.x, t.y1, t.z))

# Picard rank 3: only alpha^2 matters, so coordinates can be given directly
rho3 = SurfaceGeom(((2, 0, 0), (0, -2, 0), (0, 0, -2)), (1, 0, 0))
print("coordinates on a rank-3 lattice:", from_coordinates(rho3, 2, 1, 0, -2, 0))

# invalid input is rejected with the invariant that failed
for bad in (lambda: SurfaceGeom(((1, 0), (0, 1)), (1, 0)), lambda: from_lattice(ppas, 1, (1,), "1/2")):
    try:
        bad()
    except (InvalidSurface, InvalidCharacter) as exc:
        print("rejected:", exc)
