"""Exact computation, bounding and enumeration of walls for basic stability conditions on surfaces."""

from __future__ import annotations

from .bounds import BoundsReport, BoundVariant, FinitenessProbe, bounds_report, finiteness_probe, mn_search, xi_value
from .enumeration import EnumFilters, WallSet, enumerate_walls, miniwalls_on_ray, verify_nesting
from .errors import (
    InvalidCharacter,
    InvalidSurface,
    NonPositiveRadius,
    NonTerminating,
    OutOfRegion,
    StabWallsError,
    ZeroRank,
)
from .lattice import (
    CharVector,
    SurfaceGeom,
    bogomolov_holds,
    delta_bar,
    discriminant,
    from_coordinates,
    from_lattice,
    twist_by_omega,
)
from .numerics import CircleRelation, Ordering, Surd, circle_pair_classify, cmp_surd
from .walls import (
    Coincident,
    EmptyLocus,
    SemiCircle,
    VerticalLine,
    WitnessClass,
    c1_window,
    c_naught,
    F_value,
    radius_sq_from_center,
    wall_circle,
    wall_through_point,
)

__version__ = "0.1.0"
