"""
Explicit bounds on the region containing the walls for a class v.

The construction picks integers (m, n) with g' n y1 - m x = p, chosen so
that no fraction of small denominator separates m/n from y1 g'/x.  The line
s = m/(g' n) (or a nearby line when p > 1) then caps C + R for every wall,
which together with R^2 = (C - y1/x)^2 - F bounds the centres from below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InvalidCharacter, StabWallsError, ZeroRank
from .lattice import CharVector, SurfaceGeom, check_character, delta_bar
from .numerics import Rational, Surd, q_str, rational_sqrt, simplest_between
from .walls import F_coefficients, F_value, c_naught


def xi_value(v: CharVector, surface: SurfaceGeom) -> tuple[int, Fraction]:
    """p = gcd(x, y1 g') and the rank multiplier xi_p."""
    if v.x == 0:
        raise ZeroRank("xi is defined for positive rank only")
    scaled = v.y1 * surface.gprime
    if scaled.denominator != 1:
        raise InvalidCharacter("y1*g' must be an integer")
    p = math.gcd(v.x, int(scaled))
    if p == 1:
        return p, Fraction(1)
    k = 2 * surface.gtilde * p
    return p, k / (k - 1)


def farey_gap_empty(lo: Fraction, hi: Fraction, max_den: Rational) -> bool:
    """True when no reduced fraction j/k with 0 < k <= max_den lies strictly between lo and hi."""
    return simplest_between(lo, hi).denominator > max_den


def _ncond_holds(n: int, p: int, surface: SurfaceGeom, dbar: Fraction) -> bool:
    # n > (p/g') sqrt(g / dbar)  <=>  n^2 g'^2 dbar > p^2 g
    if dbar <= 0:
        return True
    return n * n * surface.gprime ** 2 * dbar > p * p * surface.g


def mn_search(v: CharVector, u: Rational, surface: SurfaceGeom, xi: Rational) -> tuple[int, int]:
    """Least n >= 1 (and its m) with g' n y1 - m x = p, an empty Farey gap and the n-condition."""
    if v.x <= 0:
        raise ZeroRank("(m, n) search needs positive rank")
    if F_value(v, u, surface) <= 0:
        raise StabWallsError("(m, n) search needs F > 0")
    xi = Fraction(xi)
    p, _ = xi_value(v, surface)
    yp, xp = int(v.y1 * surface.gprime) // p, v.x // p
    dbar = delta_bar(v, surface)
    target = Fraction(yp, xp)
    max_den = xi * v.x
    # y' n - x' m = 1 fixes n modulo x'
    n = pow(yp, -1, xp) % xp if xp > 1 else 0
    if n == 0:
        n = xp
    while True:
        m = (yp * n - 1) // xp
        if farey_gap_empty(Fraction(m, n), target, max_den) and _ncond_holds(n, p, surface, dbar):
            return m, n
        n += xp


@dataclass(frozen=True)
class BoundVariant:
    """One formula for the lower centre bound, with the radius and s-range it implies."""

    label: str
    m: int
    n: int
    C_lower: Fraction
    R0: Fraction
    s_min: Fraction
    s_max: Fraction

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "mn": [self.m, self.n],
            "C_lower": q_str(self.C_lower),
            "R0": q_str(self.R0),
            "s_min": q_str(self.s_min),
            "s_max": q_str(self.s_max),
        }


def _variant(label: str, m: int, n: int, y1_over_x: Fraction, cap: Fraction, F: Fraction) -> BoundVariant:
    # walls satisfy C + R <= cap; with R^2 = (C - y1/x)^2 - F this bounds C below
    delta = y1_over_x - cap
    C_lower = (cap + y1_over_x) / 2 - F / (2 * delta)
    R0 = cap - C_lower
    return BoundVariant(label, m, n, C_lower, R0, C_lower - R0, cap)


@dataclass(frozen=True)
class BoundsReport:
    p: Optional[int]
    xi: Optional[Fraction]
    mn: Optional[tuple]
    F: Optional[Fraction]
    C0: Surd
    C_lower: Optional[Fraction]
    R0: Optional[Fraction]
    s_min: Optional[Fraction]
    s_max: Optional[Fraction]
    F_zero_no_walls: bool = False
    rank0_radius_bound: Optional[Fraction] = None
    label: str = ""
    variants: tuple = ()
    F_quadratic: Optional[tuple] = None
    ncond_vacuous: Optional[bool] = None
    cap_left_of_C0: Optional[bool] = None
    u: Fraction = Fraction(0)
    notes: tuple = field(default=(), compare=False)

    @property
    def special(self) -> dict:
        return {"F_zero_no_walls": self.F_zero_no_walls, "rank0_radius_bound": self.rank0_radius_bound}

    def enumeration_lower(self) -> Optional[Fraction]:
        """The most permissive lower centre bound among the reported formulas."""
        if self.C_lower is None:
            return None
        return min([self.C_lower] + [var.C_lower for var in self.variants])

    def to_json(self) -> dict:
        def opt(x):
            return None if x is None else q_str(x)

        return {
            "u": q_str(self.u),
            "p": self.p,
            "xi": opt(self.xi),
            "mn": list(self.mn) if self.mn is not None else None,
            "F": opt(self.F),
            "C0": self.C0.to_json(),
            "C_lower": opt(self.C_lower),
            "R0": opt(self.R0),
            "s_min": opt(self.s_min),
            "s_max": opt(self.s_max),
            "special": {"F_zero_no_walls": self.F_zero_no_walls, "rank0_radius_bound": opt(self.rank0_radius_bound)},
            "label": self.label,
            "variants": [var.to_json() for var in self.variants],
            "F_quadratic": [q_str(c) for c in self.F_quadratic] if self.F_quadratic else None,
            "ncond_vacuous": self.ncond_vacuous,
            "cap_left_of_C0": self.cap_left_of_C0,
            "notes": list(self.notes),
        }


def bounds_report(v: CharVector, u: Rational, surface: SurfaceGeom) -> BoundsReport:
    """Centre, radius and s-range bounds for the walls of v in the slice with displacement u."""
    check_character(surface, v, strict=False)
    u = Fraction(u)
    C0 = c_naught(v, u, surface)
    if v.x == 0:
        c = C0.rational()
        return BoundsReport(
            p=None, xi=None, mn=None, F=None, C0=C0,
            C_lower=c, R0=v.y1, s_min=c - v.y1, s_max=c + v.y1,
            rank0_radius_bound=v.y1, label="rank 0: fixed centre, radius < y1", u=u,
        )
    F = F_value(v, u, surface)
    quad = F_coefficients(v, surface)
    a = v.y1 / v.x
    if F == 0:
        return BoundsReport(
            p=None, xi=None, mn=None, F=F, C0=C0, C_lower=None, R0=None, s_min=None, s_max=None,
            F_zero_no_walls=True, label="F = 0: no walls off s = y1/x", F_quadratic=quad, u=u,
        )
    p, xi = xi_value(v, surface)
    m, n = mn_search(v, u, surface, xi)
    g, gp, x = surface.g, surface.gprime, v.x
    dbar = delta_bar(v, surface)
    vacuous = dbar <= 0 or gp * gp * dbar >= p * p * g
    if p == 1:
        main = _variant("p=1", m, n, a, Fraction(m, gp * n), F)
        variants = ()
    else:
        main = _variant("p>1 (g)", m, n, a, a - Fraction(1, 2 * g * n * x), F)
        alt = _variant("p>1 (g')", m, n, a, a - Fraction(1, 2 * gp * n * x), F)
        m1, n1 = mn_search(v, u, surface, 1)
        # the p = 1 closed form evaluated literally with the xi = 1 pair
        c_low = (Fraction(m1 * x + gp * n1 * v.y1, gp * n1 * x) - F * gp * n1 * x) / 2
        r0 = (F * gp * n1 * x - Fraction(1, gp * n1 * x)) / 2
        p1 = BoundVariant("p=1 formula, xi=1", m1, n1, c_low, r0, c_low - r0, c_low + r0)
        variants = (alt, p1)
    notes = []
    cap_left = C0 >= main.s_max
    if cap_left:
        notes.append("C0 lies right of the cap line; the cap argument needs sqrt(F) > y1/x - cap")
    if dbar <= 0:
        notes.append("delta_bar <= 0: n-condition treated as vacuous")
    return BoundsReport(
        p=p, xi=xi, mn=(m, n), F=F, C0=C0,
        C_lower=main.C_lower, R0=main.R0, s_min=main.s_min, s_max=main.s_max,
        label=main.label, variants=variants, F_quadratic=quad,
        ncond_vacuous=vacuous, cap_left_of_C0=cap_left, u=u, notes=tuple(notes),
    )


@dataclass(frozen=True)
class FinitenessProbe:
    critical_ray: Optional[Fraction]
    globally_finite_hint: bool

    def to_json(self) -> dict:
        return {
            "critical_ray": None if self.critical_ray is None else q_str(self.critical_ray),
            "globally_finite_hint": self.globally_finite_hint,
        }


def finiteness_probe(v: CharVector, u: Rational, surface: SurfaceGeom) -> FinitenessProbe:
    """Rational critical ray y1/x - sqrt(F), present exactly when F is a rational square."""
    if v.x == 0:
        raise ZeroRank("finiteness probe needs positive rank")
    root = rational_sqrt(F_value(v, u, surface))
    if root is None:
        return FinitenessProbe(None, False)
    return FinitenessProbe(v.y1 / v.x - root, True)
