"""
Wall loci in a slice of basic stability conditions.

In the half-plane with coordinates (s, t), t > 0, and fixed displacement u
along gamma, the stability of w against v changes on the locus

    g(x c - r y1) ((s - C)^2 + t^2 - D - C^2) = 0,

a semicircle centred on the s-axis, or a vertical line when the two classes
have equal omega-slope.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import InvalidCharacter, OutOfRegion, ZeroRank
from .lattice import CharVector, SurfaceGeom, bogomolov_holds, char_difference
from .numerics import Rational, Surd, as_q, q_str


@dataclass(frozen=True)
class SemiCircle:
    C: Fraction
    Rsq: Fraction
    kind = "semicircle"

    def endpoints(self) -> tuple[Surd, Surd]:
        return Surd(self.C, -1, self.Rsq), Surd(self.C, 1, self.Rsq)

    def to_json(self) -> dict:
        return {"kind": self.kind, "C": q_str(self.C), "Rsq": q_str(self.Rsq)}


@dataclass(frozen=True)
class VerticalLine:
    s: Fraction
    kind = "line"

    def to_json(self) -> dict:
        return {"kind": self.kind, "s": q_str(self.s)}


@dataclass(frozen=True)
class EmptyLocus:
    """No point of the slice; C and Rsq are kept (when defined) for diagnostics."""

    C: Optional[Fraction] = None
    Rsq: Optional[Fraction] = None
    kind = "empty"

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.C is not None:
            out["C"] = q_str(self.C)
        if self.Rsq is not None:
            out["Rsq"] = q_str(self.Rsq)
        return out


@dataclass(frozen=True)
class Coincident:
    kind = "coincident"

    def to_json(self) -> dict:
        return {"kind": self.kind}


WallLocus = Union[SemiCircle, VerticalLine, EmptyLocus, Coincident]


def locus_from_json(data: dict) -> WallLocus:
    kind = data["kind"]
    if kind == "semicircle":
        return SemiCircle(as_q(data["C"]), as_q(data["Rsq"]))
    if kind == "line":
        return VerticalLine(as_q(data["s"]))
    if kind == "empty":
        return EmptyLocus(as_q(data["C"]) if "C" in data else None, as_q(data["Rsq"]) if "Rsq" in data else None)
    if kind == "coincident":
        return Coincident()
    raise ValueError(f"unknown locus kind {kind!r}")


def _require_rank(v: CharVector) -> None:
    if v.x == 0:
        raise ZeroRank("operation needs a class of positive rank")
    if v.x < 0:
        raise InvalidCharacter("negative rank")


def F_coefficients(v: CharVector, surface: SurfaceGeom) -> tuple[Fraction, Fraction, Fraction]:
    """(a, b, c) with F(u) = a u^2 + b u + c."""
    _require_rank(v)
    g, d, x = surface.g, surface.d, v.x
    a = d / g
    b = -2 * d * v.y2 / (g * x)
    c = d * v.y2 ** 2 / (g * x * x) + (v.y1 ** 2 * g - v.y2 ** 2 * d - 2 * x * v.z) / (x * x * g)
    return a, b, c


def F_value(v: CharVector, u: Rational, surface: SurfaceGeom) -> Fraction:
    """F = (d/g)(u - y2/x)^2 + (y1^2 g - y2^2 d - 2 x z)/(x^2 g)."""
    _require_rank(v)
    u = Fraction(u)
    g, d, x = surface.g, surface.d, v.x
    return d / g * (u - v.y2 / x) ** 2 + (v.y1 ** 2 * g - v.y2 ** 2 * d - 2 * x * v.z) / (x * x * g)


def c_naught(v: CharVector, u: Rational, surface: SurfaceGeom) -> Surd:
    """The abscissa every wall for v must cross."""
    u = Fraction(u)
    if v.x > 0:
        return Surd(v.y1 / v.x, -1, F_value(v, u, surface))
    if v.x == 0 and v.y1 > 0:
        return Surd((v.z + surface.d * u * v.y2) / (surface.g * v.y1))
    raise InvalidCharacter("C0 needs r > 0, or r = 0 with y1 > 0")


def wall_circle(v: CharVector, w: CharVector, u: Rational, surface: SurfaceGeom) -> WallLocus:
    """Locus where mu_Z(w) = mu_Z(v) in the slice with displacement u."""
    if not v.is_valid_for_walls():
        raise InvalidCharacter("v must have r > 0, or r = 0 with y1 > 0")
    u = Fraction(u)
    g, d = surface.g, surface.d
    x, y1, y2, z = v.x, v.y1, v.y2, v.z
    r, c, c2, chi = w.x, w.y1, w.y2, w.z
    slope_gap = x * c - r * y1
    lin = x * chi - r * z + u * d * (x * c2 - r * y2)
    if slope_gap == 0:
        if lin != 0:
            return VerticalLine(y1 / x)
        # x = r = 0 leaves a constant numerator: identically zero or never zero
        const = y1 * chi + u * d * y1 * c2 - c * z - c * u * y2 * d
        return Coincident() if const == 0 else EmptyLocus()
    A = g * slope_gap
    C = lin / A
    D = (2 * z * c - 2 * c2 * u * d * y1 - x * u * u * d * c + 2 * y2 * u * d * c - 2 * chi * y1 + r * u * u * d * y1) / A
    Rsq = D + C * C
    if x != 0:
        via_F = (C - y1 / x) ** 2 - F_value(v, u, surface)
        assert Rsq == via_F, "radius/centre identity failed"
    if Rsq > 0:
        return SemiCircle(C, Rsq)
    return EmptyLocus(C, Rsq)


def radius_sq_from_center(v: CharVector, C: Rational, u: Rational, surface: SurfaceGeom) -> Fraction:
    """(C - y1/x)^2 - F; non-positive values mean no real circle with that centre."""
    _require_rank(v)
    return (Fraction(C) - v.y1 / v.x) ** 2 - F_value(v, u, surface)


def wall_through_point(v: CharVector, u: Rational, s: Rational, t_sq: Rational, surface: SurfaceGeom) -> SemiCircle:
    """The unique real pseudo-wall for v through (s, t) with s < y1/x."""
    _require_rank(v)
    s, t_sq = Fraction(s), Fraction(t_sq)
    a = v.y1 / v.x
    if s >= a:
        raise OutOfRegion(f"s = {s} is not left of y1/x = {a}")
    if t_sq <= 0:
        raise OutOfRegion("t^2 must be positive")
    F = F_value(v, u, surface)
    C = (s * s + t_sq - a * a + F) / (2 * s - 2 * a)
    Rsq = (C - a) ** 2 - F
    assert Rsq == (s - C) ** 2 + t_sq and Rsq > 0
    return SemiCircle(C, Rsq)


def c1_window(v: CharVector, r: int, u: Rational, surface: SurfaceGeom) -> tuple[Surd, Surd]:
    """Open interval (r C0, y1 + (r - x) C0) for the omega-coefficient of a rank-r destabiliser."""
    C0 = c_naught(v, u, surface)
    return C0 * r, C0 * (r - v.x) + v.y1


def heart_condition(v: CharVector, w: CharVector, locus: WallLocus) -> bool:
    """0 <= Im Z(w) <= Im Z(v) at both ends of a semicircular wall.

    Im Z is affine in s, so the endpoints decide the whole arc.
    """
    if not isinstance(locus, SemiCircle):
        return False
    for s in locus.endpoints():
        sub = -(s * w.x) + w.y1
        quot = -(s * (v.x - w.x)) + (v.y1 - w.y1)
        if sub.sign() < 0 or quot.sign() < 0:
            return False
    return True


@dataclass(frozen=True)
class WitnessClass:
    w: CharVector
    locus: WallLocus
    flags: dict = field(compare=False)

    def to_json(self) -> dict:
        w = self.w
        if w.c1 is not None:
            c1 = [q_str(a) for a in w.c1]
        else:
            c1 = {"y1": q_str(w.y1), "y2": q_str(w.y2), "alpha_sq": q_str(w.alpha_sq)}
        return {"rank": w.x, "c1": c1, "ch2": q_str(w.z), "flags": dict(self.flags)}


def witness_flags(v: CharVector, w: CharVector, locus: WallLocus, surface: SurfaceGeom) -> dict:
    quotient = char_difference(v, w, surface)
    return {
        "bogomolov_w": bogomolov_holds(w, surface)[0],
        "bogomolov_quotient": bogomolov_holds(quotient, surface)[0],
        "heart_condition": heart_condition(v, w, locus),
        "same_slope": v.x * w.y1 == w.x * v.y1,
    }


def witness_class(v: CharVector, w: CharVector, u: Rational, surface: SurfaceGeom) -> WitnessClass:
    locus = wall_circle(v, w, u, surface)
    return WitnessClass(w, locus, witness_flags(v, w, locus, surface))
