"""
Enumeration of integral pseudo-walls that survive the numerical filters.

The search region for a rank-r destabiliser w = (r, c omega + c2 gamma + alpha', chi)
is cut out by three facts: c lies in the open window (r C0, y1 + (r - x) C0);
the centre lies in [C_lower, C0); and a wall of radius R has
2 r R <= y1 - x (C - R).  Inside that region the classes are scanned
exactly: c in (gtilde/g) Z, the lattice direction orthogonal to omega
bounded by the Bogomolov inequalities, chi in c1^2/2 + Z bounded by the
centre range.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import BoundsReport, bounds_report
from .errors import InvalidCharacter, NonTerminating
from .lattice import CharVector, SurfaceGeom, check_character
from .numerics import CircleRelation, Surd, as_q, circle_pair_classify, q_str
from .walls import Coincident, SemiCircle, VerticalLine, WitnessClass, c_naught, wall_circle, witness_flags

NEAR_MISS_CAP = 200


@dataclass(frozen=True)
class EnumFilters:
    """Filters and cutoffs for :func:`enumerate_walls`.

    At least one of ``rank_max`` and ``radius_sq_min`` must be set; the
    default radius cutoff is 1/100.
    """

    require_bogomolov_sub: bool = True
    require_bogomolov_quotient: bool = True
    require_heart_condition: bool = True
    require_integrality: bool = True
    rank_max: Optional[int] = None
    radius_sq_min: Optional[Fraction] = Fraction(1, 100)
    alpha_sq_values: tuple = (Fraction(0),)
    workers: int = 1

    def __post_init__(self):
        if self.radius_sq_min is not None:
            eps = as_q(self.radius_sq_min)
            if eps <= 0:
                raise ValueError("radius_sq_min must be positive")
            object.__setattr__(self, "radius_sq_min", eps)
        if self.rank_max is not None and self.rank_max < 0:
            raise ValueError("rank_max must be non-negative")
        vals = tuple(as_q(a) for a in self.alpha_sq_values)
        if any(a > 0 for a in vals):
            raise ValueError("alpha'^2 values must be <= 0")
        object.__setattr__(self, "alpha_sq_values", vals)

    def terminating(self) -> bool:
        return self.rank_max is not None or self.radius_sq_min is not None

    def to_json(self) -> dict:
        return {
            "require_bogomolov_sub": self.require_bogomolov_sub,
            "require_bogomolov_quotient": self.require_bogomolov_quotient,
            "require_heart_condition": self.require_heart_condition,
            "require_integrality": self.require_integrality,
            "rank_max": self.rank_max,
            "radius_sq_min": None if self.radius_sq_min is None else q_str(self.radius_sq_min),
            "alpha_sq_values": [q_str(a) for a in self.alpha_sq_values],
        }

    @classmethod
    def from_json(cls, data: dict) -> "EnumFilters":
        kwargs = dict(data)
        if "alpha_sq_values" in kwargs:
            kwargs["alpha_sq_values"] = tuple(as_q(a) for a in kwargs["alpha_sq_values"])
        if kwargs.get("radius_sq_min") is not None:
            kwargs["radius_sq_min"] = as_q(kwargs["radius_sq_min"])
        return cls(**kwargs)


@dataclass
class CircleEntry:
    C: Fraction
    Rsq: Fraction
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"C": q_str(self.C), "Rsq": q_str(self.Rsq), "witnesses": [w.to_json() for w in self.witnesses]}


@dataclass
class LineEntry:
    s: Fraction
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"s": q_str(self.s), "witnesses": [w.to_json() for w in self.witnesses]}


@dataclass
class WallSet:
    circles: list
    vertical_lines: list
    report: BoundsReport
    v: Optional[CharVector] = None
    u: Fraction = Fraction(0)
    surface: Optional[SurfaceGeom] = None
    rejections: dict = field(default_factory=dict)
    near_misses: list = field(default_factory=list)
    search: dict = field(default_factory=dict)

    def keys(self) -> list:
        return [(e.C, e.Rsq) for e in self.circles]

    def to_json(self) -> dict:
        return {
            "u": q_str(self.u),
            "circles": [e.to_json() for e in self.circles],
            "vertical_lines": [e.to_json() for e in self.vertical_lines],
            "bounds": self.report.to_json(),
            "rejections": dict(sorted(self.rejections.items())),
            "near_misses": self.near_misses,
            "search": self.search,
        }


# -- polynomials in the lattice parameter t, coefficients (a0, a1, a2) ------

def _padd(p, q):
    return tuple(a + b for a, b in zip(p, q))


def _pscale(p, k):
    return tuple(a * k for a in p)


def _pconst(k):
    return (Fraction(k), Fraction(0), Fraction(0))


def _peval(p, t):
    return p[0] + p[1] * t + p[2] * t * t


def _nonneg_interval(p) -> Optional[tuple]:
    """Integer interval where p(t) >= 0 if p has negative leading coefficient, else None.

    Returns (1, 0) for an empty set.
    """
    a0, a1, a2 = p
    if a2 >= 0:
        return None
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return (1, 0)
    mid = -a1 / (2 * a2)
    half = 1 / (2 * a2)  # negative
    return Surd(mid, half, disc).ceil(), Surd(mid, -half, disc).floor()


@dataclass(frozen=True)
class _Fiber:
    """Candidate first Chern classes with fixed c1.omega, parametrised by t."""

    c: Fraction
    base: Optional[tuple]
    direction: Optional[tuple]
    c1sq: tuple
    c2: tuple
    quot_sq: tuple
    alpha_sq: Optional[Fraction] = None

    def point(self, t: int):
        if self.direction is None:
            return self.base
        return tuple(b + t * e for b, e in zip(self.base, self.direction))


@dataclass(frozen=True)
class _Context:
    v: CharVector
    u: Fraction
    surface: SurfaceGeom
    filters: EnumFilters
    v_c1: Optional[tuple]
    C0: Surd
    C_lo: Optional[Fraction]
    C_hi: Optional[Fraction]
    lattice_mode: bool


def _v_lattice_class(v: CharVector, surface: SurfaceGeom) -> Optional[tuple]:
    if v.c1 is not None:
        return v.c1
    if surface.spans_omega_gamma():
        return surface.rational_class(v.y1, v.y2)
    return None


def _fibers(ctx: _Context, j: int) -> list:
    """Fibers with c = j / g' (so that c1.omega = gtilde * j)."""
    surface, v = ctx.surface, ctx.v
    g, d = surface.g, surface.d
    N = surface.gtilde * j
    c = N / g
    if not ctx.lattice_mode:
        out = []
        for a in ctx.filters.alpha_sq_values:
            c1sq = g * c * c + a
            quot = g * (v.y1 - c) ** 2 + v.alpha_sq + a
            out.append(_Fiber(c, None, None, _pconst(c1sq), _pconst(0), _pconst(quot), a))
        return out
    f = [int(x) for x in surface.omega_form]
    if len(f) == 1:
        if N % f[0]:
            return []
        base = (Fraction(int(N) // f[0]),)
        direction = None
    else:
        h, a, b = _ext_gcd(f[0], f[1])
        if N % h:
            return []
        k = int(N) // h
        base = (Fraction(a * k), Fraction(b * k))
        direction = (Fraction(-f[1] // h), Fraction(f[0] // h))
    vc1 = ctx.v_c1
    diff = tuple(p - q for p, q in zip(vc1, base))
    if direction is None:
        c1sq = _pconst(surface.dot(base, base))
        quot = _pconst(surface.dot(diff, diff))
        c2 = _pconst(-surface.dot(base, surface.gamma) / d if d > 0 else 0)
    else:
        e = direction
        c1sq = (surface.dot(base, base), 2 * surface.dot(base, e), surface.dot(e, e))
        quot = (surface.dot(diff, diff), -2 * surface.dot(diff, e), surface.dot(e, e))
        if d > 0:
            c2 = (-surface.dot(base, surface.gamma) / d, -surface.dot(e, surface.gamma) / d, Fraction(0))
        else:
            c2 = _pconst(0)
    return [_Fiber(c, base, direction, c1sq, c2, quot)]


def _ext_gcd(a: int, b: int) -> tuple:
    """(h, s, t) with s*a + t*b = h = gcd(a, b) > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _chi_constraints(ctx: _Context, r: int, fib: _Fiber, circle: bool):
    """Lower bounds, upper bounds and non-negativity constraints on chi, as polynomials in t."""
    v, u, surface, filt = ctx.v, ctx.u, ctx.surface, ctx.filters
    g, d = surface.g, surface.d
    x, y1, y2, z = v.x, v.y1, v.y2, v.z
    lowers, uppers, direct = [], [], []
    if circle:
        A = g * (x * fib.c - r * y1)
        if x > 0:
            # x chi = A C + r z - u d (x c2 - r y2)
            K = _padd(_pconst(r * z + u * d * r * y2), _pscale(fib.c2, -u * d * x))
            ends = [_pscale(_padd(_pconst(A * C), K), Fraction(1, x)) for C in (ctx.C_lo, ctx.C_hi)]
            lo, hi = ends if A > 0 else ends[::-1]
        else:
            # chi = (M - A (Rsq - C0^2)) / (2 y1), increasing in Rsq since A < 0
            C0 = ctx.C0.rational()
            M = _padd(_pconst(2 * z * fib.c + 2 * y2 * u * d * fib.c + r * u * u * d * y1), _pscale(fib.c2, -2 * u * d * y1))
            rsq_lo = filt.radius_sq_min or Fraction(0)
            rsq_hi = (y1 / r) ** 2
            lo, hi = (_pscale(_padd(M, _pconst(-A * (rs - C0 * C0))), 1 / (2 * y1)) for rs in (rsq_lo, rsq_hi))
        lowers.append(lo)
        uppers.append(hi)
    if filt.require_bogomolov_sub:
        if r > 0:
            uppers.append(_pscale(fib.c1sq, Fraction(1, 2 * r)))
        else:
            direct.append(fib.c1sq)
    if filt.require_bogomolov_quotient:
        q = x - r
        if q == 0:
            direct.append(fib.quot_sq)
        else:
            bound = _padd(_pconst(z), _pscale(fib.quot_sq, Fraction(-1, 2 * q)))
            (lowers if q > 0 else uppers).append(bound)
    return lowers, uppers, direct


def _t_range(fib: _Fiber, lowers, uppers, direct) -> Optional[tuple]:
    if fib.direction is None:
        return (0, 0)
    lo, hi = None, None
    polys = list(direct) + [_padd(U, _pscale(L, -1)) for U in uppers for L in lowers]
    for p in polys:
        iv = _nonneg_interval(p)
        if iv is None:
            continue
        lo = iv[0] if lo is None else max(lo, iv[0])
        hi = iv[1] if hi is None else min(hi, iv[1])
    if lo is None:
        return None
    return lo, hi


def _chi_values(ctx: _Context, fib: _Fiber, t: int, lowers, uppers, direct):
    if any(_peval(p, t) < 0 for p in direct):
        return None
    if not lowers or not uppers:
        return None
    lo = max(_peval(p, t) for p in lowers)
    hi = min(_peval(p, t) for p in uppers)
    if lo > hi:
        return []
    if ctx.filters.require_integrality:
        offset = _peval(fib.c1sq, t) / 2
        offset -= math.floor(offset)
        return [offset + k for k in range(math.ceil(lo - offset), math.floor(hi - offset) + 1)]
    return [Fraction(k, 2) for k in range(math.ceil(2 * lo), math.floor(2 * hi) + 1)]


def _make_witness(ctx: _Context, r: int, fib: _Fiber, t: int, chi: Fraction) -> CharVector:
    surface = ctx.surface
    c2 = _peval(fib.c2, t)
    if ctx.lattice_mode:
        c1 = fib.point(t)
        alpha_sq = _peval(fib.c1sq, t) - surface.g * fib.c ** 2 + surface.d * c2 ** 2
        return CharVector(r, fib.c, c2, alpha_sq, chi, c1)
    return CharVector(r, fib.c, c2, fib.alpha_sq, chi, None)


def _failed_filters(filt: EnumFilters, flags: dict) -> list:
    failed = []
    if filt.require_bogomolov_sub and not flags["bogomolov_w"]:
        failed.append("bogomolov_w")
    if filt.require_bogomolov_quotient and not flags["bogomolov_quotient"]:
        failed.append("bogomolov_quotient")
    if filt.require_heart_condition and not flags["heart_condition"]:
        failed.append("heart_condition")
    return failed


def _scan_rank(args) -> tuple:
    ctx, r = args
    v, surface, filt = ctx.v, ctx.surface, ctx.filters
    accepted, lines, near = [], [], []
    rejections = Counter()
    lo_w, hi_w = (ctx.C0 * r), (ctx.C0 * (r - v.x) + v.y1)
    gp = surface.gprime
    j_lo, j_hi = (lo_w * gp).floor() + 1, (hi_w * gp).ceil() - 1
    for j in range(j_lo, j_hi + 1):
        for fib in _fibers(ctx, j):
            same_slope = v.x * fib.c == r * v.y1
            if same_slope and (v.x == 0 or not 0 < r < v.x):
                continue
            lowers, uppers, direct = _chi_constraints(ctx, r, fib, circle=not same_slope)
            trange = _t_range(fib, lowers, uppers, direct)
            if trange is None:
                if same_slope:
                    rejections["unbounded_same_slope_family"] += 1
                    continue
                raise NonTerminating("lattice direction orthogonal to omega is unbounded; enable a Bogomolov filter")
            for t in range(trange[0], trange[1] + 1):
                chis = _chi_values(ctx, fib, t, lowers, uppers, direct)
                if chis is None:
                    if same_slope and (not lowers or not uppers):
                        rejections["unbounded_same_slope_family"] += 1
                    continue
                for chi in chis:
                    w = _make_witness(ctx, r, fib, t, chi)
                    locus = wall_circle(v, w, ctx.u, surface)
                    if same_slope:
                        if isinstance(locus, Coincident):
                            rejections["coincident"] += 1
                            continue
                        flags = witness_flags(v, w, locus, surface)
                        failed = [f for f in _failed_filters(filt, flags) if f != "heart_condition"]
                        if failed:
                            rejections[failed[0]] += 1
                            continue
                        lines.append((locus.s, w, flags))
                        continue
                    if not isinstance(locus, SemiCircle):
                        rejections["not_real"] += 1
                        continue
                    if not _in_region(ctx, locus):
                        rejections["outside_region"] += 1
                        continue
                    flags = witness_flags(v, w, locus, surface)
                    failed = _failed_filters(filt, flags)
                    if failed:
                        rejections[failed[0]] += 1
                        if len(failed) == 1:
                            near.append((locus, w, flags, failed[0]))
                        continue
                    accepted.append((locus, w, flags))
    return accepted, lines, rejections, near


def _in_region(ctx: _Context, locus: SemiCircle) -> bool:
    eps = ctx.filters.radius_sq_min
    if eps is not None and locus.Rsq < eps:
        return False
    if ctx.v.x == 0:
        return True
    return locus.C >= ctx.C_lo and ctx.C0 > locus.C


def _rank_limit(ctx: _Context, report: BoundsReport) -> int:
    v, filt = ctx.v, ctx.filters
    limits = []
    if filt.rank_max is not None:
        limits.append(filt.rank_max)
    eps = filt.radius_sq_min
    if eps is not None:
        # 2 r R <= y1 - x (C - R) with R >= sqrt(eps)
        if v.x == 0:
            K = v.y1
        else:
            a = v.y1 / v.x
            rsq_at_lo = (ctx.C_lo - a) ** 2 - report.F
            s_lo = Surd(ctx.C_lo, -1, rsq_at_lo).bracket()[0]
            K = v.y1 - v.x * s_lo
        limits.append(math.isqrt(math.floor(K * K / (4 * eps))) if K > 0 else 0)
    if not limits:
        raise NonTerminating("set rank_max or radius_sq_min")
    return min(limits)


def _group(accepted, lines, v, u, surface) -> tuple:
    circles: dict = {}
    for locus, w, flags in accepted:
        circles.setdefault((locus.C, locus.Rsq), []).append(WitnessClass(w, locus, flags))
    entries = [CircleEntry(C, Rsq, wits) for (C, Rsq), wits in sorted(circles.items())]
    by_s: dict = {}
    for s, w, flags in lines:
        by_s.setdefault(s, []).append(WitnessClass(w, VerticalLine(s), flags))
    line_entries = [LineEntry(s, wits) for s, wits in sorted(by_s.items())]
    return entries, line_entries


def _witness_key(wc: WitnessClass):
    w = wc.w
    return (w.x, w.y1, w.y2, w.alpha_sq, w.z, w.c1 or ())


def enumerate_walls(v: CharVector, u, surface: SurfaceGeom, filters: EnumFilters = EnumFilters()) -> WallSet:
    """All integral pseudo-walls for v in the slice u that pass the enabled filters."""
    u = as_q(u)
    check_character(surface, v, strict=False)
    if not filters.terminating():
        raise NonTerminating("filters need rank_max or radius_sq_min")
    report = bounds_report(v, u, surface)
    lattice_mode = surface.picard_rank <= 2 and _v_lattice_class(v, surface) is not None
    if not lattice_mode and surface.d > 0:
        raise InvalidCharacter("witness enumeration with gamma != 0 needs a lattice description of c1 (Picard rank <= 2)")
    C0 = c_naught(v, u, surface)
    search = {"lattice_mode": lattice_mode}
    if report.F_zero_no_walls:
        search["note"] = "F = 0: the c1 window is empty for every rank"
        return WallSet([], [], report, v, u, surface, {}, [], search)
    C_lo = C_hi = None
    if v.x > 0:
        C_lo = report.enumeration_lower()
        a = v.y1 / v.x
        eps = filters.radius_sq_min
        top = Surd(a, -1, report.F + eps) if eps is not None else C0
        C_hi = top.bracket()[1]
        if C_lo >= C0:
            search["note"] = "centre range [C_lower, C0) is empty"
            return WallSet([], [], report, v, u, surface, {}, [], search)
    ctx = _Context(v, u, surface, filters, _v_lattice_class(v, surface), C0, C_lo, C_hi, lattice_mode)
    r_hi = _rank_limit(ctx, report)
    r_lo = 1 if v.x == 0 else 0
    search.update({"rank_range": [r_lo, r_hi], "C_range": [q_str(C_lo), q_str(C_hi)] if C_lo is not None else None})
    tasks = [(ctx, r) for r in range(r_lo, r_hi + 1)]
    if filters.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=filters.workers) as pool:
            results = list(pool.map(_scan_rank, tasks))
    else:
        results = [_scan_rank(task) for task in tasks]
    accepted, lines, near = [], [], []
    rejections = Counter()
    for acc, ln, rej, nm in results:
        accepted.extend(acc)
        lines.extend(ln)
        rejections.update(rej)
        near.extend(nm)
    circles, line_entries = _group(accepted, lines, v, u, surface)
    for entry in circles:
        entry.witnesses.sort(key=_witness_key)
        _check_envelope(ctx, report, entry)
    for entry in line_entries:
        entry.witnesses.sort(key=_witness_key)
    near_json = [
        {"C": q_str(locus.C), "Rsq": q_str(locus.Rsq), "witness": WitnessClass(w, locus, flags).to_json(), "failed": failed}
        for locus, w, flags, failed in sorted(near, key=lambda item: (item[0].C, item[0].Rsq, item[1].x, item[1].y1, item[1].z))[:NEAR_MISS_CAP]
    ]
    search["near_misses_total"] = len(near)
    return WallSet(circles, line_entries, report, v, u, surface, dict(rejections), near_json, search)


def _check_envelope(ctx: _Context, report: BoundsReport, entry: CircleEntry) -> None:
    left, right = Surd(entry.C, -1, entry.Rsq), Surd(entry.C, 1, entry.Rsq)
    if ctx.v.x == 0:
        ok = entry.C == ctx.C0.rational() and entry.Rsq < ctx.v.y1 ** 2
    else:
        r0sq = (ctx.C_lo - ctx.v.y1 / ctx.v.x) ** 2 - report.F
        ok = ctx.C_lo <= entry.C and ctx.C0 > entry.C and left < ctx.C0 < right and entry.Rsq <= r0sq
    if not ok:
        raise AssertionError(f"circle ({entry.C}, {entry.Rsq}) escapes the wall envelope")


@dataclass
class NestingReport:
    nested: bool
    violations: list

    def to_json(self) -> dict:
        return {
            "nested": self.nested,
            "violations": [
                {"first": [q_str(a), q_str(b)], "second": [q_str(c), q_str(d)], "relation": rel.value}
                for (a, b), (c, d), rel in self.violations
            ],
        }


def verify_nesting(ws: WallSet) -> NestingReport:
    """Check that every pair of circles is equal or strictly nested."""
    keys = ws.keys()
    violations = []
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            rel = circle_pair_classify(*keys[i], *keys[j])
            if rel not in (CircleRelation.EQUAL, CircleRelation.NESTED):
                violations.append((keys[i], keys[j], rel))
    return NestingReport(not violations, violations)


@dataclass
class MiniWall:
    t_sq: Fraction
    C: Fraction
    Rsq: Fraction
    witnesses: list

    def to_json(self) -> dict:
        return {"t_sq": q_str(self.t_sq), "C": q_str(self.C), "Rsq": q_str(self.Rsq), "witnesses": [w.to_json() for w in self.witnesses]}


def miniwalls_on_ray(ws: WallSet, s0) -> tuple[list, list]:
    """Intersections of the walls with the vertical ray s = s0, t > 0.

    Returns (mini-walls sorted by decreasing t^2, vertical lines at s0).
    """
    s0 = as_q(s0)
    hits = []
    for entry in ws.circles:
        t_sq = entry.Rsq - (s0 - entry.C) ** 2
        if t_sq > 0:
            hits.append(MiniWall(t_sq, entry.C, entry.Rsq, entry.witnesses))
    hits.sort(key=lambda m: (-m.t_sq, m.C))
    lines = [entry for entry in ws.vertical_lines if entry.s == s0]
    return hits, lines
