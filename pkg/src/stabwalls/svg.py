"""SVG rendering of wall sets.

Exact values are turned into decimals only here, at 12 significant digits.
Two modes: ``slice`` draws the semicircles of one or more u-slices in the
(s, t) half-plane; ``parabola`` draws, in the (s, u) plane, the curve of
critical abscissae s = y1/x - sqrt(F(u)) and the wall endpoints of each slice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .enumeration import WallSet
from .numerics import as_q
from .walls import F_value

PALETTE = ("#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#117a65", "#5d6d7e")


def _num(x: float) -> str:
    out = f"{x:.12g}"
    return "0" if out == "-0" else out


@dataclass(frozen=True)
class PlotSpec:
    s_range: Optional[tuple] = None
    t_range: Optional[tuple] = None
    u_range: Optional[tuple] = None
    width: int = 800
    height: int = 450
    margin: int = 40
    mode: str = "slice"
    stroke_width: float = 1.5
    colors: tuple = PALETTE
    show_c0: bool = True
    show_vertical_asymptote: bool = True
    parabola_samples: int = 64
    title: str = ""

    def __post_init__(self):
        if self.mode not in ("slice", "parabola"):
            raise ValueError(f"unknown plot mode {self.mode!r}")
        for name in ("s_range", "t_range", "u_range"):
            rng = getattr(self, name)
            if rng is not None:
                lo, hi = as_q(rng[0]), as_q(rng[1])
                if not lo < hi:
                    raise ValueError(f"{name} must be increasing")
                object.__setattr__(self, name, (lo, hi))


@dataclass
class _Canvas:
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    spec: PlotSpec
    items: list = field(default_factory=list)

    def px(self, x: float) -> float:
        inner = self.spec.width - 2 * self.spec.margin
        return self.spec.margin + (x - self.x_lo) / (self.x_hi - self.x_lo) * inner

    def py(self, y: float) -> float:
        inner = self.spec.height - 2 * self.spec.margin
        return self.spec.height - self.spec.margin - (y - self.y_lo) / (self.y_hi - self.y_lo) * inner

    def sx(self, dx: float) -> float:
        return dx / (self.x_hi - self.x_lo) * (self.spec.width - 2 * self.spec.margin)

    def sy(self, dy: float) -> float:
        return dy / (self.y_hi - self.y_lo) * (self.spec.height - 2 * self.spec.margin)

    def line(self, x1, y1, x2, y2, color="#000000", dash=None, width=1.0, label=None):
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        cls = f' class="{label}"' if label else ""
        self.items.append(
            f'<line{cls} x1="{_num(self.px(x1))}" y1="{_num(self.py(y1))}" x2="{_num(self.px(x2))}" y2="{_num(self.py(y2))}" '
            f'stroke="{color}" stroke-width="{_num(width)}"{extra}/>'
        )

    def text(self, x, y, content, anchor="middle"):
        self.items.append(f'<text x="{_num(x)}" y="{_num(y)}" font-size="11" font-family="sans-serif" text-anchor="{anchor}">{escape(content)}</text>')

    def document(self) -> str:
        w, h = self.spec.width, self.spec.height
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
            f'<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
        ]
        if self.spec.title:
            head.append(f'<title>{escape(self.spec.title)}</title>')
        return "\n".join(head + self.items + ["</svg>"]) + "\n"


def _asymptote(ws: WallSet) -> Optional[Fraction]:
    v = ws.v
    if v is None or v.x == 0:
        return None
    return v.y1 / v.x


def _auto_s_range(wallsets: Sequence[WallSet]) -> tuple:
    xs = []
    for ws in wallsets:
        for e in ws.circles:
            r = math.sqrt(e.Rsq)
            xs += [float(e.C) - r, float(e.C) + r]
        xs += [float(line.s) for line in ws.vertical_lines]
        xs.append(float(ws.report.C0))
        a = _asymptote(ws)
        if a is not None:
            xs.append(float(a))
    lo, hi = min(xs), max(xs)
    pad = max(0.5, 0.08 * (hi - lo))
    return lo - pad, hi + pad


def _axes(cv: _Canvas, x_label: str, y_label: str) -> None:
    y0 = max(cv.y_lo, 0.0) if cv.y_lo <= 0 <= cv.y_hi else cv.y_lo
    cv.line(cv.x_lo, y0, cv.x_hi, y0, color="#444444", label="axis")
    x0 = 0.0 if cv.x_lo <= 0 <= cv.x_hi else cv.x_lo
    cv.line(x0, cv.y_lo, x0, cv.y_hi, color="#444444", label="axis")
    cv.text(cv.spec.width - cv.spec.margin, cv.py(y0) + 14, x_label, anchor="end")
    cv.text(cv.px(x0) + 6, cv.spec.margin - 8, y_label, anchor="start")
    for tick in range(math.ceil(cv.x_lo), math.floor(cv.x_hi) + 1):
        cv.line(tick, y0, tick, y0 + (cv.y_hi - cv.y_lo) * 0.01, color="#444444", label="tick")
        cv.text(cv.px(tick), cv.py(y0) + 26, str(tick))


def emit_svg(wallsets, spec: PlotSpec = PlotSpec()) -> str:
    """Render one WallSet, or a list of them (one per u-slice), as an SVG document."""
    if isinstance(wallsets, WallSet):
        wallsets = [wallsets]
    wallsets = list(wallsets)
    if not wallsets:
        raise ValueError("nothing to plot")
    if spec.mode == "parabola":
        return _emit_parabola(wallsets, spec)
    s_lo, s_hi = (float(spec.s_range[0]), float(spec.s_range[1])) if spec.s_range else _auto_s_range(wallsets)
    if spec.t_range:
        t_lo, t_hi = float(spec.t_range[0]), float(spec.t_range[1])
    else:
        radii = [math.sqrt(e.Rsq) for ws in wallsets for e in ws.circles]
        t_lo, t_hi = 0.0, max(radii + [0.5 * (s_hi - s_lo) * spec.height / spec.width]) * 1.08
    cv = _Canvas(s_lo, s_hi, t_lo, t_hi, spec)
    _axes(cv, "s", "t")
    for idx, ws in enumerate(wallsets):
        color = spec.colors[idx % len(spec.colors)]
        for e in ws.circles:
            r = math.sqrt(e.Rsq)
            c = float(e.C)
            cv.items.append(
                f'<path class="wall" d="M {_num(cv.px(c - r))} {_num(cv.py(0))} A {_num(cv.sx(r))} {_num(cv.sy(r))} 0 0 1 {_num(cv.px(c + r))} {_num(cv.py(0))}" '
                f'fill="none" stroke="{color}" stroke-width="{_num(spec.stroke_width)}"/>'
            )
        for line in ws.vertical_lines:
            cv.line(float(line.s), 0.0, float(line.s), t_hi, color=color, width=spec.stroke_width, label="line-wall")
        if spec.show_c0:
            c0 = float(ws.report.C0)
            cv.line(c0, 0.0, c0, t_hi, color=color, dash="4 3", label="c0")
        a = _asymptote(ws)
        if spec.show_vertical_asymptote and a is not None:
            cv.line(float(a), 0.0, float(a), t_hi, color="#888888", dash="1 3", label="slope")
        if len(wallsets) > 1:
            cv.text(spec.width - spec.margin, spec.margin + 14 * idx, f"u = {ws.u}", anchor="end")
    return cv.document()


def _emit_parabola(wallsets: Sequence[WallSet], spec: PlotSpec) -> str:
    ws0 = wallsets[0]
    v, surface = ws0.v, ws0.surface
    if v is None or v.x == 0:
        raise ValueError("parabola mode needs a positive-rank character")
    us = sorted(ws.u for ws in wallsets)
    if spec.u_range:
        u_lo, u_hi = spec.u_range
    else:
        span = max(us[-1] - us[0], Fraction(1))
        u_lo, u_hi = us[0] - span / 4, us[-1] + span / 4
    a = float(v.y1 / v.x)
    n = max(spec.parabola_samples, 2)
    samples = [u_lo + (u_hi - u_lo) * Fraction(i, n - 1) for i in range(n)]
    curve = [(a - math.sqrt(F_value(v, u, surface)), float(u)) for u in samples]
    points = []
    for ws in wallsets:
        for e in ws.circles:
            r = math.sqrt(e.Rsq)
            points += [(float(e.C) - r, float(ws.u)), (float(e.C) + r, float(ws.u))]
    xs = [p[0] for p in curve + points] + [a]
    if spec.s_range:
        s_lo, s_hi = float(spec.s_range[0]), float(spec.s_range[1])
    else:
        s_lo, s_hi = min(xs) - 0.5, max(xs) + 0.5
    cv = _Canvas(s_lo, s_hi, float(u_lo), float(u_hi), spec)
    _axes(cv, "s", "u")
    d = " ".join(f"{'M' if i == 0 else 'L'} {_num(cv.px(x))} {_num(cv.py(y))}" for i, (x, y) in enumerate(curve))
    cv.items.append(f'<path class="c0-trace" d="{d}" fill="none" stroke="#b03a2e" stroke-width="{_num(spec.stroke_width)}"/>')
    cv.line(a, float(u_lo), a, float(u_hi), color="#888888", dash="1 3", label="slope")
    for idx, ws in enumerate(wallsets):
        color = spec.colors[idx % len(spec.colors)]
        for e in ws.circles:
            r = math.sqrt(e.Rsq)
            y = float(ws.u)
            cv.line(float(e.C) - r, y, float(e.C) + r, y, color=color, width=spec.stroke_width, label="wall-extent")
    return cv.document()
