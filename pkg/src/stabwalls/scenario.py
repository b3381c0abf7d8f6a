"""Scenario files: a surface, a character, slice values, filters and optional expectations."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .bounds import bounds_report, finiteness_probe
from .enumeration import EnumFilters, WallSet, enumerate_walls, verify_nesting
from .errors import StabWallsError
from .lattice import CharVector, SurfaceGeom, from_coordinates, from_lattice
from .numerics import Surd, as_q, q_str
from .walls import F_value, c_naught, locus_from_json, wall_circle


class ScenarioError(StabWallsError):
    """Malformed scenario file."""


def parse_witness(surface: SurfaceGeom, text: str, *, strict: bool = True) -> CharVector:
    """Parse ``"r,c1,ch2"`` with lattice components of c1 separated by ';'."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ScenarioError(f"witness {text!r} must look like 'r,c1,ch2'")
    rank = int(parts[0])
    c1 = [as_q(c) for c in parts[1].split(";")]
    return from_lattice(surface, rank, c1, as_q(parts[2]), strict=strict, for_walls=False)


def surface_from_json(data: dict) -> SurfaceGeom:
    gram = tuple(tuple(as_q(x) for x in row) for row in data["gram"])
    if "rank" in data and int(data["rank"]) != len(gram):
        raise ScenarioError("surface.rank disagrees with the gram matrix size")
    gtilde = as_q(data["gtilde"]) if data.get("gtilde") is not None else None
    return SurfaceGeom(gram, tuple(as_q(x) for x in data["omega"]), tuple(as_q(x) for x in data.get("gamma", [])), gtilde)


def surface_to_json(surface: SurfaceGeom) -> dict:
    return {
        "rank": surface.picard_rank,
        "gram": [[q_str(x) for x in row] for row in surface.gram],
        "omega": [q_str(x) for x in surface.omega],
        "gamma": [q_str(x) for x in surface.gamma],
        "gtilde": q_str(surface.gtilde),
    }


def character_from_json(surface: SurfaceGeom, data: dict, *, strict: bool = True) -> CharVector:
    c1 = data["c1"]
    if isinstance(c1, dict):
        return from_coordinates(surface, int(data["rank"]), c1["y1"], c1.get("y2", "0"), c1.get("alpha_sq", "0"), data["ch2"], strict=strict)
    return from_lattice(surface, int(data["rank"]), c1, as_q(data["ch2"]), strict=strict)


def character_to_json(v: CharVector) -> dict:
    if v.c1 is not None:
        c1 = [q_str(a) for a in v.c1]
    else:
        c1 = {"y1": q_str(v.y1), "y2": q_str(v.y2), "alpha_sq": q_str(v.alpha_sq)}
    return {"rank": v.x, "c1": c1, "ch2": q_str(v.z)}


@dataclass
class Scenario:
    name: str
    surface: SurfaceGeom
    character: CharVector
    slices: tuple
    filters: EnumFilters = EnumFilters()
    expected: dict = field(default_factory=dict)
    strict: bool = True
    description: str = ""

    @property
    def u(self) -> Fraction:
        return self.slices[0]

    @classmethod
    def from_json(cls, data: dict) -> "Scenario":
        try:
            strict = bool(data.get("strict", True))
            surface = surface_from_json(data["surface"])
            character = character_from_json(surface, data["character"], strict=strict)
            raw_u = data.get("slice", {}).get("u", "0")
            slices = tuple(as_q(u) for u in raw_u) if isinstance(raw_u, list) else (as_q(raw_u),)
            if not slices:
                raise ScenarioError("slice.u list is empty")
            filters = EnumFilters.from_json(data.get("filters", {}))
        except KeyError as exc:
            raise ScenarioError(f"missing field {exc}") from exc
        except TypeError as exc:
            raise ScenarioError(str(exc)) from exc
        return cls(data.get("name", "unnamed"), surface, character, slices, filters, dict(data.get("expected", {})), strict, data.get("description", ""))

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "surface": surface_to_json(self.surface),
            "character": character_to_json(self.character),
            "slice": {"u": [q_str(u) for u in self.slices] if len(self.slices) > 1 else q_str(self.slices[0])},
            "filters": self.filters.to_json(),
            "strict": self.strict,
        }
        if self.description:
            out["description"] = self.description
        if self.expected:
            out["expected"] = self.expected
        return out


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON ({exc})") from exc
    return Scenario.from_json(data)


def bundled_scenarios() -> list:
    """Paths of the fixtures shipped with the package, sorted by name."""
    root = resources.files("stabwalls") / "scenarios"
    return sorted((p for p in root.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)


@dataclass
class Check:
    u: Fraction
    key: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"u": q_str(self.u), "key": self.key, "ok": self.ok, "detail": self.detail}


def _circle_keys(items) -> set:
    return {(as_q(c), as_q(rsq)) for c, rsq in items}


def check_expectations(sc: Scenario) -> list:
    """Evaluate every expectation in the scenario at every slice value."""
    exp = sc.expected
    v, surface = sc.character, sc.surface
    checks = []
    for u in sc.slices:
        def add(key, ok, detail=""):
            checks.append(Check(u, key, bool(ok), detail))

        ws: Optional[WallSet] = None

        def walls() -> WallSet:
            nonlocal ws
            if ws is None:
                ws = enumerate_walls(v, u, surface, sc.filters)
            return ws

        if "F" in exp:
            got = F_value(v, u, surface)
            add("F", got == as_q(exp["F"]), f"got {q_str(got)}")
        if "C0" in exp:
            got = c_naught(v, u, surface)
            add("C0", got == Surd.from_json(exp["C0"]), f"got {got}")
        if "bounds" in exp:
            rep = bounds_report(v, u, surface).to_json()
            for k, want in exp["bounds"].items():
                got = rep.get(k, rep["special"].get(k))
                if isinstance(want, str) and got is not None and isinstance(got, str):
                    ok = as_q(got) == as_q(want)
                else:
                    ok = got == want
                add(f"bounds.{k}", ok, f"got {got!r}")
        if "critical_ray" in exp:
            probe = finiteness_probe(v, u, surface)
            want = exp["critical_ray"]
            ok = probe.critical_ray == (None if want is None else as_q(want))
            add("critical_ray", ok, f"got {probe.critical_ray}")
        for item in exp.get("walls", []):
            w = parse_witness(surface, item["witness"], strict=sc.strict)
            got = wall_circle(v, w, u, surface)
            add(f"wall[{item['witness']}]", got == locus_from_json(item["locus"]), f"got {got.to_json()}")
        if "circles_include" in exp:
            missing = _circle_keys(exp["circles_include"]) - set(walls().keys())
            add("circles_include", not missing, f"missing {sorted(map(str, missing))}" if missing else "")
        if "circles_exclude" in exp:
            present = _circle_keys(exp["circles_exclude"]) & set(walls().keys())
            add("circles_exclude", not present, f"present {sorted(map(str, present))}" if present else "")
        if "circles_exact" in exp:
            want = _circle_keys(exp["circles_exact"])
            got = set(walls().keys())
            add("circles_exact", want == got, f"got {sorted((q_str(a), q_str(b)) for a, b in got)}")
        if "empty" in exp:
            n = len(walls().circles)
            add("empty", (n == 0) == bool(exp["empty"]), f"{n} circles")
        if "nested" in exp:
            rep = verify_nesting(walls())
            add("nested", rep.nested == bool(exp["nested"]), f"{len(rep.violations)} violations")
        if "max_rank0_radius_below_y1" in exp:
            ok = all(e.Rsq < v.y1 ** 2 for e in walls().circles)
            add("max_rank0_radius_below_y1", ok)
    return checks
