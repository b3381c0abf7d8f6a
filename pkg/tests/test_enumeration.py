from __future__ import annotations

from fractions import Fraction as Q

import pytest

from oracles import DIAG, PPAS, PRODUCT, brute_force_walls, slope_cross, to_char, witness_key
from stabwalls.bounds import bounds_report
from stabwalls.enumeration import CircleEntry, EnumFilters, WallSet, enumerate_walls, miniwalls_on_ray, verify_nesting
from stabwalls.errors import InvalidCharacter, NonTerminating
from stabwalls.lattice import SurfaceGeom, bogomolov_holds, char_difference, check_character, from_coordinates, from_lattice, twist_by_omega
from stabwalls.numerics import CircleRelation, Surd
from stabwalls.walls import SemiCircle, heart_condition, wall_circle


def ppas_v(k):
    return from_lattice(PPAS, 1, (2,), 4 - k)


def test_ppas_k4():
    ws = enumerate_walls(ppas_v(4), 0, PPAS)
    assert ws.keys() == [(Q(-1, 2), Q(9, 4))]
    keys = {witness_key(w) for w in ws.circles[0].witnesses}
    assert (1, (Q(1),), Q(1)) in keys and (0, (Q(1),), Q(-1)) in keys
    assert verify_nesting(ws).nested


def test_no_wall_examples():
    for k in range(-2, 4):
        assert enumerate_walls(from_lattice(PPAS, 0, (1,), 2 * k), 0, PPAS).circles == []
    ws = enumerate_walls(from_lattice(PPAS, 2, (2,), 0), 0, PPAS, EnumFilters(rank_max=100, radius_sq_min=None))
    assert ws.circles == []
    # the only same-slope pseudo-walls sit on s = y1/x, where Im Z(v) vanishes
    assert [line.s for line in ws.vertical_lines] == [1]
    # line-bundle classes have F = 0 in the slice u = y2/x
    for surface, cls in ((PPAS, (1, (1,), 1)), (PPAS, (3, (3,), 3)), (PRODUCT, (1, (1, 0), 0)), (DIAG, (2, (2, 0), 2))):
        v = to_char(surface, cls)
        u = v.y2 / v.x
        assert bounds_report(v, u, surface).F_zero_no_walls
        assert enumerate_walls(v, u, surface).circles == []


def test_product_l1_family():
    ws = enumerate_walls(from_lattice(PRODUCT, 1, (1, 1), -3), 0, PRODUCT)
    keys = set(ws.keys())
    family = {(Q(m - 3), Q(m * m - 8 * m + 12)) for m in range(0, 20)}
    assert keys & family == {(Q(-3), Q(12)), (Q(-2), Q(5))}


def test_rank_zero_wall():
    v = from_lattice(PPAS, 0, (1,), 1)
    ws = enumerate_walls(v, 0, PPAS)
    assert (Q(1, 2), Q(1, 4)) in ws.keys()
    assert all(e.Rsq < v.y1 ** 2 and e.C == Q(1, 2) for e in ws.circles)


def test_filters_validation():
    with pytest.raises(NonTerminating):
        enumerate_walls(ppas_v(4), 0, PPAS, EnumFilters(radius_sq_min=None))
    with pytest.raises(ValueError):
        EnumFilters(radius_sq_min=0)
    with pytest.raises(ValueError):
        EnumFilters(alpha_sq_values=(1,))
    f = EnumFilters(rank_max=3, alpha_sq_values=(0, -2))
    assert EnumFilters.from_json(f.to_json()) == f


def test_unbounded_lattice_direction():
    with pytest.raises(NonTerminating):
        enumerate_walls(from_lattice(PRODUCT, 1, (1, 1), -3), 0, PRODUCT,
                        EnumFilters(require_bogomolov_sub=False, require_bogomolov_quotient=False))


@pytest.mark.parametrize("surface, cls, u", [
    (PPAS, (1, (2,), -5), Q(0)),
    (PRODUCT, (1, (1, 1), -3), Q(1, 2)),
    (DIAG, (2, (1, 1), -3), Q(-1, 3)),
    (PPAS, (0, (2,), 1), Q(0)),
])
def test_soundness_double_evaluation(surface, cls, u):
    v = to_char(surface, cls)
    ws = enumerate_walls(v, u, surface)
    assert ws.circles
    rep = bounds_report(v, u, surface)
    for e in ws.circles:
        for wc in e.witnesses:
            w = from_lattice(surface, wc.w.x, wc.w.c1, wc.w.z, for_walls=False)
            loc = wall_circle(v, w, u, surface)
            assert loc == SemiCircle(e.C, e.Rsq)
            assert bogomolov_holds(w, surface)[0] and bogomolov_holds(char_difference(v, w, surface), surface)[0]
            assert heart_condition(v, w, loc)
            check_character(surface, w, for_walls=False)
            s = e.C
            assert slope_cross(surface, cls, (w.x, w.c1, w.z), s, u, e.Rsq) == 0
        assert Surd(e.C, -1, e.Rsq) < rep.C0 < Surd(e.C, 1, e.Rsq)
        if v.x > 0:
            assert rep.C_lower <= e.C and rep.C0 > e.C
            assert e.Rsq <= rep.R0 ** 2
            assert Surd(e.C, -1, e.Rsq) >= rep.s_min and Surd(e.C, 1, e.Rsq) <= rep.s_max
    assert verify_nesting(ws).nested


@pytest.mark.parametrize("surface, cls, u", [
    (PRODUCT, (1, (1, 1), -3), Q(0)),
    (DIAG, (1, (1, 0), -2), Q(1, 2)),
    (PRODUCT, (2, (1, 2), -1), Q(-1, 3)),
])
def test_brute_force_rank_two_lattices(surface, cls, u):
    v = to_char(surface, cls)
    f = EnumFilters(radius_sq_min=Q(1, 4))
    ws = enumerate_walls(v, u, surface, f)
    got = {(e.C, e.Rsq, witness_key(w)) for e in ws.circles for w in e.witnesses}
    r_box, c_box, chi_box = 4, 4, 10
    assert all(k[2][0] <= r_box and max(map(abs, k[2][1])) <= c_box and abs(k[2][2]) <= chi_box for k in got)
    _, want, cases = brute_force_walls(v, u, surface, f, r_box, c_box, chi_box)
    assert cases > 5000
    assert got == want


def test_relaxed_filters_give_supersets():
    v = ppas_v(4)
    base = set(enumerate_walls(v, 0, PPAS).keys())
    loose = set(enumerate_walls(v, 0, PPAS, EnumFilters(require_heart_condition=False)).keys())
    half = enumerate_walls(v, 0, PPAS, EnumFilters(require_integrality=False))
    assert base <= loose and base <= set(half.keys())
    assert any(wc.w.z.denominator == 2 for e in half.circles for wc in e.witnesses)


def test_near_misses_report_failed_filter():
    ws = enumerate_walls(ppas_v(5), 0, PPAS)
    assert ws.rejections and sum(ws.rejections.values()) > 0 or ws.near_misses == []
    for item in ws.near_misses:
        assert item["failed"] in ("bogomolov_w", "bogomolov_quotient", "heart_condition")
        assert item["witness"]["flags"][item["failed"]] is False


def test_twist_equivariance():
    for k in (2, 3, 5):
        v = ppas_v(k)
        for n in (-1, 1, 2):
            a = enumerate_walls(v, 0, PPAS)
            b = enumerate_walls(twist_by_omega(v, n, PPAS), 0, PPAS)
            assert b.keys() == [(C + n, R) for C, R in a.keys()]
            for ea, eb in zip(a.circles, b.circles):
                twisted = sorted(witness_key_tw(twist_by_omega(w.w, n, PPAS)) for w in ea.witnesses)
                assert twisted == sorted(witness_key(w) for w in eb.witnesses)


def witness_key_tw(w):
    return (w.x, tuple(Q(x) for x in w.c1), w.z)


def test_parallel_matches_sequential():
    v = ppas_v(9)
    seq = enumerate_walls(v, 0, PPAS)
    par = enumerate_walls(v, 0, PPAS, EnumFilters(workers=2))
    assert seq.to_json() == par.to_json()


def test_coordinate_mode_high_picard_rank():
    rho3 = SurfaceGeom(((2, 0, 0), (0, -2, 0), (0, 0, -2)), (1, 0, 0), gtilde=2)
    v = from_coordinates(rho3, 1, 2, 0, 0, 0)
    ws = enumerate_walls(v, 0, rho3, EnumFilters(alpha_sq_values=(0, -2)))
    base = enumerate_walls(ppas_v(4), 0, PPAS)
    assert set(base.keys()) <= set(ws.keys())
    rho3g = SurfaceGeom(((2, 0, 0), (0, -2, 0), (0, 0, -2)), (1, 0, 0), (0, 1, 0), gtilde=2)
    with pytest.raises(InvalidCharacter):
        enumerate_walls(from_coordinates(rho3g, 1, 2, 0, 0, 0), 0, rho3g)


def _artificial(keys):
    rep = bounds_report(ppas_v(4), 0, PPAS)
    return WallSet([CircleEntry(Q(c), Q(r)) for c, r in keys], [], rep)


def test_verify_nesting_examples():
    assert verify_nesting(enumerate_walls(ppas_v(4), 0, PPAS)).nested
    rep = verify_nesting(_artificial([(0, 1), (3, 1)]))
    assert not rep.nested and [rel for _, _, rel in rep.violations] == [CircleRelation.EXTERIOR]
    assert verify_nesting(_artificial([(0, 1)])).nested
    assert rep.to_json()["violations"][0]["relation"] == "exterior"


def test_miniwalls():
    ws = enumerate_walls(ppas_v(4), 0, PPAS)
    hits, lines = miniwalls_on_ray(ws, 0)
    assert [h.t_sq for h in hits] == [2] and lines == []
    assert miniwalls_on_ray(ws, 5)[0] == []
    assert miniwalls_on_ray(ws, Q(-1, 2))[0][0].t_sq == Q(9, 4)
    ws5 = enumerate_walls(ppas_v(5), 0, PPAS)
    t_sqs = [h.t_sq for h in miniwalls_on_ray(ws5, Q(-1, 4))[0]]
    assert t_sqs == sorted(t_sqs, reverse=True) and len(t_sqs) == len(ws5.circles)


def test_wallset_json_shape():
    data = enumerate_walls(ppas_v(4), 0, PPAS).to_json()
    assert set(data) >= {"circles", "vertical_lines", "bounds"}
    c = data["circles"][0]
    assert (c["C"], c["Rsq"]) == ("-1/2", "9/4")
    assert set(c["witnesses"][0]) == {"rank", "c1", "ch2", "flags"}
