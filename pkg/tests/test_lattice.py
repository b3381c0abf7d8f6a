from __future__ import annotations

import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from oracles import DIAG, PPAS, PRODUCT, ch_product, exp_omega, pair, random_class, to_char
from stabwalls.errors import InvalidCharacter, InvalidSurface
from stabwalls.lattice import (
    CharVector,
    SurfaceGeom,
    bogomolov_holds,
    check_character,
    delta_bar,
    discriminant,
    from_coordinates,
    from_lattice,
    inertia,
    twist_by_omega,
)


def test_surface_constants():
    assert (PPAS.g, PPAS.d, PPAS.gtilde, PPAS.gprime) == (2, 0, 2, 1)
    assert (PRODUCT.g, PRODUCT.d, PRODUCT.gtilde, PRODUCT.gprime) == (2, 2, 1, 2)
    assert (DIAG.g, DIAG.d, DIAG.gtilde, DIAG.gprime) == (2, 6, 2, 1)


@pytest.mark.parametrize(
    "kwargs, message",
    [
        (dict(gram=((1, 0), (0, 1)), omega=(1, 0)), "signature"),
        (dict(gram=((0, 1), (1, 0)), omega=(1, -1)), "not positive"),
        (dict(gram=((0, 1), (1, 0)), omega=(1, 1), gamma=(1, 0)), "orthogonal"),
        (dict(gram=((2,),), omega=(1,), gamma=(1,)), "orthogonal"),
        (dict(gram=((2, 1), (0, -2)), omega=(1, 0)), "symmetric"),
        (dict(gram=((2,),), omega=(1,), gtilde=1), "disagrees"),
        (dict(gram=((Q(1, 2),),), omega=(1,)), "integral"),
    ],
)
def test_invalid_surfaces(kwargs, message):
    with pytest.raises(InvalidSurface, match=message):
        SurfaceGeom(**kwargs)


def test_inertia():
    assert inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert inertia([[2, 0, 0], [0, -2, 0], [0, 0, 0]]) == (1, 1, 1)
    assert inertia([[1, 2, 3], [2, 4, 5], [3, 5, 6]])[2] == 0


def test_from_lattice_examples():
    for k in range(0, 10):
        v = from_lattice(PPAS, 1, (2,), 4 - k)
        assert (v.x, v.y1, v.y2, v.alpha_sq, v.z) == (1, 2, 0, 0, 4 - k)
    v = from_lattice(PRODUCT, 1, (2, 1), 2)
    assert (v.y1, v.y2, v.alpha_sq) == (Q(3, 2), Q(1, 2), 0)
    v = from_lattice(PPAS, 0, (1,), 2 * 3)
    assert (v.x, v.y1, v.z) == (0, 1, 6)


def test_invalid_characters():
    with pytest.raises(InvalidCharacter, match="ch2"):
        from_lattice(PPAS, 1, (1,), Q(1, 2))
    from_lattice(PPAS, 1, (1,), Q(1, 2), strict=False)
    with pytest.raises(InvalidCharacter, match="point"):
        from_lattice(PPAS, 0, (0,), 1)
    with pytest.raises(InvalidCharacter, match="lattice|integer"):
        from_lattice(PPAS, 1, (Q(1, 2),), 0, strict=False)
    with pytest.raises(InvalidCharacter, match="Hodge"):
        check_character(PPAS, CharVector(1, Q(1), Q(0), Q(1), Q(0)))
    with pytest.raises(InvalidCharacter, match="y2"):
        check_character(PPAS, CharVector(1, Q(1), Q(1), Q(0), Q(0)))


def test_from_coordinates_high_rank():
    rho3 = SurfaceGeom(((2, 0, 0), (0, -2, 0), (0, 0, -2)), (1, 0, 0), gtilde=2)
    v = from_coordinates(rho3, 2, 1, 0, -2, 0)
    assert v.c1 is None and v.c1_sq(rho3) == 0
    with pytest.raises(InvalidCharacter):
        from_coordinates(rho3, 2, 1, 0, 2, 0)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 4), st.integers(-5, 5), st.integers(-5, 5), st.integers(-6, 6))
def test_readback(r, a, b, k):
    for surface in (PRODUCT, DIAG):
        c1 = (a, b)
        ch2 = pair(surface, c1, c1) / 2 + k
        v = from_lattice(surface, r, c1, ch2, for_walls=False)
        recon = tuple(v.y1 * surface.omega[i] + v.y2 * surface.gamma[i] for i in range(2))
        alpha = tuple(Q(c1[i]) - recon[i] for i in range(2))
        assert pair(surface, c1, surface.omega) == v.y1 * surface.g
        assert pair(surface, alpha, alpha) == v.alpha_sq
        assert pair(surface, alpha, surface.omega) == 0 and pair(surface, alpha, surface.gamma) == 0


def test_bogomolov_examples():
    for k in range(0, 8):
        assert bogomolov_holds(from_lattice(PPAS, 1, (2,), 4 - k), PPAS) == (True, 2 * k)
    assert bogomolov_holds(from_lattice(PPAS, 1, (1,), 1), PPAS) == (True, 0)
    assert bogomolov_holds(from_lattice(PPAS, 2, (1,), 1), PPAS) == (False, -2)


def test_delta_bar_differs_from_discriminant():
    rho3 = SurfaceGeom(((2, 0, 0), (0, -2, 0), (0, 0, -2)), (1, 0, 0), gtilde=2)
    v = from_coordinates(rho3, 1, 1, 0, -2, 0)
    assert delta_bar(v, rho3) == 4 and discriminant(v, rho3) == 0


def test_twist_examples():
    v = twist_by_omega(from_lattice(PPAS, 1, (2,), 0), 1, PPAS)
    # (1, 2w, 0) * (1, w, 1) = (1, 3w, 0 + 1 + 2*w.w) = (1, 3w, 5)
    assert (v.x, v.y1, v.z) == (1, 3, 5)
    w = from_lattice(PPAS, 0, (1,), 1)
    assert twist_by_omega(w, 0, PPAS) == w
    assert twist_by_omega(w, 1, PPAS).z == 1 + 2


def test_twist_matches_ring_multiplication():
    rng = random.Random(7)
    for surface in (PPAS, PRODUCT, DIAG):
        for _ in range(300):
            cls = random_class(rng, surface)
            n = rng.randint(-3, 3)
            r, c1, z = ch_product(surface, cls, exp_omega(surface, n))
            got = twist_by_omega(to_char(surface, cls), n, surface)
            assert (got.x, got.c1, got.z) == (r, c1, z)
            assert bogomolov_holds(got, surface) == bogomolov_holds(to_char(surface, cls), surface)
