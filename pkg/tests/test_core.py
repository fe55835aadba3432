from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from patternspace import catalog
from patternspace.core import (cut, act, is_leq, are_compatible, supremum, zero_of,
                               bounded_component_radius, KindMismatch, GroupError, NotPairwiseCompatible)
from patternspace.geometry import GroupSpec, Isometry, Window, ALL, EMPTY
from patternspace.instances import PointSet, Patch, LabeledPatch, MapPattern, Piece, box_tile, tent, kronecker
from patternspace.laws import KINDS, rand_pattern, rand_window, rand_isometry, axiom_case, order_case

from conftest import ROT90

T1 = GroupSpec.translations(1)
T2 = GroupSpec.translations(2)


def test_unit_square_tiling_cut_by_small_ball_is_zero():
    t = catalog.unit_square_tiling(2)
    c = cut(t, Window.ball((0, 0), F(1, 2)))
    assert c.is_zero()
    # ... while the support meets the ball everywhere off the grid lines
    assert t.support_contains((F(1, 4), F(1, 4)))


def test_cut_by_all_is_identity(zsq):
    assert cut(zsq, ALL) == zsq
    f = catalog.two_letter()
    assert cut(f, ALL) == f


def test_integers_cut_by_ball():
    z = catalog.lattice_points(1)
    got = cut(z, Window.ball((0,), F(5, 2))).sorted_elements()
    assert got == [(F(k),) for k in range(-2, 3)]


def test_translate_lattice_is_lattice(zsq):
    assert act(Isometry.shift((1, 0)), zsq) == zsq
    assert act(Isometry.shift((F(1, 2), 0)), zsq) != zsq


def test_identity_action(zsq):
    e = Isometry.identity(2)
    for p in (zsq, catalog.checkerboard(2), catalog.unit_square_tiling(2)):
        assert act(e, p) == p


def test_rot90_swaps_checkerboard_colours():
    cb = catalog.checkerboard(2, "hyperoctahedral")
    rot = act(Isometry((0, 0), ROT90), cb)
    # oracle: rotation sends cell (i, j) to cell (-j-1, i), flipping the parity of i + j
    W = Window.ball((0, 0), 3)
    want = []
    for t in cut(cb, W).sorted_elements():
        swapped = "W" if t.label == "B" else "B"
        want.append((t.shape.centroid(), swapped))
    got = {(t.shape.centroid(), t.label) for t in cut(rot, W).sorted_elements()}
    assert got == set(want)
    assert rot != cb


def test_act_outside_point_group_raises(zsq):
    with pytest.raises(GroupError):
        act(Isometry((0, 0), ROT90), zsq)


def test_tile_subset_order():
    T, S = box_tile((0, 0), (1, 1)), box_tile((2, 0), (3, 1))
    small, big = Patch(T2, [T]), Patch(T2, [T, S])
    assert is_leq(small, big)
    assert not is_leq(big, small)


def test_zero_is_least():
    for p in (catalog.lattice_points(2), catalog.checkerboard(2)):
        assert is_leq(p.zero_like(), p)


def test_overlapping_bumps_incomparable():
    fa = MapPattern(T1, [Piece(tent((0,), 1))])
    fb = MapPattern(T1, [Piece(tent((F(1, 2),), 1))])
    assert not is_leq(fa, fb)
    assert not is_leq(fb, fa)
    assert not are_compatible(fa, fb)      # they disagree on the overlap


def test_order_kind_mismatch():
    with pytest.raises(KindMismatch):
        is_leq(catalog.lattice_points(1), catalog.checkerboard(1))


def test_disjoint_patches_compatible():
    a = Patch(T2, [box_tile((0, 0), (1, 1))])
    b = Patch(T2, [box_tile((1, 0), (2, 1))])
    assert are_compatible(a, b)


def test_overlapping_distinct_tiles_incompatible():
    a = Patch(T2, [box_tile((0, 0), (1, 1))])
    b = Patch(T2, [box_tile((F(1, 2), 0), (F(3, 2), 1))])
    assert not are_compatible(a, b)
    with pytest.raises(NotPairwiseCompatible):
        supremum([a, b])


def test_kronecker_atoms_compatible():
    d0 = MapPattern(T1, [Piece(kronecker((0,)))])
    d1 = MapPattern(T1, [Piece(kronecker((1,)))])
    assert are_compatible(d0, d1)
    s = supremum([d0, d1])
    assert s.eval((0,)).vec == (1,) and s.eval((1,)).vec == (1,)


def test_supremum_of_patches_is_union():
    A = [box_tile((0, 0), (1, 1)), box_tile((1, 0), (2, 1))]
    B = [box_tile((1, 0), (2, 1)), box_tile((0, 1), (1, 2))]
    s = supremum([Patch(T2, A), Patch(T2, B)])
    assert s == Patch(T2, A + B)


def test_supremum_of_nothing_is_zero():
    assert supremum([], "Patch", T2).is_zero()


def test_supremum_with_zero(zsq):
    assert supremum([zsq, zsq.zero_like()]) == zsq


@pytest.mark.parametrize("kind", ["Patch", "MapPattern", "PointSet", "DiracComb"])
def test_cut_by_empty_is_zero_of_kind(kind, rng):
    p = rand_pattern(kind, rng, 2)
    assert cut(p, EMPTY) == zero_of(kind, p.group)


def test_unit_square_component_radius():
    c = bounded_component_radius(catalog.unit_square_tiling(2))
    assert c.radius_sq == 2              # diameter sqrt(2)
    assert c.radius ** 2 >= 2


def test_pointset_component_radius():
    assert bounded_component_radius(catalog.lattice_points(2)).radius == 1


def test_cut_is_below(zsq):
    w = Window.ball((F(1, 3), 0), F(7, 3))
    assert is_leq(cut(zsq, w), zsq)


# ---------------------------------------------------------------- properties

seeds = st.integers(0, 10 ** 6)


@settings(deadline=None, max_examples=60)
@given(kind=st.sampled_from(KINDS), seed=seeds, d=st.sampled_from([1, 2]))
def test_cut_laws_random(kind, seed, d):
    import random
    rng = random.Random(seed)
    p = rand_pattern(kind, rng, d)
    assert axiom_case(p, rand_window(rng, d), rand_window(rng, d), rand_isometry(rng, p.group)) is None


@settings(deadline=None, max_examples=40)
@given(kind=st.sampled_from(KINDS), seed=seeds, d=st.sampled_from([1, 2]))
def test_order_laws_random(kind, seed, d):
    import random
    rng = random.Random(seed)
    g = GroupSpec.translations(d)
    p = rand_pattern(kind, rng, d, g, periodic=False)
    w1, w2 = rand_window(rng, d), rand_window(rng, d)
    assert order_case(p.cut(w1 & w2), p.cut(w1), p) is None
    assert is_leq(p.cut(w1 & w2), p.cut(w1))        # monotone under cut


@settings(deadline=None, max_examples=40)
@given(kind=st.sampled_from(["PointSet", "Patch", "MapPattern", "DiracComb"]), seed=seeds)
def test_glue_commutes_with_cut_and_act(kind, seed):
    import random
    rng = random.Random(seed)
    g = GroupSpec.hyperoctahedral(2)
    base = rand_pattern(kind, rng, 2, g, periodic=False)
    xs = [base.cut(rand_window(rng, 2)) for _ in range(3)]
    C = rand_window(rng, 2)
    assert supremum([x.cut(C) for x in xs]) == supremum(xs).cut(C)
    gam = rand_isometry(rng, g)
    assert supremum([x.act(gam) for x in xs]) == supremum(xs).act(gam)


@settings(deadline=None, max_examples=30)
@given(kind=st.sampled_from(["PointSet", "Patch", "MapPattern", "DiracComb", "Plan"]), seed=seeds)
def test_empty_support_means_zero(kind, seed):
    import random
    rng = random.Random(seed)
    p = rand_pattern(kind, rng, 2, periodic=False)
    z = p.cut(Window.ball((100, 100), F(1, 2)))
    assert z.is_zero() and z == p.zero_like()
