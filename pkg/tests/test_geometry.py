from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from patternspace.geometry import (Isometry, GroupSpec, Ball, Window, ALL, EMPTY, isometry_algebra,
                                   gamma_metric_sq, window_intersect, region_containment, dist2,
                                   identity, DimensionMismatch)
from patternspace.shapes import Polygon

from conftest import points, radii, ROT90, MINUS_I2


def test_translation_image():
    g = Isometry.shift((F(1, 3), 2))
    _, _, y = isometry_algebra(g, g, (0, 0))
    assert y == (F(1, 3), 2)


def test_rot_then_shift_composition():
    # oracle: rot90 · ((1,0) + x) at x = 0 is rot90 (1,0) = (0,1)
    g = Isometry((0, 0), ROT90)
    h = Isometry.shift((1, 0))
    comp, _, _ = isometry_algebra(g, h, (0, 0))
    assert comp((0, 0)) == (0, 1)


def test_inverse_of_point_reflection():
    g = Isometry((1, 2), MINUS_I2)
    assert g.inverse()((1, 2)) == (0, 0)
    assert g((F(1, 2), 1)) == (F(1, 2), 1)   # centre of the reflection


def test_inverse_applied_to_image_is_identity():
    g = Isometry((1, 2), MINUS_I2)
    assert g.inverse()(g((0, 0))) == (0, 0)


def test_gamma_metric_examples():
    e = Isometry.identity(2)
    assert gamma_metric_sq(e, e) == (0, 0)
    assert gamma_metric_sq(e, Isometry.shift((3, 4))) == (25, 0)
    assert gamma_metric_sq(e, Isometry((0, 0), MINUS_I2)) == (0, 8)


def test_window_intersect_examples():
    b = Window.ball((0,), 1)
    assert window_intersect(b, ALL) == b
    assert window_intersect(b, EMPTY).is_empty
    w = Window.ball((0,), 1) & Window.ball((3,), 1)
    assert not any(w.contains((F(k, 4),)) for k in range(-8, 20))
    assert (Window.ball((0, 0), 2) & Window.ball((1, 0), 2)).contains((F(1, 2), 0))


def test_region_containment_examples():
    sq = Polygon.box((0, 0), (1, 1))
    assert region_containment(sq, Window.ball((F(1, 2), F(1, 2)), 1))
    assert not region_containment(Ball((0, 0), 1), Window.ball((0, 0), F(1, 2)))
    assert region_containment(sq, ALL)
    assert not region_containment(sq, EMPTY)


def test_group_validation_rejects_non_groups():
    with pytest.raises(ValueError):
        GroupSpec(2, (identity(2), ROT90))          # not closed
    with pytest.raises(ValueError):
        GroupSpec(2, (((1, 1), (0, 1)),))           # not orthogonal


def test_dimension_mismatch():
    with pytest.raises((DimensionMismatch, ValueError)):
        isometry_algebra(Isometry.identity(2), Isometry.identity(1), (0, 0))


@settings(deadline=None, max_examples=60)
@given(points(2), points(2), points(2), radii, radii, radii)
def test_intersect_membership(x, c1, c2, r1, r2, r3):
    w1, w2, w3 = Window.ball(c1, r1), Window.ball(c2, r2), Window.ball((0, 0), r3)
    assert (w1 & w2).contains(x) == (w1.contains(x) and w2.contains(x))
    assert (w1 & w2).contains(x) == (w2 & w1).contains(x)
    assert ((w1 & w2) & w3).contains(x) == (w1 & (w2 & w3)).contains(x)


@settings(deadline=None, max_examples=60)
@given(points(2), points(2), points(2), st.sampled_from(GroupSpec.hyperoctahedral(2).point_group))
def test_isometries_preserve_distance(x, y, t, A):
    g = Isometry(t, A)
    assert dist2(g(x), g(y)) == dist2(x, y)
    assert g.compose(g.inverse()).is_identity()


@settings(deadline=None, max_examples=60)
@given(points(2), points(2), st.sampled_from(GroupSpec.hyperoctahedral(2).point_group),
       st.sampled_from(GroupSpec.hyperoctahedral(2).point_group))
def test_translation_part_bounded_by_metric(a, b, A, B):
    g, h = Isometry(a, A), Isometry(b, B)
    t2, r2 = gamma_metric_sq(g, h)
    assert t2 == dist2(g((0, 0)), h((0, 0)))
    if A == B:
        assert r2 == 0
