from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from patternspace import catalog
from patternspace.core import PatternError, UnboundedRequest
from patternspace.geometry import GroupSpec, Isometry, Window, ALL, dist2
from patternspace.lattice import Lattice
from patternspace.instances import (PointSet, Patch, MapPattern, DiracComb, Piece, Representation, box_tile,
                                    tent, exp_bump, kronecker, indicator, eval_map, sqcap, dirac_comb,
                                    density_measure, materialize_window, validate)
from patternspace.derivability import verify_mld_witness
from patternspace.peq import bump_companion

from conftest import points, MINUS_I2

T1, T2 = GroupSpec.translations(1), GroupSpec.translations(2)


# ---------------------------------------------------------------- materialize_window

def test_zsq_in_ball_three_halves(zsq):
    got = set(materialize_window(zsq, Window.ball((0, 0), F(3, 2))).sorted_elements())
    # oracle: brute force over a box that certainly covers the ball
    want = {(F(i), F(j)) for i, j in product(range(-3, 4), repeat=2) if i * i + j * j <= F(9, 4)}
    assert got == want and len(got) == 9


def test_checkerboard_small_ball_empty():
    assert materialize_window(catalog.checkerboard(2), Window.ball((0, 0), F(1, 2))).is_zero()


def test_finite_pattern_on_all():
    p = PointSet(T2, [(0, 0), (1, 2)])
    assert materialize_window(p, ALL) == p


def test_periodic_on_all_refused(zsq):
    with pytest.raises(UnboundedRequest):
        materialize_window(zsq, ALL)


@settings(deadline=None, max_examples=50)
@given(c=points(1), r=st.builds(lambda n: F(n, 4), st.integers(0, 12)))
def test_materialize_matches_brute_force(c, r):
    d = catalog.fifth_shifted()          # {±1/5 + n}
    got = set(materialize_window(d, Window.ball(c, r)).sorted_elements())
    n0 = int(c[0] - r) - 2
    want = {(s + n,) for n in range(n0, n0 + int(2 * r) + 5) for s in (F(1, 5), F(-1, 5))
            if (s + n - c[0]) ** 2 <= r * r}
    assert got == want


# ---------------------------------------------------------------- eval_map

def test_tent_peak():
    f = MapPattern(T1, [Piece(tent((0,), F(1, 4)))])
    assert eval_map(f, (0,)).vec == (1,)
    assert eval_map(f, (F(1, 8),)).vec == (F(1, 2),)


def test_exp_bump_vanishes_outside_radius():
    r = F(1, 2)
    f = MapPattern(T1, [Piece(exp_bump((0,), r))])
    assert eval_map(f, (r,)).is_zero()
    assert eval_map(f, (F(3, 4),)).is_zero()
    v = eval_map(f, (F(1, 4),))
    assert not v.is_zero()
    # inner exponent -1/(r^2 - |x|^2) kept exactly
    assert v.tag == "E" and v.b == F(-1) / (r * r - F(1, 16))


def test_eval_outside_every_atom():
    f = MapPattern(T2, [Piece(tent((0, 0), 1)), Piece(kronecker((5, 5), (2,)))])
    assert eval_map(f, (3, 3)).is_zero()
    assert eval_map(f, (5, 5)).vec == (2,)


def test_indicator_closed_ball():
    f = MapPattern(T1, [Piece(indicator((0,), 1))])
    assert eval_map(f, (1,)).vec == (1,)
    assert eval_map(f, (F(5, 4),)).is_zero()


@settings(deadline=None, max_examples=50)
@given(x=points(2), t=points(2), flip=st.booleans())
def test_eval_twisted_equivariance(x, t, flip):
    G = GroupSpec.inversion(2)
    f = MapPattern(G, [Piece(tent((0, 0), 2, (3,))), Piece(tent((3, 1), 1, (-2,)))],
                   rep=Representation.parity(G))
    g = Isometry(t, MINUS_I2 if flip else ((1, 0), (0, 1)))
    lhs = eval_map(f.act(g), x)
    rhs = eval_map(f, g.inverse()(x)).transform(f.rep(g.rotation))
    assert lhs == rhs


# ---------------------------------------------------------------- sqcap

def test_sqcap_unit_squares():
    t = catalog.unit_square_tiling(2)
    got = sqcap(t, Window.ball((0, 0), F(1, 2)))
    # oracle: a square (i,i+1)x(j,j+1) meets the ball iff its closest point is within 1/2 of 0
    want = 0
    for i, j in product(range(-2, 2), repeat=2):
        cx = min(max(0, i), i + 1)
        cy = min(max(0, j), j + 1)
        want += cx * cx + cy * cy < F(1, 4)
    assert len(got) == want == 4


def test_sqcap_empty_and_all():
    from patternspace.geometry import EMPTY
    p = Patch(T2, [box_tile((0, 0), (1, 1)), box_tile((2, 2), (3, 3))])
    assert sqcap(p, EMPTY).is_zero()
    assert sqcap(p, ALL) == p


# ---------------------------------------------------------------- Dirac combs

def test_dirac_comb_cut(z):
    mu, _ = dirac_comb(z)
    got = mu.cut(Window.ball((0,), F(3, 2))).sorted_elements()
    assert [x for x, _ in got] == [(F(-1),), (F(0),), (F(1),)]
    assert all(w == 1 for _, w in got)


def test_empty_dirac_comb():
    mu, _ = dirac_comb(PointSet(T1, []))
    assert mu.is_zero()


def test_dirac_support_round_trip(fifth):
    mu, _ = dirac_comb(fifth, weights=F(-3, 2))
    assert mu.support_set() == fifth


def test_zero_weight_rejected(z):
    with pytest.raises(PatternError):
        dirac_comb(z, weights=0)


def test_dirac_witness_zero_margins(z):
    mu, wit = dirac_comb(z)
    assert wit.forward.margin == 0 and wit.backward.margin == 0
    assert verify_mld_witness(wit, z, mu, [1, 2])


# ---------------------------------------------------------------- density measures

def test_zero_density():
    m, _ = density_measure(MapPattern(T1, []))
    assert m.is_zero()


def test_density_same_support():
    f = MapPattern(T1, [Piece(tent((0,), F(1, 2)))])
    m, _ = density_measure(f)
    assert m.density() == f
    for x in (F(-1, 2), F(0), F(1, 4), F(3, 4)):
        assert m.support_contains((x,)) == f.support_contains((x,))


def test_density_witness_on_bump_comb(z):
    f, _ = bump_companion(z)
    m, wit = density_measure(f)
    assert wit.forward.margin == 0 and wit.backward.margin == 1
    assert verify_mld_witness(wit, f, m, [1, 2, 3])


# ---------------------------------------------------------------- validate

def test_overlapping_tiles_fail_with_pair():
    a, b = box_tile((0, 0), (1, 1)), box_tile((F(1, 2), 0), (F(3, 2), 1))
    v = validate(Patch(T2, [a, b]))
    assert not v
    assert len(v.counterexample["pair"]) == 2


def test_zsq_valid(zsq):
    assert validate(zsq)


def test_unreduced_motif_fails():
    v = validate(PointSet(T1, [(F(5, 2),)], Lattice(((1,),))))
    assert not v and "reduction" in v.reason


@settings(deadline=None, max_examples=40)
@given(n=st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_lattice_translation_is_identity(n):
    cb = catalog.checkerboard(2)
    assert cb.act(Isometry.shift(cb.lattice.vector(n))) == cb
