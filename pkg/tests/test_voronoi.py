from fractions import Fraction as F
import random

import pytest
from hypothesis import given, settings, strategies as st

from patternspace import catalog
from patternspace.core import FAIL
from patternspace.geometry import Isometry, Window, dist2
from patternspace.instances import PointSet
from patternspace.derivability import check_local_derivation, symmetry_group, verify_mld_witness
from patternspace.voronoi import (delone_parameters, punctured_voronoi_tiling, voronoi_mld_witness,
                                  cell_vertices, vertex_augmented, NotDelone)


def test_params_integers(z):
    P = delone_parameters(z)
    assert P.min_sep_sq == 1 and P.covering_sq == F(1, 4) and P.covering == F(1, 2)


def test_params_zsq(zsq):
    P = delone_parameters(zsq)
    assert P.min_sep_sq == 1 and P.covering_sq == F(1, 2)
    assert P.covering ** 2 >= F(1, 2)


def test_params_fifth(fifth):
    P = delone_parameters(fifth)
    # gaps alternate 2/5 and 3/5: separation 2/5, covering = half the larger gap
    assert P.min_sep_sq == F(4, 25) and P.covering == F(3, 10)


def test_finite_set_not_delone():
    with pytest.raises(NotDelone):
        delone_parameters(PointSet(catalog.group(1), [(0,), (1,)]))


def test_integer_cells(z):
    T = punctured_voronoi_tiling(z)
    tiles = T.cut(Window.ball((0,), 1)).sorted_elements()
    assert [t.shape.vertices for t in tiles] == [((F(-1, 2),), (F(1, 2),))]
    assert tiles[0].punctures == ((F(0),),)


def test_fifth_cells(fifth):
    T = punctured_voronoi_tiling(fifth, punctured=False)
    W = Window.ball((0,), 2)
    got = sorted(t.shape.vertices for t in T.cut(W).sorted_elements())
    # bisectors sit at 0 and 1/2 (mod 1): the cells are (k/2, k/2 + 1/2)
    want = sorted(((F(k, 2),), (F(k + 1, 2),)) for k in range(-4, 4))
    assert got == want


def test_zsq_cells_are_unit_squares(zsq):
    T = punctured_voronoi_tiling(zsq)
    for t in T.cut(Window.ball((0, 0), 3)).sorted_elements():
        (x, y), = t.punctures
        vs = set(t.shape.vertices)
        assert vs == {(x + a, y + b) for a in (F(-1, 2), F(1, 2)) for b in (F(-1, 2), F(1, 2))}


def test_zsq_witness_ladder(zsq):
    R = delone_parameters(zsq).covering
    assert verify_mld_witness(voronoi_mld_witness(zsq), zsq, punctured_voronoi_tiling(zsq), [R, 2 * R, 4 * R])


def test_fifth_punctured_vs_closed(fifth):
    wit = voronoi_mld_witness(fifth)
    R = delone_parameters(fifth).covering
    T = punctured_voronoi_tiling(fifth)
    assert verify_mld_witness(wit, fifth, T, [R, 2 * R, 4 * R])
    plain = punctured_voronoi_tiling(fifth, punctured=False)
    v = check_local_derivation(plain, fifth, wit.backward.margin, [R, 2 * R, 4 * R])
    assert v.status == FAIL
    # the closed cells are invariant under the 1/2-shift, the points are not
    assert symmetry_group(plain).contains(Isometry.shift((F(1, 2),)))
    assert not symmetry_group(T).contains(Isometry.shift((F(1, 2),)))
    assert symmetry_group(T).contains(Isometry.shift((1,)))


@pytest.mark.parametrize("c", [2, F(1, 3)])
def test_scaled_lattice(c):
    D = PointSet.periodic(catalog.group(1), [(c,)], [(0,)])
    wit = voronoi_mld_witness(D)
    assert wit.forward.margin == c and wit.backward.margin == c / 2
    assert verify_mld_witness(wit, D, punctured_voronoi_tiling(D), [c, 2 * c])


@settings(deadline=None, max_examples=15)
@given(seed=st.integers(0, 10 ** 6))
def test_cell_correctness_random(seed):
    rng = random.Random(seed)
    D = catalog.random_periodic_delone(rng, 2, max_motif=3)
    P = delone_parameters(D)
    T = punctured_voronoi_tiling(D)
    for t in T.sorted_elements():
        (x,) = t.punctures
        # sample: centroid and vertex/centre midpoints lie in the open cell
        samples = [t.shape.centroid()] + [tuple((a + b) / 2 for a, b in zip(v, x)) for v in t.shape.vertices]
        nb = [y for y in D.translates_near(x, 3 * P.covering) if y != x]
        for s in samples:
            assert all(dist2(s, x) < dist2(s, y) for y in nb)
        # a wider neighbour list gives the same cell
        assert set(cell_vertices(x, nb, P.covering + 1)) == set(t.shape.vertices)
        # puncture law: x sits inside the open cell and is removed from the tile
        assert t.shape.contains_open(x) and t.punctures == (x,)


@settings(deadline=None, max_examples=10)
@given(seed=st.integers(0, 10 ** 6), t=st.tuples(st.integers(-8, 8), st.integers(-8, 8)))
def test_voronoi_equivariant(seed, t):
    rng = random.Random(seed)
    D = catalog.random_periodic_delone(rng, 2, max_motif=3)
    g = Isometry.shift((F(t[0], 3), F(t[1], 5)))
    assert punctured_voronoi_tiling(D.act(g)) == punctured_voronoi_tiling(D).act(g)


def test_vertex_augmented_zsq(zsq):
    A = vertex_augmented(zsq)
    # Z^2 together with the cell corners (1/2 + Z)^2
    assert set(A.motif_in(zsq.lattice)) == {(F(0), F(0)), (F(1, 2), F(1, 2))}
