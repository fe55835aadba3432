from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from patternspace import catalog
from patternspace.core import PASS, FAIL
from patternspace.geometry import GroupSpec, Isometry, Window
from patternspace.instances import PointSet, dirac_comb
from patternspace.derivability import (window_equal, check_local_derivation, derive_rule, apply_rule,
                                       verify_mld_witness, verify_rule, symmetry_group, stabilizer,
                                       MLDWitness, LocalRule, PERIOD_EXHAUSTIVE)
from patternspace.voronoi import punctured_voronoi_tiling, voronoi_rules

T1 = GroupSpec.translations(1)
half_z = PointSet.periodic(T1, [(F(1, 2),)], [(0,)])


# ---------------------------------------------------------------- window_equal

def test_window_equal_integer_shift(z):
    e = Isometry.identity(1)
    assert window_equal(z, Isometry.shift((1,)), e, Window.ball((0,), 10))
    assert not window_equal(z, Isometry.shift((F(1, 2),)), e, Window.ball((0,), 1))


def test_window_equal_checkerboard_diagonal():
    cb = catalog.checkerboard(2)
    e = Isometry.identity(2)
    assert window_equal(cb, Isometry.shift((1, 1)), e, Window.ball((0, 0), 5))
    assert not window_equal(cb, Isometry.shift((1, 0)), e, Window.ball((0, 0), 5))


@settings(deadline=None, max_examples=40)
@given(a=st.integers(-6, 6), b=st.integers(-6, 6), c=st.integers(-6, 6))
def test_window_equal_is_equivalence(a, b, c):
    # shifts by multiples of 1/3 on the fifth-shifted set, window of radius 2
    d = catalog.fifth_shifted()
    g = [Isometry.shift((F(k, 3),)) for k in (a, b, c)]
    W = Window.ball((0,), 2)
    assert window_equal(d, g[0], g[0], W)
    assert window_equal(d, g[0], g[1], W) == window_equal(d, g[1], g[0], W)
    if window_equal(d, g[0], g[1], W) and window_equal(d, g[1], g[2], W):
        assert window_equal(d, g[0], g[2], W)


# ---------------------------------------------------------------- check_local_derivation

def test_checkerboard_derives_vertices():
    cb = catalog.checkerboard(2)
    v = check_local_derivation(cb, catalog.lattice_points(2), 3, [1, 2])
    assert v.status == PASS and v.certificate == PERIOD_EXHAUSTIVE


def test_coarse_to_fine(z):
    assert check_local_derivation(z, half_z, 0, [1, 2])


def test_fine_to_coarse_fails_at_half_shift(z):
    v = check_local_derivation(half_z, z, 1, [1, 2])
    assert v.status == FAIL
    # the counterexample relates frames differing by the 1/2-shift
    diff = v.counterexample["gamma"].translation[0] - v.counterexample["eta"].translation[0]
    assert diff % 1 == F(1, 2)


def test_anything_derives_zero(z):
    assert check_local_derivation(z, z.zero_like(), 0, [1])


def test_ld_is_transitive(z):
    # Z -> (1/2)Z -> Dirac comb of (1/2)Z, composed margin 0 + 0
    mu, _ = dirac_comb(half_z)
    assert check_local_derivation(z, half_z, 0, [1, 2])
    assert check_local_derivation(half_z, mu, 0, [1, 2])
    assert check_local_derivation(z, mu, 0, [1, 2])


@settings(deadline=None, max_examples=15)
@given(t=st.tuples(st.integers(-8, 8), st.integers(-8, 8)), flip=st.booleans())
def test_ld_equivariant(t, flip):
    G = GroupSpec.inversion(2)
    D = catalog.lattice_points(2, "inversion")
    mu, wit = dirac_comb(D, weights=2)
    g = Isometry((F(t[0], 4), F(t[1], 3)), ((-1, 0), (0, -1)) if flip else ((1, 0), (0, 1)))
    assert verify_mld_witness(wit, D.act(g), mu.act(g), [1])


# ---------------------------------------------------------------- apply_rule / witnesses

def test_voronoi_rule_reproduces_cells(zsq):
    fwd, _ = voronoi_rules(zsq, True)
    T = punctured_voronoi_tiling(zsq, True)
    W = Window.ball((0, 0), 3)
    got = apply_rule(fwd, zsq, W)
    assert got == T.cut(W)
    # oracle: a cell around x lies in B(0, 3) iff |x| + sqrt(2)/2 <= 3 (no lattice point is near the boundary)
    inner = [(i, j) for i in range(-3, 4) for j in range(-3, 4)
             if (3 - F(707107, 1000000)) ** 2 >= i * i + j * j]
    assert len(got) == len(inner)


def test_empty_anchor_set_gives_zero(z):
    rule = derive_rule(z, half_z, r_in=0, r_own=F(1, 2), margin=1)
    assert apply_rule(rule, z.zero_like(), Window.ball((0,), 3)).is_zero()


def test_dirac_rule_on_integers(z):
    mu, wit = dirac_comb(z)
    W = Window.ball((F(1, 3),), 2)
    assert apply_rule(wit.forward, z, W) == mu.cut(W)


def test_mld_witness_zsq_dirac(zsq):
    mu, wit = dirac_comb(zsq)
    assert verify_mld_witness(wit, zsq, mu, [1, 2])


def test_mld_witness_voronoi(zsq):
    fwd, bwd = voronoi_rules(zsq, True)
    T = punctured_voronoi_tiling(zsq, True)
    assert verify_mld_witness(MLDWitness(fwd, bwd), zsq, T, [1, 2])


def _corrupt(rule: LocalRule) -> LocalRule:
    bad = LocalRule(rule.margin, rule.r_in, rule.r_out, rule.source_kind, rule.target_kind, rule.group,
                    target_kwargs=rule.target_kwargs, name="corrupted")
    shift = Isometry.shift((F(1, 7),) * rule.group.dim)
    for k, out in rule.table.items():
        bad.table[k] = out.act(shift)
    return bad


def test_corrupted_backward_rule_fails(zsq):
    mu, wit = dirac_comb(zsq)
    v = verify_mld_witness(MLDWitness(wit.forward, _corrupt(wit.backward)), zsq, mu, [1, 2])
    assert v.status == FAIL
    assert v.counterexample


def test_verify_rule_kind_mismatch(z):
    mu, wit = dirac_comb(z)
    v = verify_rule(wit.forward, z, z, [1])
    assert v.status == FAIL and v.counterexample["patterns"] == ["PointSet", "PointSet"]


# ---------------------------------------------------------------- symmetry

def test_rigid_frame_has_trivial_symmetry():
    G = GroupSpec.hyperoctahedral(2)
    Fr = PointSet(G, [(0, 0), (F(9, 10), 0), (0, F(11, 10))])
    assert symmetry_group(Fr).is_trivial()


def test_lattice_symmetry_contains_point_group():
    D = catalog.lattice_points(2, "hyperoctahedral")
    S = symmetry_group(D)
    assert len(S.point_parts()) == 8
    assert S.contains(Isometry.shift((3, -2)))
    assert not S.contains(Isometry.shift((F(1, 2), 0)))
    assert len(stabilizer(D)) == 8


def test_checkerboard_symmetry_lattice():
    S = symmetry_group(catalog.checkerboard(2))
    assert S.contains(Isometry.shift((1, 1)))
    assert not S.contains(Isometry.shift((1, 0)))
