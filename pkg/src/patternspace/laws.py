"""Randomised law suites for the cutting operation, order and glueing.

Everything is driven by a seeded ``random.Random`` so a failing case can be
replayed from (kind, seed, index).  Coordinates live on a 1/4-grid; windows are
single balls or intersections of two balls, plus the occasional ALL / EMPTY.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .core import Verdict, PatternError, supremum, zero_of
from .geometry import GroupSpec, Isometry, Window, ALL, EMPTY
from .lattice import Lattice
from .shapes import Polygon
from .instances import (PointSet, Patch, LabeledPatch, Tile, MapPattern, Piece, tent, kronecker,
                        DiracComb, Plan)

KINDS = ("PointSet", "Patch", "LabeledPatch", "MapPattern", "DiracComb", "Plan")
GLUEABLE = ("PointSet", "Patch", "LabeledPatch", "MapPattern", "DiracComb", "Plan")


def _q(rng, lo, hi, den=4) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_point(rng, d, span=3):
    return tuple(_q(rng, -span, span) for _ in range(d))


def rand_group(rng, d) -> GroupSpec:
    return rng.choice([GroupSpec.translations(d), GroupSpec.inversion(d), GroupSpec.hyperoctahedral(d)])


def rand_window(rng, d, span=3) -> Window:
    u = rng.random()
    if u < 0.04:
        return ALL
    if u < 0.08:
        return EMPTY
    w = Window.ball(rand_point(rng, d, span), _q(rng, 0, 2 * span))
    if u < 0.6:
        return w
    return w & Window.ball(rand_point(rng, d, span), _q(rng, 0, 2 * span))


def rand_isometry(rng, group: GroupSpec) -> Isometry:
    return Isometry(rand_point(rng, group.dim, 2), rng.choice(group.point_group))


def _grid_cells(rng, d, n, span=3):
    cells = set()
    while len(cells) < n:
        cells.add(tuple(rng.randint(-span, span - 1) for _ in range(d)))
    return sorted(cells)


def rand_pattern(kind: str, rng, d: int, group: GroupSpec | None = None, periodic: bool | None = None):
    """A random valid pattern of the given kind (finite or lattice-periodic)."""
    g = group or rand_group(rng, d)
    periodic = rng.random() < 0.35 if periodic is None else periodic
    L = Lattice.standard(d, rng.choice([2, 3])) if periodic else None
    cap = 2 if periodic else 3            # cells live in [-cap, cap)^d; motif inside one period
    if periodic:
        span = int(L.basis[0][0])
        cells = sorted({tuple(rng.randrange(span) for _ in range(d)) for _ in range(rng.randint(1, 3))})
    else:
        cells = _grid_cells(rng, d, rng.randint(0, 5), cap)
    if kind == "PointSet":
        pts = [tuple(Fraction(c) + _q(rng, 0, 0) + Fraction(rng.randrange(4), 4) for c in cell) for cell in cells]
        return PointSet(g, pts, L)
    if kind in ("Patch", "LabeledPatch"):
        tiles = []
        for cell in cells:
            lo = tuple(Fraction(c) for c in cell)
            hi = tuple(c + 1 for c in lo)
            punct = ()
            if rng.random() < 0.3:
                punct = (tuple(c + Fraction(rng.randint(1, 3), 4) for c in lo),)
            label = rng.choice(["A", "B"]) if kind == "LabeledPatch" else None
            tiles.append(Tile(Polygon.box(lo, hi), punct, label))
        return (LabeledPatch if kind == "LabeledPatch" else Patch)(g, tiles, L)
    if kind == "MapPattern":
        atoms = []
        for cell in cells:
            c = tuple(Fraction(x) + Fraction(1, 2) for x in cell)
            if rng.random() < 0.2:
                atoms.append(kronecker(c, (rng.randint(1, 3),)))
            else:
                atoms.append(tent(c, Fraction(rng.randint(1, 2), 4), (rng.randint(1, 3),)))
        return MapPattern(g, [Piece(a) for a in atoms], L)
    if kind == "DiracComb":
        ats = [(tuple(Fraction(c) + Fraction(rng.randrange(4), 4) for c in cell),
                rng.choice([1, 2, Fraction(-1, 2)])) for cell in cells]
        return DiracComb(g, ats, L)
    if kind == "Plan":
        ents = [(rng.randrange(2), Isometry(tuple(Fraction(c) for c in cell), rng.choice(g.point_group)))
                for cell in cells]
        return Plan(g, ents, L)
    raise PatternError(f"no generator for kind {kind!r}")


# ---------------------------------------------------------------- single-case laws

def axiom_case(p, w1: Window, w2: Window, gamma: Isometry) -> str | None:
    """None when every cut law holds on (p, w1, w2, gamma); else the law's name."""
    a = p.cut(w1)
    if a.cut(w2) != p.cut(w1 & w2):
        return "axiom 1: cut(cut(p,w1),w2) = cut(p, w1 ∩ w2)"
    if p.cut(ALL) != p:
        return "cut by ALL"
    if not p.cut(EMPTY).is_zero():
        return "cut by EMPTY"
    # support axiom on the finite piece a: a ∧ w2 = a iff supp a ⊆ w2
    if (a.cut(w2) == a) != a.support_within(w2):
        return "axiom 2: cut(p,w) = p iff w ⊇ supp p"
    # supp(p ∧ C) ⊆ supp p ∩ C
    if not a.support_within(w1) and not w1.is_all:
        return "supp(p ∧ C) ⊆ C"
    if not a.leq(p):
        return "p ∧ C ≤ p"
    if a.act(gamma) != p.act(gamma).cut(w1.image(gamma)):
        return "equivariance: γ(p ∧ C) = (γp) ∧ γC"
    return None


def run_axioms(p, n: int = 50, seed: int = 0) -> Verdict:
    rng = random.Random(seed)
    d = p.dim
    for i in range(n):
        w1, w2 = rand_window(rng, d), rand_window(rng, d)
        g = rand_isometry(rng, p.group)
        bad = axiom_case(p, w1, w2, g)
        if bad:
            return Verdict.fail(bad, {"case": i, "seed": seed, "w1": repr(w1), "w2": repr(w2), "gamma": g}, i + 1)
    return Verdict.ok(n, "sampled")


def axiom_suite(kind: str, n: int = 200, seed: int = 0, dims=(1, 2)) -> Verdict:
    """n random (pattern, window, window, γ) cases for one kind."""
    rng = random.Random(f"{kind}:{seed}")
    for i in range(n):
        d = dims[i % len(dims)]
        p = rand_pattern(kind, rng, d)
        w1, w2 = rand_window(rng, d), rand_window(rng, d)
        g = rand_isometry(rng, p.group)
        bad = axiom_case(p, w1, w2, g)
        if bad:
            return Verdict.fail(bad, {"kind": kind, "case": i, "seed": seed, "p": p, "w1": repr(w1),
                                      "w2": repr(w2), "gamma": g}, i + 1)
    return Verdict.ok(n, "sampled")


# ---------------------------------------------------------------- order / glue

def order_case(p, q, r) -> str | None:
    if not p.leq(p):
        return "reflexive"
    if p.leq(q) and q.leq(p) and p != q:
        return "antisymmetric"
    if p.leq(q) and q.leq(r) and not p.leq(r):
        return "transitive"
    z = p.zero_like()
    if not z.leq(p):
        return "zero is least"
    return None


def compatible_family(kind, rng, d, group, k: int = 3) -> list:
    """Cuts of one random finite pattern: pairwise compatible by construction."""
    base = rand_pattern(kind, rng, d, group, periodic=False)
    return [base.cut(rand_window(rng, d)) for _ in range(k)]


def glue_case(xs, C: Window) -> str | None:
    s = supremum(xs)
    lhs = supremum([x.cut(C) for x in xs])
    if lhs != s.cut(C):
        return "glue law: ⋁(Ξ ∧ C) = (⋁Ξ) ∧ C"
    if not all(x.leq(s) for x in xs):
        return "upper bound"
    if supremum(xs + [s.zero_like()]) != s:
        return "⋁(Ξ ∪ {0}) = ⋁Ξ"
    return None


def glue_suite(kind: str, n: int = 100, seed: int = 0, dims=(1, 2)) -> Verdict:
    rng = random.Random(f"glue:{kind}:{seed}")
    for i in range(n):
        d = dims[i % len(dims)]
        g = rand_group(rng, d)
        xs = compatible_family(kind, rng, d, g)
        C = rand_window(rng, d)
        bad = glue_case(xs, C)
        if bad:
            return Verdict.fail(bad, {"kind": kind, "case": i, "seed": seed}, i + 1)
        p, q, r = (rand_pattern(kind, rng, d, g, periodic=False) for _ in range(3))
        bad = order_case(p, q, r) or order_case(xs[0], xs[1], supremum(xs))
        if bad:
            return Verdict.fail("order: " + bad, {"kind": kind, "case": i, "seed": seed}, i + 1)
        if not supremum([], kind, g).is_zero() or zero_of(kind, g) != p.cut(EMPTY):
            return Verdict.fail("zero element", {"kind": kind, "case": i}, i + 1)
    return Verdict.ok(n, "sampled")
