"""Translation-theorem pipeline: replace the components of a decomposition by
marked building blocks and reassemble them along the same plan.

    p  ↔  (C_λ)  ↔  S = ⋁{γ R_λ : γ ∈ C_λ},   R_λ = ⋁{P0} ∪ {g t_{y_λ} E : g ∈ G_λ}

with E = ⋁{t_x P0 : x ∈ F} an asymmetric cluster of symmetric blocks.
Constants: r0 < min_sep(D)/4 (anchors of the plan within 4 r0 coincide),
r1 = r0/16, r2 = r1/16.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Verdict, PatternError, supremum, NotPairwiseCompatible
from .exact import sqrt_lower
from .geometry import (Isometry, Window, GroupSpec, identity, zero, unit, scale, dist2, norm2,
                       mat_vec, sub)
from .instances import PointSet, Patch, Tile, MapPattern, Piece, Atom, EXP, TENT, MapValue, \
    Representation, PeriodicFamily
from .instances.base import ElementPattern
from .shapes import Polygon, Disk
from .derivability import (MLDWitness, apply_rule, derive_pattern, check_local_derivation, common_lattice,
                           _centers, _first_diff, symmetry_group, _map_element, SAMPLED)
from .decompose import (Decomposition, check_decomposes, components_and_plan, plan_mld_witness,
                        gamma_offset)
from .voronoi import delone_parameters

TARGET_KINDS = ("PointSet", "Patch", "MapPattern")


class SynthesisError(PatternError):
    def __init__(self, stage, msg):
        super().__init__(f"[{stage}] {msg}")
        self.stage = stage


@dataclass
class BuildingBlockFamily:
    target_kind: str
    radius: Fraction
    blocks: list


# ---------------------------------------------------------------- blocks

def fixed_vector(rep: Representation, group: GroupSpec):
    """A nonzero v with φ(A)v = v for all A in G0 (group average of a basis vector)."""
    n = len(group.point_group)
    for i in range(rep.m):
        e = unit(rep.m, i)
        acc = [Fraction(0)] * rep.m
        for A in group.point_group:
            acc = [a + b for a, b in zip(acc, mat_vec(rep(A), e))]
        v = tuple(a / n for a in acc)
        if any(v):
            return v
    return None


def symmetric_building_block(kind: str, group: GroupSpec, r, rep: Representation | None = None,
                             profile: str = EXP):
    """P0 with ∅ ≠ supp P0 ⊆ B(0, r) and Sym_Γ P0 = Γ_0."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    d = group.dim
    o = zero(d)
    if kind == "PointSet":
        return PointSet(group, [o])
    if kind == "Patch":
        shape = Polygon.interval(-r, r) if d == 1 else Disk(o, r)
        return Patch(group, [Tile(shape)])
    if kind == "MapPattern":
        rep = rep or Representation.trivial(group, 1)
        v = fixed_vector(rep, group)
        if v is None:
            raise PatternError("no Γ0-fixed nonzero vector for this representation")
        return MapPattern(group, [Piece(Atom(profile, o, r, MapValue.rational(v)))], rep=rep)
    raise PatternError(f"no symmetric building blocks shipped for kind {kind}")


def _placements(p, q) -> list:
    """All γ with γp = q (finite element patterns)."""
    if p.is_zero() or q.is_zero() or len(p.elements) != len(q.elements):
        return []
    e0 = p.sorted_elements()[0]
    out = {}
    for e in q.sorted_elements():
        for xi in _map_element(p, e0, e):
            if p.act(xi) == q:
                out[xi.sort_key()] = xi
    return [out[k] for k in sorted(out)]


def validate_building_blocks(fam: BuildingBlockFamily) -> Verdict:
    r = Fraction(fam.radius)
    blocks = fam.blocks
    if not blocks:
        return Verdict.fail("axiom 1: empty family")
    for i, b in enumerate(blocks):
        if b.is_zero():
            return Verdict.fail("axiom 1: empty support", {"block": i})
        if not b.support_within(Window.ball(zero(b.dim), r)):
            return Verdict.fail("axiom 1: support not inside B(0, r)", {"block": i})
    # axiom 2: supports inside B(0, r) and anchors > 4r apart leave a gap > 2r; for the
    # shipped kinds disjoint supports are compatible.  Spot-check at the threshold.
    checked = len(blocks)
    d = blocks[0].dim
    gap = 4 * r + r / 64
    for a, b in itertools.product(blocks, repeat=2):
        for i in range(d):
            for A in b.group.point_group:
                moved = b.act(Isometry(scale(gap, unit(d, i)), A))
                checked += 1
                if not a.compatible(moved):
                    return Verdict.fail("axiom 2: separated blocks incompatible",
                                        {"shift": gap, "axis": i})
    for i, j in itertools.product(range(len(blocks)), repeat=2):
        for g in _placements(blocks[i], blocks[j]):
            checked += 1
            if i != j:
                return Verdict.fail("axiom 3: one block is a copy of another",
                                    {"blocks": (i, j), "gamma": g})
            if any(g.translation):
                return Verdict.fail("axiom 3: a symmetry moves the origin",
                                    {"block": i, "gamma": g})
    return Verdict.ok(checked)


def construct_asymmetric_cluster(p0, r1, r2):
    """(F, E): F = {0, s_1 e_1, ..., s_d e_d} (d = 1: {0, s_1, -s_2}) inside
    B(0, r1/2) with gaps > 4 r2, and E = ⋁{t_x P0 : x ∈ F}."""
    r1, r2 = Fraction(r1), Fraction(r2)
    if not 0 < r2 < r1 / 4:
        raise PatternError("scale infeasible: need r2 in (0, r1/4)")
    d = p0.dim
    k = max(d, 2)
    offs = [1 + Fraction(j, 10 * k) for j in range(1, k + 1)]
    s = r1 / (2 * max(offs))
    if d == 1:
        F = [(Fraction(0),), (offs[0] * s,), (-offs[1] * s,)]
    else:
        F = [zero(d)] + [scale(offs[j] * s, unit(d, j)) for j in range(d)]
    for x, y in itertools.combinations(F, 2):
        if dist2(x, y) <= 16 * r2 * r2:
            raise PatternError("scale infeasible: cluster points closer than 4 r2")
    E = supremum([p0.act(Isometry.shift(x)) for x in F])
    return F, E


def find_marks(stabilizers, r0, r1, depth=8) -> list:
    """y_λ in the annulus r0/2 < |y| < 3r0/4 with |g y - y| > 4 r1 for g ∈ G_λ∖{e}
    and pairwise distinct |y_λ|: lexicographically least (|y|², y) on a rational
    grid, refined by halving."""
    r0, r1 = Fraction(r0), Fraction(r1)
    d = len(stabilizers[0][0].translation) if stabilizers and stabilizers[0] else None
    if d is None:
        raise PatternError("stabilisers must contain the identity")
    lo2, hi2, sep2 = r0 * r0 / 4, 9 * r0 * r0 / 16, 16 * r1 * r1
    n = 8
    for _ in range(depth):
        step = r0 / n
        rng = range(-n, n + 1)
        grid = sorted((norm2(y), y) for y in (tuple(step * c for c in cs)
                                              for cs in itertools.product(rng, repeat=d))
                      if lo2 < norm2(y) < hi2)
        used, ys = set(), []
        for G in stabilizers:
            pick = None
            for n2, y in grid:
                if n2 in used:
                    continue
                if all(dist2(g(y), y) > sep2 for g in G if not g.is_identity()):
                    pick = (n2, y)
                    break
            if pick is None:
                break
            used.add(pick[0])
            ys.append(pick[1])
        if len(ys) == len(stabilizers):
            return ys
        n *= 2
    raise PatternError("grid search for marks exhausted")


def build_marked_blocks(p0, E, stabilizers, r0, r1=None):
    """R_λ = ⋁{P0} ∪ {g t_{y_λ} E : g ∈ G_λ}; returns (blocks, marks)."""
    r0 = Fraction(r0)
    r1 = r0 / 16 if r1 is None else Fraction(r1)
    ys = find_marks(stabilizers, r0, r1)
    blocks = []
    for G, y in zip(stabilizers, ys):
        Ey = E.act(Isometry.shift(y))
        blocks.append(supremum([p0] + [Ey.act(g) for g in G]))
    return blocks, ys


# ---------------------------------------------------------------- composed witness

@dataclass
class ComposedWitness:
    """p ↔ plan ↔ S: forward p → plan → S, backward S → plan → p."""
    source: MLDWitness     # p ↔ plan
    target: MLDWitness     # S ↔ plan
    name: str = "composed"

    @property
    def forward_margin(self) -> Fraction:
        return self.source.forward.margin + self.target.backward.margin

    @property
    def backward_margin(self) -> Fraction:
        return self.target.forward.margin + self.source.backward.margin


def chain_apply(first, second, p, w: Window, d: int):
    """second(first(p)) ∧ w through a plan, reading only a bounded plan window."""
    if p.lattice is not None:
        # periodic input: the intermediate plan is periodic too
        return apply_rule(second, derive_pattern(first, p), w)
    bb = w.bounding()
    rho = bb.radius + second.r_out + second.r_in + gamma_offset(d)
    mid = apply_rule(first, p, Window.gamma_ball(Isometry(bb.point_center(), identity(d)), rho))
    return apply_rule(second, mid, w)


def verify_composed(wit: ComposedWitness, p, s, radii, centers=None) -> Verdict:
    radii = [Fraction(r) for r in radii]
    v1 = check_local_derivation(p, s, wit.forward_margin, radii)
    if not v1:
        v1.reason = "forward: " + v1.reason
        return v1
    v2 = check_local_derivation(s, p, wit.backward_margin, radii)
    if not v2:
        v2.reason = "backward: " + v2.reason
        return v2
    total = v1.checked_cases + v2.checked_cases
    L = common_lattice(p, s)
    zs = centers if centers is not None else _centers(p, s, L)
    for zeta in zs:
        for R in radii:
            w = Window.ball(zeta.translation, R)
            for a, b, src, tgt, tag in ((wit.source.forward, wit.target.backward, p, s, "forward"),
                                        (wit.target.forward, wit.source.backward, s, p, "backward")):
                got = chain_apply(a, b, src, w, p.dim)
                total += 1
                want = tgt.cut(w)
                if got != want:
                    ce = {"window": w}
                    ce.update(_first_diff(got, want))
                    return Verdict.fail(f"{tag} chain output differs", ce, total, v1.certificate)
    cert = v1.certificate if v1.certificate == v2.certificate else SAMPLED
    return Verdict.ok(total, cert)


# ---------------------------------------------------------------- pipeline

@dataclass
class SynthesisResult:
    S: object
    witness: ComposedWitness
    decomposition: Decomposition          # of p by (D, R0)
    target_decomposition: Decomposition   # of S by (D, r0)
    blocks: list
    p0: object
    E: object
    constants: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)


def default_radius(p, d: PointSet) -> Fraction:
    """R_D + R_P: every element sits within R_P of its anchor and every anchor
    within R_D of D, so the local cuts cover p."""
    cert = p.component_radius()
    if cert is None:
        raise PatternError("pattern has no bounded-components certificate")
    return delone_parameters(d).covering + cert.radius


def synthesize_delone(p, d: PointSet, target: str = "PointSet", R0=None, rep=None,
                      profile: str = EXP, ld_margin=None) -> SynthesisResult:
    if target not in TARGET_KINDS:
        raise SynthesisError("setup", f"unsupported target kind {target}")
    params = delone_parameters(d)
    R0 = default_radius(p, d) if R0 is None else Fraction(R0)
    v = check_decomposes(p, d, R0, ld_margin=ld_margin)
    if not v:
        raise SynthesisError("decompose", v.reason)
    dec = components_and_plan(p, d, R0, ld_margin=v.details["ld_margin"])
    r0 = sqrt_lower(params.min_sep_sq) / 5
    r0 = Fraction(r0.numerator * 1000 // r0.denominator, 1000) or r0
    r1, r2 = r0 / 16, r0 / 256
    try:
        p0 = symmetric_building_block(target, p.group, r2, rep=rep, profile=profile)
        F, E = construct_asymmetric_cluster(p0, r1, r2)
        blocks, ys = build_marked_blocks(p0, E, dec.stabilizers, r0, r1)
    except PatternError as exc:
        raise SynthesisError("blocks", str(exc)) from exc
    members = [blocks[lam].act(g) for lam, g in dec.plan.sorted_elements()]
    try:
        S = PeriodicFamily(members, dec.lattice).supremum()
    except NotPairwiseCompatible as exc:
        raise SynthesisError("assemble", str(exc)) from exc
    vs = check_decomposes(S, d, r0, ld_margin=3 * r0)
    if not vs:
        raise SynthesisError("target-decompose", vs.reason)
    dec_s = components_and_plan(S, d, r0, ld_margin=3 * r0)
    if dec_s.plan != dec.plan or dec_s.components != blocks:
        raise SynthesisError("target-plan", "plan of S differs from the plan of p")
    wit = ComposedWitness(plan_mld_witness(dec, p), plan_mld_witness(dec_s, S))
    consts = {"R0": R0, "r0": r0, "r1": r1, "r2": r2, "F": F, "marks": ys,
              "covering_bound": params.covering + r0}
    notes = ["marks y_λ chosen by a deterministic rational grid search (one valid choice)"]
    return SynthesisResult(S, wit, dec, dec_s, blocks, p0, E, consts, notes)


def probe_relative_density(S, lattice, radius, pitch) -> Verdict:
    """Every ball B(g, radius), g on the grid pitch·Z^d inside the half-open
    fundamental cell of ``lattice``, meets supp S."""
    radius, pitch = Fraction(radius), Fraction(pitch)
    d = lattice.dim
    corners = [lattice.vector(cs) for cs in itertools.product((0, 1), repeat=d)]
    lo = [min(c[j] for c in corners) for j in range(d)]
    hi = [max(c[j] for c in corners) for j in range(d)]
    ranges = [range(math.floor(lo[j] / pitch), math.ceil(hi[j] / pitch) + 1) for j in range(d)]
    checked = 0
    for cs in itertools.product(*ranges):
        g = tuple(pitch * c for c in cs)
        if not all(0 <= t < 1 for t in lattice.coords(g)):
            continue
        checked += 1
        if not S.translates_near(g, radius):
            return Verdict.fail("probe ball misses supp S", {"center": g, "radius": radius}, checked)
    return Verdict.ok(checked)
