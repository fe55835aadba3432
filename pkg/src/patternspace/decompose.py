"""Decomposition of a pattern by a Delone set D and a radius R0 into a tuple of
components (one per ~-class of D) and a plan (where each component sits).

Classes: x ~ y when some γ with γx = y carries p ∧ B(x, R0) onto p ∧ B(y, R0).
Representatives use pure translations γ_x = t_x, and since every candidate γ
is t_y ∘ g ∘ t_{-x} with g in the finite point group, the search is exhaustive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Verdict, PatternError, UNDECIDED, NotPairwiseCompatible
from .exact import sqrt_upper
from .geometry import Isometry, Window, identity, zero, GroupSpec
from .lattice import Lattice
from .instances import PointSet, Plan, PeriodicFamily
from .derivability import (LocalRule, MLDWitness, register_builder, check_local_derivation,
                           common_lattice, derive_rule, stabilizer, PERIOD_EXHAUSTIVE)
from .voronoi import delone_parameters


@dataclass
class Decomposition:
    delone: PointSet
    radius: Fraction
    components: list                  # λ -> P_λ, supp P_λ ⊆ B(0, R0)
    plan: Plan                        # entries (λ, γ), γ ∈ C_λ
    stabilizers: list                 # λ -> G_λ = Sym_{Γ_0} P_λ (list of Isometry)
    lattice: Lattice | None = None
    ld_margin: Fraction = Fraction(0)
    classes: dict = field(default_factory=dict)   # motif point x -> (λ, h) with cut = t_x h P_λ

    @property
    def n_components(self) -> int:
        return len(self.components)

    def plan_translations(self, lam) -> list:
        """Translations t_x in C_λ (one period) - the sublattice picture when Γ = R^d."""
        return sorted({g.translation for g in self.plan.entries(lam) if g.rotation == identity(len(g.translation))})


# ---------------------------------------------------------------- constants

def symmetry_bound(r, R, d: int) -> tuple[Fraction, int]:
    """(R', C1) with card Sym_{Γ_x}(D ∩ B(x, R')) < C1 for every R-relatively
    dense, r-uniformly discrete D.

    R' - R >= R√d keeps the perturbed basis x_j - x invertible (column errors
    below 1/√d give ||Δ||_2 < 1); we use the rational R' = R(1 + d).  The
    packing bound gives card(D ∩ B(x, R')) <= (2(R' + r)/r)^d < k."""
    r, R = Fraction(r), Fraction(R)
    Rp = R * (1 + d)
    k = math.floor((2 * (Rp + r) / r) ** d) + 1
    return Rp, math.factorial(k) + 1


def existence_radius(p, d: PointSet, ld_margin=None) -> Fraction:
    """R0 = R_D + R_P + R_LD + R' + 1 from the existence argument."""
    P = delone_parameters(d)
    cert = p.component_radius()
    if cert is None:
        raise PatternError("pattern has no bounded-components certificate")
    if ld_margin is None:
        ld_margin = derive_rule(p, d).margin
    Rp, _ = symmetry_bound(P.min_sep, P.covering, d.dim)
    return P.covering + cert.radius + Fraction(ld_margin) + Rp + 1


def gamma_offset(d: int) -> Fraction:
    """C0 with ρ_Γ(γ, e) <= ρ(γ0, 0) + C0: ||A - I||_F <= 2√d."""
    return sqrt_upper(Fraction(4 * d))


# ---------------------------------------------------------------- check

def _local(p, x, R0):
    return p.cut(Window.ball(x, R0))


def _motif_points(d: PointSet, L):
    if L is None or L == d.lattice:
        return sorted(d.points)
    return sorted({e for e in d.motif_in(L)})


def check_decomposes(p, d: PointSet, R0, ld_margin=None, radii=None) -> Verdict:
    R0 = Fraction(R0)
    if p.component_radius() is None:
        return Verdict(UNDECIDED, reason="no bounded-components certificate")
    P = delone_parameters(d)
    if ld_margin is None:
        try:
            ld_margin = derive_rule(p, d).margin
        except PatternError as exc:
            return Verdict.fail(f"condition 1: no local rule p -> D ({exc})")
    radii = radii or [Fraction(1), Fraction(2)]
    v = check_local_derivation(p, d, ld_margin, radii)
    if not v:
        v.reason = "condition 1: " + v.reason
        return v
    L = common_lattice(p, d)
    if L is None:
        return Verdict(UNDECIDED, reason="condition 2: no finite certificate for a non-periodic input",
                       checked_cases=v.checked_cases)
    xs = _motif_points(d, L)
    members = [_local(p, x, R0) for x in xs]
    try:
        q = PeriodicFamily([m for m in members if not m.is_zero()] or [p.zero_like()], L).supremum()
    except NotPairwiseCompatible as exc:  # pragma: no cover - cuts of p are compatible
        return Verdict.fail(f"condition 2: {exc}")
    if q != p:
        missing = [e for e in p.motif_in(L) if not q.support_contains(p.anchor_point(e))]
        ce = {"uncovered": missing[0] if missing else None, "R0": R0}
        return Verdict.fail("condition 2: supremum of the local cuts differs from p", ce,
                            v.checked_cases + len(xs), PERIOD_EXHAUSTIVE)
    Rp, C1 = symmetry_bound(P.min_sep, P.covering, d.dim)
    worst = 0
    for x, m in zip(xs, members):
        n = len(stabilizer(m, x))
        worst = max(worst, n)
        if n >= C1:  # pragma: no cover - cannot happen for finite point groups
            return Verdict.fail("condition 3: stabiliser exceeds the symmetry bound",
                                {"x": x, "card": n, "C1": C1})
    return Verdict.ok(v.checked_cases + 2 * len(xs), PERIOD_EXHAUSTIVE,
                      max_stabilizer=worst, C1=C1, R_prime=Rp, ld_margin=Fraction(ld_margin))


# ---------------------------------------------------------------- components

def _point_stabilizer(comp, group: GroupSpec) -> list:
    return [Isometry.linear(A) for A in group.point_group if comp.act(Isometry.linear(A)) == comp]


def components_and_plan(p, d: PointSet, R0, ld_margin=None) -> Decomposition:
    R0 = Fraction(R0)
    L = common_lattice(p, d)
    if L is None:
        raise PatternError("components need a common period lattice")
    group = p.group
    reps, stabs = [], []
    classes = {}
    for x in _motif_points(d, L):
        comp = _local(p, x, R0).act(Isometry.shift(tuple(-c for c in x)))
        hit = None
        for lam, rep in enumerate(reps):
            for A in group.point_group:
                h = Isometry.linear(A)
                if rep.act(h) == comp:
                    hit = (lam, h)
                    break
            if hit:
                break
        if hit is None:
            reps.append(comp)
            stabs.append(_point_stabilizer(comp, group))
            hit = (len(reps) - 1, Isometry.identity(p.dim))
        classes[x] = hit
    entries = []
    for x, (lam, h) in classes.items():
        base = Isometry.shift(x).compose(h)
        for g in stabs[lam]:
            entries.append((lam, base.compose(g)))
    plan = Plan(group, entries, L)
    if ld_margin is None:
        ld_margin = derive_rule(p, d).margin
    return Decomposition(d, R0, reps, plan, stabs, L, Fraction(ld_margin), classes)


def reconstruct(dec: Decomposition):
    """⋁{γ P_λ : λ, γ ∈ C_λ}, one period at a time."""
    members = []
    for lam, g in dec.plan.sorted_elements():
        members.append(dec.components[lam].act(g))
    members = [m for m in members if not m.is_zero()]
    return PeriodicFamily(members, dec.lattice).supremum()


# ---------------------------------------------------------------- witness

@register_builder("component-placer")
def _placer(rule):
    comps = rule.params["components"]

    def build(template):
        e = Isometry.identity(rule.group.dim)
        here = [lam for lam, g in template.elements if g == e]
        if not here:
            return comps[0].zero_like()
        return comps[here[0]]
    return build


def plan_mld_witness(dec: Decomposition, p) -> MLDWitness:
    """p ↔ plan: forward margin R0 + R1, backward margin R0 + C0."""
    R0, R1 = dec.radius, dec.ld_margin
    C0 = gamma_offset(p.dim)
    fwd = derive_rule(p, dec.plan, name="plan-forward")
    fwd.margin = R0 + R1
    bwd = LocalRule(R0 + C0, Fraction(0), R0, "Plan", p.kind, p.group,
                    builder_name="component-placer",
                    params={"components": list(dec.components)},
                    target_kwargs=p._zero_kwargs(), name="plan-backward")
    return MLDWitness(fwd, bwd, "plan")
