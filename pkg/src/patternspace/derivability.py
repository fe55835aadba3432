"""Local derivability: window equality, the LD falsifier/verifier, local rules
(tabulated derivations), MLD witnesses and symmetry groups.

Reduced form of the LD condition used throughout: with ζ = η⁻¹ and ξ = η⁻¹γ,

    (ξP) ∧ B(ζ, R + R0) = P ∧ B(ζ, R + R0)   ⇒   (ξQ) ∧ B(ζ, R) = Q ∧ B(ζ, R),

where a ball "at ζ" is B(ζ0, r) in R^d and the Γ-ball B_Γ(ζ, r) for patterns
over Γ.  Centres ζ run over anchors modulo the common period lattice; the ξ
that can satisfy the premise must carry some source element onto the element
nearest the centre, which leaves finitely many candidates per period.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import (Verdict, PASS, FAIL, UNDECIDED, PatternError, NotPairwiseCompatible,
                   Undecided, supremum, zero_of, UnboundedRequest)
from .exact import sqrt_upper
from .geometry import Isometry, Window, dist2, sub, zero, identity, flat, Ball
from .lattice import Lattice, lattice_intersection, lattice_sum
from .instances.base import ElementPattern
from .instances.misc import PeriodicFamily

PERIOD_EXHAUSTIVE = "period-exhaustive"
SAMPLED = "sampled"


# ---------------------------------------------------------------- windows

def window_at(pattern, zeta: Isometry, r) -> Window:
    if pattern.space == "Gamma":
        return Window.gamma_ball(zeta, r)
    return Window.ball(zeta.translation, r)


def cut_moved(p, xi: Isometry, w: Window):
    """(ξ p) ∧ w, computed as ξ (p ∧ ξ⁻¹ w)."""
    if xi.is_identity():
        return p.cut(w)
    return p.cut(w.image(xi.inverse())).act(xi)


def window_equal(p, gamma: Isometry, eta: Isometry, w: Window) -> bool:
    if not w.is_bounded and not p.is_finite():
        raise UnboundedRequest("window equality on ALL for a periodic pattern")
    return cut_moved(p, gamma, w) == cut_moved(p, eta, w)


# ---------------------------------------------------------------- helpers

def common_lattice(*ps) -> Lattice | None:
    L = None
    for p in ps:
        lat = getattr(p, "lattice", None)
        if lat is None:
            if not p.is_zero():
                return None
            continue
        L = lat if L is None else lattice_intersection(L, lat)
    return L


def _motif(p, L):
    if p.lattice is None:
        return p.sorted_elements()
    if L is None:
        return p.sorted_elements()
    return sorted(p.motif_in(L), key=p._e_key)


def _frames(p, e) -> list:
    """Group elements placing the origin frame at element e."""
    a = p._e_anchor(e)
    if isinstance(a, Isometry):
        return [a]
    return [Isometry(a, A) for A in p.group.point_group]


def _map_element(p, e_from, e_to) -> list:
    """All ξ in Γ with ξ(e_from) = e_to (anchor-generated)."""
    a_from, a_to = p._e_anchor(e_from), p._e_anchor(e_to)
    out = []
    if isinstance(a_from, Isometry):
        xi = a_to.compose(a_from.inverse())
        if p._e_image(e_from, xi) == e_to:
            out.append(xi)
        return out
    for A in p.group.point_group:
        ga = tuple(sum((A[i][j] * a_from[j] for j in range(len(a_from))), Fraction(0))
                   for i in range(len(a_from)))
        xi = Isometry(sub(a_to, ga), A)
        if p._e_image(e_from, xi) == e_to:
            out.append(xi)
    return out


def _nearest(p, pat, c):
    return min(pat.sorted_elements(), key=lambda e: (dist2(p.anchor_point(e), c), p._e_key(e)))


def _centers(p, q, L) -> list:
    pts = set()
    for pat in (p, q):
        if pat.is_zero():
            continue
        for e in _motif(pat, L):
            a = pat.anchor_point(e)
            pts.add(L.reduce(a) if L is not None else a)
    if not pts:
        pts.add(zero(p.dim))
    zs = sorted(pts)
    if p.space == "Gamma" or q.space == "Gamma":
        return [Isometry(z, A) for z in zs for A in p.group.point_group]
    d = p.dim
    return [Isometry(z, identity(d)) for z in zs]


def _first_diff(a, b):
    if a.kind != b.kind:
        return {"kinds": [a.kind, b.kind]}
    if isinstance(a, ElementPattern) and a.lattice is None and b.lattice is None:
        d1 = sorted(a.elements - b.elements, key=a._e_key)
        d2 = sorted(b.elements - a.elements, key=b._e_key)
        return {"only_in_gamma": repr(d1[0]) if d1 else None,
                "only_in_eta": repr(d2[0]) if d2 else None}
    return {}


# ---------------------------------------------------------------- LD check

def check_local_derivation(p, q, margin, radii, candidates: Callable | None = None,
                           centers: list | None = None) -> Verdict:
    """Falsifier/verifier of p →LD q with margin R0 over the given radii.

    PASS means no violation over the enumerated family; the certificate says
    whether the family is exhaustive per period (both periodic) or sampled."""
    margin = Fraction(margin)
    radii = sorted(Fraction(r) for r in radii)
    if q.is_zero():
        return Verdict.ok(0, PERIOD_EXHAUSTIVE)
    L = common_lattice(p, q)
    cert = PERIOD_EXHAUSTIVE if L is not None else SAMPLED
    zetas = centers if centers is not None else _centers(p, q, L)
    src_motif = None if p.is_zero() else _motif(p, L)
    tgt_motif = _motif(q, L)
    checked = 0
    for zeta in zetas:
        dead = set()
        for R in radii:
            sw = window_at(p, zeta, R + margin)
            tw = window_at(q, zeta, R)
            W = p.cut(sw)
            Qw = q.cut(tw)
            if candidates is not None:
                cands = list(candidates(zeta, R + margin, W))
            elif not W.is_zero():
                near = _nearest(p, W, zeta.translation)
                cands = [xi for e in src_motif for xi in _map_element(p, e, near)]
            elif not Qw.is_zero():
                near = _nearest(q, Qw, zeta.translation)
                cands = [xi for e in tgt_motif for xi in _map_element(q, e, near)]
            else:
                cands = []
            for xi in cands:
                k = xi.sort_key()
                if k in dead:
                    continue
                if cut_moved(p, xi, sw) != W:
                    dead.add(k)
                    continue
                checked += 1
                moved = cut_moved(q, xi, tw)
                if moved != Qw:
                    eta = zeta.inverse()
                    ce = {"gamma": eta.compose(xi), "eta": eta, "R": R, "margin": margin,
                          "center": zeta, "source_window": sw, "target_window": tw}
                    ce.update(_first_diff(moved, Qw))
                    return Verdict.fail("window premise holds but target windows differ", ce,
                                        checked, cert)
    return Verdict.ok(checked, cert)


def check_local_derivation_sqcap(p, q, radius, centers: list | None = None) -> Verdict:
    """Original (⊓-based) definition: (ξp)⊓B(x, K) = p⊓B(x, K) ⇒ (ξq)⊓{x} = q⊓{x},
    for patches, over sample points x (anchors, vertices, edge midpoints)."""
    radius = Fraction(radius)
    L = common_lattice(p, q)
    cert = PERIOD_EXHAUSTIVE if L is not None else SAMPLED
    if centers is None:
        pts = set()
        for pat in (p, q):
            for t in _motif(pat, L):
                pts.add(pat.anchor_point(t))
                vs = getattr(t.shape, "vertices", None) or (t.shape.center,)
                for i, v in enumerate(vs):
                    pts.add(v)
                    w = vs[(i + 1) % len(vs)]
                    pts.add(tuple((a + b) / 2 for a, b in zip(v, w)))
                pts.update(t.punctures)
        centers = sorted(pts)
    motif = _motif(p, L)
    checked = 0
    for x in centers:
        K = Window.ball(x, radius)
        W = p.sqcap(K)
        if W.is_zero():
            continue
        near = _nearest(p, W, x)
        for e in motif:
            for xi in _map_element(p, e, near):
                if p.act(xi).sqcap(K) != W:
                    continue
                checked += 1
                pt = Window.ball(x, 0)
                if q.act(xi).sqcap(pt) != q.sqcap(pt):
                    return Verdict.fail("⊓-premise holds but tiles at the point differ",
                                        {"gamma": xi, "eta": Isometry.identity(p.dim), "x": x,
                                         "K": radius}, checked, cert)
    return Verdict.ok(checked, cert)


# ---------------------------------------------------------------- rules

def _pattern_sort_key(t) -> tuple:
    return tuple(sorted(repr(t._e_key(e)) for e in t.elements))


def _orbit_rep(t, group):
    """(representative, A) with act(A, t) = representative, over the point group."""
    best = None
    for A in group.point_group:
        g = Isometry.linear(A)
        u = t.act(g)
        k = _pattern_sort_key(u)
        if best is None or k < best[0]:
            best = (k, u, g)
    return best[1], best[2]


_BUILDERS: dict = {}


def register_builder(name):
    """Register a factory rule -> (template -> output) for rules whose output
    is computed from the template rather than tabulated."""
    def deco(fn):
        _BUILDERS[name] = fn
        return fn
    return deco


@dataclass
class LocalRule:
    """Derivation rule: output placed at every source frame γ whose template
    (γ⁻¹ p) ∧ B(0, r_in) matches.  The table is keyed by orbit representatives."""
    margin: Fraction
    r_in: Fraction
    r_out: Fraction
    source_kind: str
    target_kind: str
    group: object
    table: dict = field(default_factory=dict)
    builder_name: str = ""
    params: dict = field(default_factory=dict)
    target_kwargs: dict = field(default_factory=dict)
    name: str = ""
    x0: tuple = ()
    y0: tuple = ()

    def __post_init__(self):
        self.margin, self.r_in, self.r_out = Fraction(self.margin), Fraction(self.r_in), Fraction(self.r_out)
        d = self.group.dim
        self.x0 = self.x0 or zero(d)
        self.y0 = self.y0 or zero(d)
        self.builder = _BUILDERS[self.builder_name](self) if self.builder_name else None

    def add(self, template, output) -> bool:
        """Insert; False when an equivalent template already maps elsewhere."""
        rep, g = _orbit_rep(template, self.group)
        out = output.act(g)
        self.__dict__.pop("_memo", None)
        old = self.table.get(rep)
        if old is not None:
            return old == out
        self.table[rep] = out
        return True

    def lookup(self, template):
        memo = self.__dict__.setdefault("_memo", {})
        if template in memo:
            return memo[template]
        if len(memo) > 4096:
            memo.clear()
        out = memo[template] = self._lookup(template)
        return out

    def _lookup(self, template):
        rep, g = _orbit_rep(template, self.group)
        out = self.table.get(rep)
        if out is not None:
            return out.act(g.inverse())
        if self.builder is not None:
            return self.builder(template)
        return None

    def template_window(self, source_space: str) -> Window:
        e = Isometry.identity(self.group.dim)
        if source_space == "Gamma":
            return Window.gamma_ball(e, self.r_in)
        return Window.ball(zero(self.group.dim), self.r_in)


@dataclass
class MLDWitness:
    forward: LocalRule
    backward: LocalRule
    name: str = ""


class RuleMismatch(PatternError):
    def __init__(self, msg, frame=None):
        super().__init__(msg)
        self.frame = frame


def _emit(rule, p, gam, tw):
    tmpl = cut_moved(p, gam.inverse(), tw)
    out = rule.lookup(tmpl)
    if out is None:
        raise RuleMismatch("no template matches", gam)
    return None if out.is_zero() else out.act(gam)


def derive_pattern(rule: LocalRule, p):
    """The whole derived pattern of a periodic p: emissions at the frames of one
    period, glued periodically (the rule is Γ-equivariant)."""
    memo = rule.__dict__.setdefault("_derived", {})
    hit = memo.get(id(p))
    if hit is not None and hit[0] is p:
        return hit[1]
    tw = rule.template_window(p.space)
    ems = []
    for e in p.sorted_elements():
        for gam in _frames(p, e):
            out = _emit(rule, p, gam, tw)
            if out is not None:
                ems.append(out)
    if ems:
        res = PeriodicFamily(ems, p.lattice).supremum()
    else:
        res = zero_of(rule.target_kind, rule.group, **rule.target_kwargs)
    if len(memo) > 16:
        memo.clear()
    memo[id(p)] = (p, res)
    return res


def apply_rule(rule: LocalRule, p, w: Window):
    """Run the derivation on p and cut the result to the bounded window w."""
    if w.is_empty:
        return zero_of(rule.target_kind, rule.group, **rule.target_kwargs)
    if isinstance(p, ElementPattern) and p.lattice is not None:
        return derive_pattern(rule, p).cut(w)
    if not w.is_bounded:
        if not p.is_finite():
            raise UnboundedRequest("apply_rule on ALL for a periodic pattern")
        pool = p.sorted_elements()
    else:
        bb = w.bounding()
        pool = p.translates_near(bb.point_center(), bb.radius + rule.r_out + p.max_reach())
    tw = rule.template_window(p.space)
    emissions = []
    seen = set()
    for e in pool:
        for gam in _frames(p, e):
            k = gam.sort_key()
            if k in seen:
                continue
            seen.add(k)
            tmpl = cut_moved(p, gam.inverse(), tw)
            out = rule.lookup(tmpl)
            if out is None:
                raise RuleMismatch("no template matches", gam)
            if not out.is_zero():
                emissions.append(out.act(gam))
    if not emissions:
        return zero_of(rule.target_kind, rule.group, **rule.target_kwargs)
    return supremum(emissions).cut(w)


def ownership_radius(p, q) -> Fraction:
    """Rational bound on max over q-elements of the distance to the nearest
    p-anchor (per period for periodic inputs)."""
    if q.is_zero():
        return Fraction(0)
    L = common_lattice(p, q)
    worst = Fraction(0)
    for e in _motif(q, L):
        a = q.anchor_point(e)
        r = Fraction(1)
        while True:
            near = p.translates_near(a, r)
            if near:
                best = min(dist2(p.anchor_point(f), a) for f in near)
                break
            r *= 2
            if r > 2 ** 20:
                raise PatternError("source has no anchors near the target")
        worst = max(worst, best)
    return sqrt_upper(worst)


def derive_rule(p, q, r_in=None, r_own=None, margin=None, ladder=None, name="") -> LocalRule:
    """Tabulate a rule p → q from one instance (per period when periodic).

    Each source frame owns the q-elements whose anchors are within ``r_own``;
    the smallest ``r_in`` on the ladder making the table single-valued wins."""
    r_own = ownership_radius(p, q) if r_own is None else Fraction(r_own)
    if r_in is not None:
        ladder = [Fraction(r_in)]
    elif ladder is None:
        base = r_own if r_own > 0 else Fraction(1)
        start = Fraction(margin) if margin is not None else Fraction(0)
        ladder = [start] + [start + base * k for k in (1, 2, 3, 4, 6, 8, 12)]
    L = common_lattice(p, q)
    src = _motif(p, L)
    kw = q._zero_kwargs()
    for rin in ladder:
        rin = Fraction(rin)
        rule = LocalRule(margin if margin is not None else rin + r_own, rin, r_own,
                         p.kind, q.kind, p.group, target_kwargs=kw, name=name)
        tw = rule.template_window(p.space)
        ok = True
        for e in src:
            owned = q.translates_near(p.anchor_point(e), r_own)
            own = q._new(owned) if isinstance(q, ElementPattern) else q
            for gam in _frames(p, e):
                inv = gam.inverse()
                tmpl = cut_moved(p, inv, tw)
                if not rule.add(tmpl, own.act(inv)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return rule
    raise PatternError("no consistent rule on the radius ladder")


def _windows_for(p, q, radii, centers):
    out = []
    for zeta in centers:
        for r in radii:
            out.append((window_at(p, zeta, r), window_at(q, zeta, r)))
    return out


def verify_mld_witness(wit: MLDWitness, p, q, radii, centers=None, ld_radii=None) -> Verdict:
    """Both LD directions at the rules' margins, and apply_rule reproducing
    cut(q, w) from p and cut(p, w) from q on windows of the given radii."""
    for rule, a, b in ((wit.forward, p, q), (wit.backward, q, p)):
        bad = _kind_mismatch(rule, a, b)
        if bad is not None:
            return bad
    radii = [Fraction(r) for r in radii]
    ld_radii = radii if ld_radii is None else ld_radii
    total = 0
    v = check_local_derivation(p, q, wit.forward.margin, ld_radii)
    total += v.checked_cases
    if not v:
        v.reason = "forward: " + v.reason
        return v
    v2 = check_local_derivation(q, p, wit.backward.margin, ld_radii)
    total += v2.checked_cases
    if not v2:
        v2.reason = "backward: " + v2.reason
        return v2
    L = common_lattice(p, q)
    if centers is None:
        centers = _centers(p, q, L)
    for sw, tw in _windows_for(p, q, radii, centers):
        for rule, src, tgt, w_src, w_tgt, tag in ((wit.forward, p, q, sw, tw, "forward"),
                                                  (wit.backward, q, p, tw, sw, "backward")):
            try:
                got = apply_rule(rule, src, w_tgt)
            except (RuleMismatch, NotPairwiseCompatible) as exc:
                return Verdict.fail(f"{tag} rule: {exc}", {"window": w_tgt,
                                                           "frame": getattr(exc, "frame", None)},
                                    total, v.certificate)
            total += 1
            if got != tgt.cut(w_tgt):
                ce = {"window": w_tgt}
                ce.update(_first_diff(got, tgt.cut(w_tgt)))
                return Verdict.fail(f"{tag} rule output differs from the target window", ce,
                                    total, v.certificate)
    cert = v.certificate if v2.certificate == v.certificate else SAMPLED
    return Verdict.ok(total, cert)


def _kind_mismatch(rule, p, q):
    if rule.source_kind != p.kind or rule.target_kind != q.kind:
        return Verdict.fail("rule kinds do not match the patterns",
                            {"rule": [rule.source_kind, rule.target_kind], "patterns": [p.kind, q.kind]})
    return None


def verify_rule(rule: LocalRule, p, q, radii, centers=None) -> Verdict:
    """One direction of verify_mld_witness: p →LD q at the rule's margin, and
    apply_rule(rule, p, w) = q ∧ w on the window ladder."""
    bad = _kind_mismatch(rule, p, q)
    if bad is not None:
        return bad
    radii = [Fraction(r) for r in radii]
    v = check_local_derivation(p, q, rule.margin, radii)
    if not v:
        return v
    total = v.checked_cases
    if centers is None:
        centers = _centers(p, q, common_lattice(p, q))
    for _, tw in _windows_for(p, q, radii, centers):
        try:
            got = apply_rule(rule, p, tw)
        except (RuleMismatch, NotPairwiseCompatible) as exc:
            return Verdict.fail(f"rule: {exc}", {"window": tw, "frame": getattr(exc, "frame", None)},
                                total, v.certificate)
        total += 1
        if got != q.cut(tw):
            ce = {"window": tw}
            ce.update(_first_diff(got, q.cut(tw)))
            return Verdict.fail("rule output differs from the target window", ce, total, v.certificate)
    return Verdict.ok(total, v.certificate)


# ---------------------------------------------------------------- standard witnesses

def dirac_witness(d, mu) -> MLDWitness:
    ws = {w for _, w in mu.elements}
    if len(ws) <= 1:
        fwd = derive_rule(d, mu, r_in=0, r_own=0, margin=0, name="dirac-forward")
    else:
        fwd = derive_rule(d, mu, r_own=0, ladder=_spacing_ladder(d), name="dirac-forward")
        fwd.margin = fwd.r_in
    bwd = derive_rule(mu, d, r_in=0, r_own=0, margin=0, name="dirac-backward")
    return MLDWitness(fwd, bwd, "dirac")


def _spacing_ladder(d) -> list:
    unit = Fraction(1)
    if d.lattice is not None:
        unit = sqrt_upper(d.lattice.short_vector_bound())
    return [unit * k / 4 for k in range(0, 17)]


def density_witness(f, m) -> MLDWitness:
    r = f.max_reach()
    fwd = derive_rule(f, m, r_own=0, margin=0, ladder=[r, 2 * r, 4 * r], name="density-forward")
    fwd.margin = Fraction(0)
    bwd = derive_rule(m, f, r_own=0, margin=1, ladder=[max(r, Fraction(1)), 2 * r + 1],
                      name="density-backward")
    bwd.margin = Fraction(1)
    return MLDWitness(fwd, bwd, "density")


# ---------------------------------------------------------------- symmetry

@dataclass
class SymmetryGroup:
    """Sym_Γ p: for periodic p, the translation lattice plus one coset
    representative per realised point-group element; for finite p, all elements."""
    translations: Lattice | None
    cosets: list

    def point_parts(self) -> list:
        return sorted({flat(g.rotation) for g in self.cosets})

    def is_trivial(self) -> bool:
        return self.translations is None and len(self.cosets) == 1 and self.cosets[0].is_identity()

    def order(self):
        return None if self.translations is not None else len(self.cosets)

    def contains(self, g: Isometry) -> bool:
        for c in self.cosets:
            if c.rotation != g.rotation:
                continue
            v = sub(g.translation, c.translation)
            if self.translations is None:
                if all(x == 0 for x in v):
                    return True
            elif self.translations.contains(v):
                return True
        return False

    def elements(self) -> list:
        if self.translations is not None:
            raise Undecided("infinite symmetry group")
        return list(self.cosets)


def symmetry_group(p, scope=None) -> SymmetryGroup:
    """Exact Sym_Γ p for finite or periodic element patterns."""
    if not isinstance(p, ElementPattern):
        raise Undecided("symmetry search needs an element pattern")
    d = p.dim
    if p.is_zero():
        raise Undecided("every group element fixes the zero pattern")
    els = p.sorted_elements()
    e0 = els[0]
    if p.lattice is None:
        found = {}
        for e in els:
            for xi in _map_element(p, e0, e):
                if p.act(xi) == p:
                    found[xi.sort_key()] = xi
        return SymmetryGroup(None, [found[k] for k in sorted(found)])
    L = p.lattice
    trans = []
    reps = {}
    for e in els:
        for xi in _map_element(p, e0, e):
            if p.act(xi) != p:
                continue
            if xi.rotation == identity(d):
                trans.append(xi.translation)
            reps.setdefault(flat(xi.rotation), xi)
    T = lattice_sum(L, *trans) if trans else L
    cosets = []
    for k in sorted(reps):
        g = reps[k]
        cosets.append(Isometry(T.reduce(g.translation), g.rotation))
    return SymmetryGroup(T, cosets)


def stabilizer(p, point=None) -> list:
    """Sym_{Γ_x} p = {γ : γ p = p, γ x = x} (x = origin by default)."""
    d = p.dim
    x = zero(d) if point is None else tuple(point)
    out = []
    for A in p.group.point_group:
        ga = tuple(sum((A[i][j] * x[j] for j in range(d)), Fraction(0)) for i in range(d))
        g = Isometry(sub(x, ga), A)
        if p.act(g) == p:
            out.append(g)
    return out
