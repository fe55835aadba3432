"""Pattern-equivariant functions.

A map f is p-equivariant (radius R) when f(x) = f(y) whenever the R-windows of
p seen from x and y agree; with a representation φ of Γ0 the condition becomes
f(γx) = φ(A) f(x) for γ = t ∘ A matching ⊓-windows.  Both are checked over
anchor-generated points per period, and cross-checked against p →LD f.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .core import Verdict, PatternError, FAIL
from .exact import sqrt_lower, sqrt_upper
from .geometry import Isometry, Window, identity, add, sub, zero
from .lattice import Lattice
from .instances import PointSet, MapPattern, Piece, tent, Representation
from .derivability import (LocalRule, MLDWitness, check_local_derivation, common_lattice,
                           derive_rule, cut_moved, _motif, _map_element, _nearest,
                           PERIOD_EXHAUSTIVE, SAMPLED)


class NotUniformlyDiscrete(PatternError):
    pass


# ---------------------------------------------------------------- sample points

def _sample_points(p, f, L) -> list:
    """Anchors of p and f (mod L), tile vertices, and midpoints of anchor pairs."""
    pts = set()
    for pat in (p, f):
        if pat.is_zero():
            continue
        for e in _motif(pat, L):
            a = pat.anchor_point(e)
            pts.add(L.reduce(a) if L is not None else a)
            shape = getattr(e, "shape", None)
            for v in getattr(shape, "vertices", ()) or ():
                pts.add(L.reduce(v) if L is not None else v)
    base = sorted(pts)
    for i, a in enumerate(base):
        for b in base[i + 1:]:
            pts.add(tuple((x + y) / 2 for x, y in zip(a, b)))
    return sorted(pts, key=_near_first) or [zero(p.dim)]


def _near_first(x):
    # deterministic, small points first; ties broken towards positive coordinates
    return (sum(c * c for c in x), tuple(-c for c in x))


def _periods(L: Lattice | None, d: int) -> list:
    if L is None:
        return [zero(d)]
    out = [zero(d)]
    for b in L.basis:
        out.append(b)
        out.append(tuple(-c for c in b))
    return out


def _pool(p, L, xs, R) -> list:
    """Elements of p that anchor-generated matches may land on: the motif when
    a common period exists, otherwise everything near the sample hull."""
    if L is not None or p.lattice is None:
        return _motif(p, L)
    span = max(sqrt_upper(sum(c * c for c in x)) for x in xs) + R + p.max_reach()
    return p.cut(Window.ball(zero(p.dim), span)).sorted_elements()


def _translation_candidates(p, x, R, L, pool) -> list:
    """Translations t with possibly (p - x) ∧ B(0,R) = (p - x - t) ∧ B(0,R)."""
    W = p.cut(Window.ball(x, R))
    if W.is_zero():
        return list(_periods(L, p.dim)[1:])
    near = _nearest(p, W, x)
    ts = set()
    for e in pool:
        for xi in _map_element(p, near, e):
            if xi.rotation == identity(p.dim):
                for v in _periods(L, p.dim):
                    ts.add(add(xi.translation, v))
    ts.discard(zero(p.dim))
    return sorted(ts, key=_near_first)


# ---------------------------------------------------------------- checks

def is_pattern_equivariant(f: MapPattern, p, R, with_ld=True) -> Verdict:
    """Window definition (translations only); details carry the LD verdict."""
    R = Fraction(R)
    if f.is_zero():
        return Verdict.ok(0, PERIOD_EXHAUSTIVE, ld="PASS")
    L = common_lattice(p, f)
    cert = PERIOD_EXHAUSTIVE if L is not None else SAMPLED
    checked = 0
    verdict = None
    xs = _sample_points(p, f, L)
    pool = _pool(p, L, xs, R)
    for x in xs:
        Wx = p.cut(Window.ball(x, R)).translate(tuple(-c for c in x))
        fx = f.eval(x)
        for t in _translation_candidates(p, x, R, L, pool):
            y = add(x, t)
            Wy = p.cut(Window.ball(y, R)).translate(tuple(-c for c in y))
            if Wx != Wy:
                continue
            checked += 1
            if f.eval(y) != fx:
                verdict = Verdict.fail("windows agree but values differ",
                                       {"x": x, "y": y, "f(x)": fx, "f(y)": f.eval(y)}, checked, cert)
                break
        if verdict is not None:
            break
    if verdict is None:
        verdict = Verdict.ok(checked, cert)
    if with_ld:
        ld = check_local_derivation(p, f, R, [Fraction(0)])
        verdict.details["ld"] = ld.status
    return verdict


def rand_equivariance_check(f: MapPattern, T, R, with_ld=True) -> Verdict:
    """Twisted definition with ⊓-windows: (T ⊓ B(x', R)) - x' = A((T ⊓ B(x, R)) - x)
    with x' = γx, γ = t ∘ A, forces f(x') = φ(A) f(x)."""
    R = Fraction(R)
    rep = f.rep
    L = common_lattice(T, f)
    cert = PERIOD_EXHAUSTIVE if L is not None else SAMPLED
    xs = _sample_points(T, f, L)
    motif = _pool(T, L, xs, R)
    checked = 0
    verdict = None
    for x in xs:
        K = Window.ball(x, R)
        W = T.sqcap(K)
        if W.is_zero():
            continue
        near = _nearest(T, W, x)
        fx = f.eval(x)
        for e in motif:
            for xi in _map_element(T, near, e):
                x2 = xi(x)
                K2 = Window.ball(x2, R)
                if W.act(xi) != T.sqcap(K2):
                    continue
                checked += 1
                want = fx.transform(rep(xi.rotation))
                got = f.eval(x2)
                if got != want:
                    verdict = Verdict.fail("matching ⊓-windows but f(γx) ≠ φ(A) f(x)",
                                           {"x": x, "gamma": xi, "f(x)": fx, "f(gamma x)": got},
                                           checked, cert)
                    break
            if verdict is not None:
                break
        if verdict is not None:
            break
    if verdict is None:
        verdict = Verdict.ok(checked, cert)
    if with_ld:
        margin = R + T.max_reach()
        ld = check_local_derivation(T, f, margin, [Fraction(0)])
        verdict.details["ld"] = ld.status
    return verdict


# ---------------------------------------------------------------- bump companion

def bump_companion(d: PointSet, rep: Representation | None = None):
    """(f, witness): a TENT atom of radius min_sep/4 at every point of d."""
    g = d.group
    if d.is_zero():
        f = MapPattern(g, rep=rep)
        fwd = LocalRule(0, 0, 0, "PointSet", "MapPattern", g, target_kwargs=f._zero_kwargs(),
                        name="bump-forward")
        bwd = LocalRule(0, 0, 0, "MapPattern", "PointSet", g, name="bump-backward")
        return f, MLDWitness(fwd, bwd, "bump")
    ms = d.min_sep_sq()
    if d.lattice is None and len(d.elements) == 1:
        ms = Fraction(4)
    if ms <= 0:
        raise NotUniformlyDiscrete("points must be separated")
    r = sqrt_lower(ms) / 4
    v = (Fraction(1),) if rep is None else None
    if rep is not None:
        from .synthesis import fixed_vector
        v = fixed_vector(rep, g)
        if v is None:
            raise PatternError("no Γ0-fixed vector: the bump would not be Γ_x-invariant")
    f = MapPattern(g, [Piece(tent(x, r, v)) for x in d.points], d.lattice, rep=rep)
    fwd = derive_rule(d, f, r_in=0, r_own=0, margin=0, name="bump-forward")
    bwd = derive_rule(f, d, r_in=0, r_own=0, margin=r, name="bump-backward")
    return f, MLDWitness(fwd, bwd, "bump")


def coordinate_probe(n: int = 3) -> MapPattern:
    """Finite stand-in for f(x) = x on R: Kronecker value k at every k in [-n, n]."""
    from .geometry import GroupSpec
    from .instances import kronecker
    g = GroupSpec.translations(1)
    return MapPattern(g, [Piece(kronecker((k,), (k,))) for k in range(-n, n + 1)])


def random_translation_pairs(p, n: int, seed: int = 0) -> list:
    """Reproducible random (x, y) probe pairs inside one period, for reports."""
    rng = random.Random(seed)
    L = p.lattice
    out = []
    for _ in range(n):
        cs = [Fraction(rng.randrange(64), 64) for _ in range(p.dim)]
        x = L.vector(cs) if L is not None else tuple(cs)
        out.append(x)
    return out
