"""Exact (punctured) Voronoi tilings of Delone sets and their MLD witnesses.

Cells are localised: the cell of x only depends on the points within 2R of x,
R any covering-radius bound.  A crude bound R0 = ½ Σ|b_i| from the period
lattice starts the computation; the exact squared covering radius is then the
largest squared vertex-to-owner distance over one period.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import PatternError
from .exact import sqrt_upper, sqrt_lower
from .geometry import Window, add, sub, dot, dist2, norm2, scale, zero, Isometry
from .shapes import Polygon, clip_halfplane
from .instances import PointSet, Patch, Tile
from .derivability import (LocalRule, MLDWitness, register_builder, cut_moved, common_lattice)


class NotDelone(PatternError):
    pass


@dataclass(frozen=True)
class DeloneParams:
    min_sep_sq: Fraction      # exact squared minimum distance
    min_sep: Fraction         # rational lower bound of the minimum distance
    covering_sq: Fraction     # exact squared covering radius
    covering: Fraction        # rational upper bound R̂ of the covering radius


def _crude_covering(d: PointSet) -> Fraction:
    return sum((sqrt_upper(norm2(b)) for b in d.lattice.basis), Fraction(0)) / 2


def _require_delone(d: PointSet):
    if d.lattice is None:
        raise NotDelone("a finite point set has no covering radius (no declared extent)")
    if d.is_zero():
        raise NotDelone("empty point set")


def cell_vertices(x, neighbours, half_width) -> list:
    """Vertices of the open Voronoi cell of x against ``neighbours`` (d = 1 or 2),
    starting from the cube of the given half-width around x."""
    d = len(x)
    if d == 1:
        lo, hi = x[0] - half_width, x[0] + half_width
        for y in neighbours:
            m = (x[0] + y[0]) / 2
            if y[0] > x[0]:
                hi = min(hi, m)
            elif y[0] < x[0]:
                lo = max(lo, m)
        return [(lo,), (hi,)]
    h = half_width
    poly = [(x[0] - h, x[1] - h), (x[0] + h, x[1] - h), (x[0] + h, x[1] + h), (x[0] - h, x[1] + h)]
    for y in sorted(neighbours):
        if y == x:
            continue
        n = sub(y, x)
        c = (norm2(y) - norm2(x)) / 2
        poly = clip_halfplane(poly, n, c)
        if len(poly) < 3:
            raise AssertionError("degenerate Voronoi cell")  # pragma: no cover
    return poly


def _cell(d: PointSet, x, R) -> list:
    nb = [y for y in d.translates_near(x, 2 * R) if y != x]
    return cell_vertices(x, nb, R + 1)


def delone_parameters(d: PointSet) -> DeloneParams:
    _require_delone(d)
    ms = d.min_sep_sq()
    if ms <= 0:
        raise NotDelone("not uniformly discrete")
    R0 = _crude_covering(d)
    cov = Fraction(0)
    for x in d.points:
        for v in _cell(d, x, R0):
            cov = max(cov, dist2(v, x))
    return DeloneParams(ms, sqrt_lower(ms), cov, sqrt_upper(cov))


def punctured_voronoi_tiling(d: PointSet, punctured: bool = True, params: DeloneParams | None = None) -> Patch:
    """One tile per point: the open cell V_x, minus {x} when punctured."""
    _require_delone(d)
    P = params or delone_parameters(d)
    tiles = []
    for x in d.points:
        vs = _cell(d, x, P.covering)
        tiles.append(Tile(Polygon(vs), (x,) if punctured else ()))
    return Patch(d.group, tiles, d.lattice)


# ---------------------------------------------------------------- witness

@register_builder("voronoi-cell")
def _voronoi_builder(rule):
    R = Fraction(rule.params["covering"])
    punct = bool(rule.params.get("punctured", True))

    def build(template):
        o = zero(rule.group.dim)
        if o not in template.elements:
            return Patch(rule.group)
        nb = [y for y in template.elements if y != o and dist2(y, o) <= 4 * R * R]
        vs = cell_vertices(o, nb, R + 1)
        return Patch(rule.group, [Tile(Polygon(vs), (o,) if punct else ())])
    return build


@register_builder("puncture-reader")
def _puncture_builder(rule):
    def build(template):
        o = zero(rule.group.dim)
        pts = [p for t in template.elements if t.anchor() == o for p in t.punctures]
        return PointSet(rule.group, pts)
    return build


def voronoi_rules(d: PointSet, punctured: bool = True, params: DeloneParams | None = None):
    P = params or delone_parameters(d)
    R = P.covering
    fwd = LocalRule(2 * R, 2 * R, R, "PointSet", "Patch", d.group,
                    builder_name="voronoi-cell",
                    params={"covering": R, "punctured": punctured}, name="voronoi-forward")
    bwd = LocalRule(R, 2 * R, R, "Patch", "PointSet", d.group,
                    builder_name="puncture-reader", params={}, name="voronoi-backward")
    return fwd, bwd


def voronoi_mld_witness(d: PointSet, params: DeloneParams | None = None) -> MLDWitness:
    fwd, bwd = voronoi_rules(d, True, params)
    return MLDWitness(fwd, bwd, "voronoi")


def vertex_augmented(d: PointSet, params: DeloneParams | None = None) -> PointSet:
    """D together with the vertices of its Voronoi cells (one period when periodic)."""
    t = punctured_voronoi_tiling(d, False, params)
    pts = set(d.points)
    for tile in t.elements:
        pts.update(tile.shape.vertices)
    out = PointSet(d.group, sorted(pts), d.lattice)
    return out.normalized() if hasattr(out, "normalized") else out
