"""Patches of open tiles (optionally punctured) and labeled patches."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core import register_kind, KindMismatch
from ..exact import sqrt_upper
from ..geometry import as_point, add, sub, dist2, Window, GroupSpec, Isometry
from ..lattice import Lattice
from ..shapes import Polygon, Disk, interiors_disjoint, meets_ball
from .base import ElementPattern


@dataclass(frozen=True)
class Tile:
    """shape minus the finite set of punctures; ``label`` is an optional token."""
    shape: object
    punctures: tuple = ()
    label: object = None

    def __post_init__(self):
        object.__setattr__(self, "punctures", tuple(sorted({as_point(p) for p in self.punctures})))

    def anchor(self):
        return self.shape.centroid()

    def image(self, g: Isometry) -> "Tile":
        return Tile(self.shape.image(g), tuple(g(p) for p in self.punctures), self.label)

    def translate(self, v) -> "Tile":
        return Tile(self.shape.translate(v), tuple(add(p, v) for p in self.punctures), self.label)

    def key(self):
        return (self.shape.sort_key(), self.punctures, "" if self.label is None else str(self.label))

    def reach(self) -> Fraction:
        return sqrt_upper(self.shape.reach2(self.anchor()))

    def contains(self, x) -> bool:
        """x in the closure of the tile (the closure ignores punctures)."""
        return self.shape.contains_closed(tuple(x))

    def __repr__(self):
        s = self.shape
        body = (f"Disk({[str(c) for c in s.center]},{s.radius})" if isinstance(s, Disk)
                else f"Poly({[[str(c) for c in v] for v in s.vertices]})")
        extra = f", punct={[[str(c) for c in p] for p in self.punctures]}" if self.punctures else ""
        lab = f", label={self.label}" if self.label is not None else ""
        return f"Tile({body}{extra}{lab})"


def box_tile(lo, hi, punctures=(), label=None) -> Tile:
    return Tile(Polygon.box(lo, hi), punctures, label)


@register_kind
class Patch(ElementPattern):
    kind = "Patch"

    def __init__(self, group: GroupSpec, tiles=(), lattice: Lattice | None = None, **extra):
        super().__init__(group, tiles, lattice, **extra)

    @property
    def tiles(self) -> list:
        return self.sorted_elements()

    def _e_anchor(self, e):
        return e.anchor()

    def _e_reach(self, e):
        return e.reach()

    def _e_image(self, e, g):
        return e.image(g)

    def _e_translate(self, e, v):
        return e.translate(v)

    def _e_cut(self, e, w):
        return e if e.shape.within(w) else None

    def _e_within(self, e, w):
        return e.shape.within(w)

    def _e_contains(self, e, x):
        return e.contains(x)

    def _e_key(self, e):
        return e.key()

    def _e_diameter2(self, e):
        return e.shape.diameter2()

    def _e_valid(self, e):
        if e.shape.dim != self.group.dim:
            return "tile dimension mismatch"
        if self.kind == "LabeledPatch" and e.punctures:
            return "labeled tiles are closed and carry no punctures"
        for p in e.punctures:
            if not e.shape.contains_open(p):
                return "puncture not strictly interior"
        return None

    def _conflict(self, a, b):
        return not interiors_disjoint(a.shape, b.shape)

    def sqcap(self, w: Window) -> "Patch":
        """Tiles meeting w (the older, non-axiomatic cut).  Single-ball windows."""
        if w.is_empty:
            return self.zero_like()
        if w.is_all:
            if self.lattice is not None:
                from ..core import UnboundedRequest
                raise UnboundedRequest("sqcap(ALL) of a periodic patch")
            return self
        if len(w.balls) != 1:
            raise ValueError("sqcap supports single-ball windows")
        b = w.balls[0]
        pool = self.elements if self.lattice is None else \
            self.translates_near(b.center, b.radius + self.max_reach())
        return self._new([t for t in pool if meets_ball(t.shape, b)
                          and not (b.radius == 0 and b.center in t.punctures)])


@register_kind
class LabeledPatch(Patch):
    """Labeled tiles (closure of the shape, label).  Distinct tiles must have
    disjoint interiors; equal closures must carry equal labels."""
    kind = "LabeledPatch"


def sqcap(p, w: Window):
    if not isinstance(p, Patch):
        raise KindMismatch("sqcap is defined for patches")
    return p.sqcap(w)
