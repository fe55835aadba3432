"""Product patterns, family objects for suprema, and the generic entry points
``materialize_window`` / ``validate``."""
from __future__ import annotations

from fractions import Fraction

from ..core import (AbstractPattern, Verdict, register_kind, kind_class, NotLocallyFinite,
                    NotPairwiseCompatible, UnboundedRequest, KindMismatch, SupportHandle,
                    BoundedComponentsCertificate)
from ..geometry import Window, GroupSpec, Isometry, as_point
from ..lattice import Lattice
from .base import ElementPattern


@register_kind
class Product(AbstractPattern):
    """∏ Π_i with componentwise cut/action (e.g. multi sets UD^I)."""
    kind = "Product"

    def __init__(self, group: GroupSpec, components=(), kinds=None):
        self.group = group
        self.components = tuple(components)
        self.kinds = tuple(kinds) if kinds is not None else tuple(c.kind for c in self.components)
        if len(self.kinds) != len(self.components):
            raise KindMismatch("kinds and components differ in length")

    def _zero_kwargs(self):
        return {"kinds": self.kinds}

    @classmethod
    def zero(cls, group, kinds=()):
        return cls(group, [kind_class(k).zero(group) for k in kinds], kinds)

    def cut(self, w):
        return Product(self.group, [c.cut(w) for c in self.components], self.kinds)

    materialize = cut

    def act(self, g):
        self._check_group(g)
        return Product(self.group, [c.act(g) for c in self.components], self.kinds)

    def is_finite(self):
        return all(c.is_finite() for c in self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def support_contains(self, x):
        return any(c.support_contains(x) for c in self.components)

    def support_within(self, w):
        return all(c.support_within(w) for c in self.components)

    def leq(self, other):
        return all(a.leq(b) for a, b in zip(self.components, other.components))

    def compatible(self, other):
        return all(a.compatible(b) for a, b in zip(self.components, other.components))

    @classmethod
    def sup(cls, items, group, kinds=()):
        from ..core import supremum
        n = len(items[0].components)
        return cls(group, [supremum([x.components[i] for x in items]) for i in range(n)], items[0].kinds)

    def validate(self):
        for c in self.components:
            v = c.validate()
            if not v:
                return v
        return Verdict.ok(len(self.components))

    def component_radius(self):
        rs = [c.component_radius() for c in self.components]
        if any(r is None for r in rs):
            return None
        return max(rs, key=lambda r: r.radius) if rs else BoundedComponentsCertificate(Fraction(1), Fraction(1))

    def support(self):
        rs = [c.support().bounding_radius for c in self.components]
        return SupportHandle(self, None if any(r is None for r in rs) else max(rs, default=Fraction(0)),
                             (Fraction(0),) * self.dim)

    def __eq__(self, other):
        return isinstance(other, Product) and self.kinds == other.kinds and self.components == other.components

    def __hash__(self):
        return hash(("Product", self.kinds))

    def __repr__(self):
        return f"Product({', '.join(map(repr, self.components))})"


class PeriodicFamily:
    """{ t_v(m) : v in L, m in members } for finite patterns ``members``; its
    supremum is a periodic pattern (or an incompatibility error)."""

    def __init__(self, members, lattice: Lattice):
        self.members = list(members)
        self.lattice = lattice

    def supremum(self):
        proto = self.members[0]
        if not isinstance(proto, ElementPattern):
            raise KindMismatch("periodic families need element patterns")
        elems = []
        for m in self.members:
            if m.lattice is not None:
                raise ValueError("members must be finite")
            elems.extend(proto._reduce_with(self.lattice, e) for e in m.elements)
        merged = proto._canonical(elems)
        bad = proto._periodic_conflict(merged, self.lattice)
        if bad is not None:
            raise NotPairwiseCompatible("incompatible translates in periodic family", bad)
        return proto._new(merged, self.lattice)


class ContinuumFamily:
    """{ δ_x : x on the segment [a, b] } (a ≠ b): pairwise compatible but not
    locally finite, so it has no supremum in UD(X)."""

    def __init__(self, group: GroupSpec, a, b):
        self.group = group
        self.a, self.b = as_point(a), as_point(b)

    def member(self, t):
        t = Fraction(t)
        from .points import PointSet
        return PointSet(self.group, [tuple(x + t * (y - x) for x, y in zip(self.a, self.b))])

    def supremum(self):
        raise NotLocallyFinite("infinitely many members meet a bounded window",
                               Window.ball(self.a, 1))


def materialize_window(p: AbstractPattern, w: Window) -> AbstractPattern:
    """The finite pattern cut(p, w)."""
    if w.is_all and not p.is_finite():
        raise UnboundedRequest("materialising a periodic pattern on ALL")
    return p.cut(w)


def validate(p: AbstractPattern) -> Verdict:
    return p.validate()
