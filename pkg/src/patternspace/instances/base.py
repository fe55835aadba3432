"""Patterns that are sets of elements (points, tiles, map pieces, weighted
points, plan entries), represented either FINITE or PERIODIC (lattice + motif).

Subclasses describe a single element through a handful of hooks; everything
else (cutting, action, periodic materialisation, order, glueing, validation)
is generic.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..core import (AbstractPattern, Verdict, NotPairwiseCompatible, UnboundedRequest,
                    KindMismatch, Undecided, BoundedComponentsCertificate, SupportHandle)
from ..exact import sqrt_upper
from ..geometry import Isometry, Window, GroupSpec, Ball, sub, add, dist2, zero, norm2
from ..lattice import Lattice, lattice_intersection


class ElementPattern(AbstractPattern):

    def __init__(self, group: GroupSpec, elements: Iterable = (), lattice: Lattice | None = None,
                 **extra):
        self.group = group
        self._extra = extra
        elems = list(elements)
        self.reduction_ok = True
        self.duplicates_ok = True
        if lattice is not None:
            red = [self._reduce_with(lattice, e) for e in elems]
            self.reduction_ok = all(self._e_key(a) == self._e_key(b) for a, b in zip(red, elems))
            if len(set(red)) != len(red):
                self.duplicates_ok = False
            elems = red
            if not elems:
                lattice = None
        self.lattice = lattice
        self.elements = self._canonical(elems)
        self._sorted = None

    # ---------------------------------------------------------------- hooks
    def _e_anchor(self, e):
        raise NotImplementedError

    def _e_reach(self, e) -> Fraction:
        """Upper bound of the distance from the anchor to the element's closure."""
        return Fraction(0)

    def _e_image(self, e, g: Isometry):
        raise NotImplementedError

    def _e_translate(self, e, v):
        return self._e_image(e, Isometry.shift(v))

    def _e_cut(self, e, w: Window):
        raise NotImplementedError

    def _e_cut_many(self, e, w: Window) -> list:
        c = self._e_cut(e, w)
        return [] if c is None else [c]

    def _e_within(self, e, w: Window) -> bool:
        return self._e_cut(e, w) == e

    def _e_contains(self, e, x) -> bool:
        raise NotImplementedError

    def _e_key(self, e):
        raise NotImplementedError

    def _e_diameter2(self, e) -> Fraction:
        return Fraction(0)

    def _e_valid(self, e) -> str | None:
        return None

    def _conflict(self, a, b) -> bool:
        """True when distinct elements a, b cannot coexist."""
        return False

    def _canonical(self, elems) -> frozenset:
        return frozenset(elems)

    def _merge(self, elems) -> frozenset:
        """Canonical union; raises NotPairwiseCompatible."""
        merged = self._canonical(elems)
        bad = self._find_conflict(sorted(merged, key=self._e_key))
        if bad is not None:
            raise NotPairwiseCompatible(f"{self.kind}: incompatible elements", bad)
        return merged

    def _leq_sets(self, qs, ps) -> bool:
        return qs <= ps

    # ---------------------------------------------------------------- plumbing
    def _new(self, elements, lattice=None):
        return type(self)(self.group, elements, lattice, **self._extra)

    def _zero_kwargs(self):
        return dict(self._extra)

    @classmethod
    def zero(cls, group, **kw):
        return cls(group, (), None, **kw)

    def _reduce_with(self, lattice: Lattice, e):
        t = lattice.reduce_shift(self.anchor_point(e))
        if all(c == 0 for c in t):
            return e
        return self._e_translate(e, tuple(-c for c in t))

    def anchor_point(self, e):
        a = self._e_anchor(e)
        return a.translation if isinstance(a, Isometry) else a

    def sorted_elements(self) -> list:
        if self._sorted is None:
            self._sorted = sorted(self.elements, key=self._e_key)
        return self._sorted

    def is_finite(self) -> bool:
        return self.lattice is None

    def is_periodic(self) -> bool:
        return self.lattice is not None

    def is_zero(self) -> bool:
        return not self.elements

    def __len__(self):
        return len(self.elements)

    def max_reach(self) -> Fraction:
        return max((self._e_reach(e) for e in self.elements), default=Fraction(0))

    def motif_in(self, L: Lattice) -> frozenset:
        """Motif with respect to a sublattice L of the pattern's lattice."""
        if L == self.lattice:
            return self.elements
        reps = self.lattice.coset_reps(L)
        out = set()
        for e in self.elements:
            for t in reps:
                out.add(self._reduce_with(L, self._e_translate(e, t)))
        return frozenset(out)

    def normalized(self):
        """Same pattern with the motif rebuilt from its reduced form."""
        return self._new(self.elements, self.lattice)

    def as_periodic(self, L: Lattice):
        if self.lattice is None:
            raise Undecided("finite pattern has no lattice")
        return self._new(self.motif_in(L), L)

    def __eq__(self, other):
        if not isinstance(other, AbstractPattern):
            return NotImplemented
        if type(other) is not type(self) or self._extra != other._extra:
            return False
        if self.group.dim != other.group.dim:
            return False
        if self.lattice is None or other.lattice is None:
            return self.lattice is None and other.lattice is None and self.elements == other.elements
        if self.lattice == other.lattice:
            return self.elements == other.elements
        L = lattice_intersection(self.lattice, other.lattice)
        return self.motif_in(L) == other.motif_in(L)

    def __hash__(self):
        if self.lattice is None:
            return hash((self.kind, self.elements))
        return hash((self.kind, "periodic"))

    def __repr__(self):
        if self.lattice is None:
            return f"{self.kind}(finite, n={len(self.elements)})"
        return f"{self.kind}(periodic, basis={[[str(c) for c in b] for b in self.lattice.basis]}, motif={len(self.elements)})"

    # ---------------------------------------------------------------- translates
    def translates_near(self, center, radius) -> list:
        """Elements (materialised translates) whose anchor is within ``radius``
        of ``center``."""
        radius = Fraction(radius)
        if self.lattice is None:
            r2 = radius * radius
            return [e for e in self.sorted_elements() if dist2(self.anchor_point(e), center) <= r2]
        out = []
        for e in self.sorted_elements():
            a = self.anchor_point(e)
            for v in self.lattice.translations_within(sub(center, a), radius):
                out.append(self._e_translate(e, v) if any(v) else e)
        return out

    # ---------------------------------------------------------------- cut / act
    def cut(self, w: Window):
        if w.is_empty:
            return self.zero_like()
        if w.is_all:
            return self
        if self.lattice is None:
            out = []
            for e in self.elements:
                out.extend(self._e_cut_many(e, w))
            return self._new(out)
        # cut(B(c, r)) = t + cut(B(c - t, r)) for periods t: cache on the reduced window
        t = self.lattice.reduce_shift(w.bounding().point_center())
        w0 = w.image(Isometry.shift(tuple(-c for c in t))) if any(t) else w
        cache = self.__dict__.setdefault("_cut_cache", {})
        res = cache.get(w0)
        if res is None:
            if len(cache) > 4096:
                cache.clear()
            res = cache[w0] = self._cut_periodic(w0)
        return res.translate(t) if any(t) else res

    def _cut_periodic(self, w: Window):
        bb = w.bounding()
        c0 = bb.point_center()
        out = []
        for e in self.sorted_elements():
            a = self.anchor_point(e)
            for v in self.lattice.translations_within(sub(c0, a), bb.radius + self._e_reach(e)):
                out.extend(self._e_cut_many(self._e_translate(e, v) if any(v) else e, w))
        return self._new(out)

    materialize = cut

    def act(self, g: Isometry):
        self._check_group(g)
        if g.is_identity():
            return self
        imgs = [self._e_image(e, g) for e in self.elements]
        if self.lattice is None:
            return self._new(imgs)
        return self._new(imgs, self.lattice.image(g.rotation))

    def translate(self, v):
        return self.act(Isometry.shift(v))

    # ---------------------------------------------------------------- support
    def support_contains(self, x) -> bool:
        if self.lattice is None:
            return any(self._e_contains(e, x) for e in self.elements)
        for e in self.elements:
            a = self.anchor_point(e)
            for v in self.lattice.translations_within(sub(x, a), self._e_reach(e)):
                if self._e_contains(self._e_translate(e, v), x):
                    return True
        return False

    def support_within(self, w: Window) -> bool:
        if w.is_all:
            return True
        if self.lattice is not None:
            return False
        return all(self._e_within(e, w) for e in self.elements)

    def bounding_radius(self, center=None) -> Fraction | None:
        if self.lattice is not None:
            return None
        c = center if center is not None else zero(self.dim)
        return max((sqrt_upper(dist2(self.anchor_point(e), c)) + self._e_reach(e)
                    for e in self.elements), default=Fraction(0))

    def support(self) -> SupportHandle:
        return SupportHandle(self, self.bounding_radius(), zero(self.dim))

    def cover_window(self, extra=Fraction(0)) -> Window:
        """A ball window about the origin containing the (finite) support."""
        return Window.ball(zero(self.dim), self.bounding_radius() + extra)

    def component_radius(self):
        if not self.elements:
            return BoundedComponentsCertificate(Fraction(1), Fraction(1))
        d2 = max(self._e_diameter2(e) for e in self.elements)
        if d2 == 0:
            return BoundedComponentsCertificate(Fraction(1), Fraction(0))
        return BoundedComponentsCertificate(sqrt_upper(d2), d2)

    # ---------------------------------------------------------------- order
    def _check_other(self, other):
        if type(other) is not type(self):
            raise KindMismatch(f"{self.kind} vs {other.kind}")

    def leq(self, other) -> bool:
        self._check_other(other)
        if self.is_zero():
            return True
        if other.is_zero():
            return False
        if self.lattice is None:
            ps = other.elements if other.lattice is None else \
                other.cut(self.cover_window(other.max_reach())).elements
            return self._leq_sets(self.elements, ps)
        if other.lattice is None:
            return False
        L = lattice_intersection(self.lattice, other.lattice)
        return self._leq_sets(self.motif_in(L), other.motif_in(L))

    def _cross_conflict(self, A: list, B: list):
        for a in A:
            pa, ra = self.anchor_point(a), self._e_reach(a)
            for b in B:
                rr = ra + self._e_reach(b)
                if dist2(pa, self.anchor_point(b)) > rr * rr:
                    continue
                if a != b and self._conflict(a, b):
                    return (a, b)
        return None

    def _find_conflict(self, elems: list):
        """Sweep on the first coordinate; returns an offending pair or None."""
        if len(elems) < 2:
            return None
        items = sorted(((self.anchor_point(e), self._e_reach(e), e) for e in elems),
                       key=lambda t: t[0])
        mr = max(t[1] for t in items)
        for i, (pa, ra, a) in enumerate(items):
            for j in range(i + 1, len(items)):
                pb, rb, b = items[j]
                if pb[0] - pa[0] > ra + mr:
                    break
                rr = ra + rb
                if dist2(pa, pb) > rr * rr:
                    continue
                if a != b and self._conflict(a, b):
                    return (a, b)
        return None

    def _periodic_conflict(self, motif, lattice, other_motif=None):
        """Conflicts between motif elements and lattice translates of
        ``other_motif`` (default: the motif itself)."""
        other_motif = motif if other_motif is None else other_motif
        mr = max((self._e_reach(e) for e in list(motif) + list(other_motif)), default=Fraction(0))
        for a in sorted(motif, key=self._e_key):
            pa = self.anchor_point(a)
            for b in sorted(other_motif, key=self._e_key):
                pb = self.anchor_point(b)
                for v in lattice.translations_within(sub(pa, pb), 2 * mr):
                    bb = self._e_translate(b, v) if any(v) else b
                    if a == bb:
                        continue
                    rr = self._e_reach(a) + self._e_reach(bb)
                    if dist2(pa, self.anchor_point(bb)) > rr * rr:
                        continue
                    if self._conflict(a, bb):
                        return (a, bb)
        return None

    def compatible(self, other) -> bool:
        self._check_other(other)
        if self.is_zero() or other.is_zero():
            return True
        if self.lattice is None and other.lattice is None:
            return self._cross_conflict(self.sorted_elements(), other.sorted_elements()) is None
        if self.lattice is None or other.lattice is None:
            f, p = (self, other) if self.lattice is None else (other, self)
            mr = f.max_reach() + p.max_reach()
            near = p.cut(f.cover_window(2 * mr + 1))
            if f._cross_conflict(f.sorted_elements(), near.sorted_elements()) is not None:
                return False
            return f._merge_ok(f.elements | near.elements)
        L = lattice_intersection(self.lattice, other.lattice)
        A, B = self.motif_in(L), other.motif_in(L)
        if self._periodic_conflict(A, L, B) is not None:
            return False
        return self._merge_ok(A | B)

    def _merge_ok(self, elems) -> bool:
        try:
            self._merge(elems)
            return True
        except NotPairwiseCompatible:
            return False

    @classmethod
    def sup(cls, items, group, **kw):
        proto = items[0]
        fin = [x for x in items if x.lattice is None]
        per = [x for x in items if x.lattice is not None]
        if not per:
            elems = []
            for x in fin:
                elems.extend(x.elements)
            return proto._new(proto._merge(elems))
        L = per[0].lattice
        for x in per[1:]:
            L = lattice_intersection(L, x.lattice)
        elems = []
        for x in per:
            elems.extend(x.motif_in(L))
        merged = proto._canonical(elems)
        bad = proto._periodic_conflict(merged, L)
        if bad is not None:
            raise NotPairwiseCompatible(f"{proto.kind}: incompatible periodic elements", bad)
        P = proto._new(merged, L)
        for f in fin:
            if not f.leq(P):
                raise Undecided("a finite perturbation of a periodic pattern is not representable")
        return P

    # ---------------------------------------------------------------- validation
    def validate(self) -> Verdict:
        n = 0
        if not self.reduction_ok:
            return Verdict.fail("reduction: motif element outside the fundamental domain")
        if not self.duplicates_ok:
            return Verdict.fail("duplicate motif elements modulo the lattice")
        for e in self.sorted_elements():
            n += 1
            msg = self._e_valid(e)
            if msg:
                return Verdict.fail(msg, {"element": repr(e)}, n)
        if self.lattice is None:
            bad = self._find_conflict(self.sorted_elements())
        else:
            bad = self._periodic_conflict(self.elements, self.lattice)
        if bad is not None:
            return Verdict.fail(f"{self.kind}: conflicting elements", {"pair": [repr(b) for b in bad]}, n)
        extra = self._validate_extra()
        if extra is not None:
            return extra
        return Verdict.ok(n)

    def _validate_extra(self):
        return None
