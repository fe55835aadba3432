"""Uniformly discrete point sets: UD(X) and its Delone subsets."""
from __future__ import annotations

from fractions import Fraction

from ..core import register_kind, BoundedComponentsCertificate
from ..geometry import as_point, dist2, GroupSpec, sub
from ..lattice import Lattice
from .base import ElementPattern


@register_kind
class PointSet(ElementPattern):
    kind = "PointSet"

    def __init__(self, group: GroupSpec, points=(), lattice: Lattice | None = None, **extra):
        super().__init__(group, (as_point(x) for x in points), lattice, **extra)

    @classmethod
    def finite(cls, group, points):
        return cls(group, points)

    @classmethod
    def periodic(cls, group, basis, motif):
        return cls(group, motif, Lattice(tuple(as_point(b) for b in basis)))

    @classmethod
    def lattice_points(cls, group, basis=None, c=1):
        d = group.dim
        L = Lattice.standard(d, c) if basis is None else Lattice(tuple(as_point(b) for b in basis))
        return cls(group, [(Fraction(0),) * d], L)

    @property
    def points(self) -> list:
        return self.sorted_elements()

    def _e_anchor(self, e):
        return e

    def _e_image(self, e, g):
        return g(e)

    def _e_translate(self, e, v):
        return tuple(a + b for a, b in zip(e, v))

    def _e_cut(self, e, w):
        return e if w.contains(e) else None

    def _e_within(self, e, w):
        return w.contains(e)

    def _e_contains(self, e, x):
        return e == tuple(x)

    def _e_key(self, e):
        return e

    def component_radius(self):
        # single points: every R > 0 works; report R = 1 like the other discrete kinds
        return BoundedComponentsCertificate(Fraction(1), Fraction(0))

    def min_sep_sq(self) -> Fraction:
        """Squared minimum distance between distinct points (0 if fewer than two)."""
        pts = self.sorted_elements()
        best = None
        if self.lattice is None:
            for i, a in enumerate(pts):
                for b in pts[i + 1:]:
                    if best is not None and (b[0] - a[0]) ** 2 >= best:
                        break
                    dd = dist2(a, b)
                    if best is None or dd < best:
                        best = dd
            return best if best is not None else Fraction(0)
        # periodic: nearest translate of every motif point, radius grows until found
        r = max(sum(c * c for c in b) for b in self.lattice.basis)
        from ..exact import sqrt_upper
        R = sqrt_upper(r)
        for a in pts:
            for b in pts:
                for v in self.lattice.translations_within(sub(a, b), R):
                    y = tuple(x + t for x, t in zip(b, v))
                    if y != a:
                        dd = dist2(a, y)
                        if best is None or dd < best:
                            best = dd
        return best
