"""Plans: for every index λ a set of group elements, viewed as one pattern over
(Γ, Γ) with balls taken in the left-invariant metric on Γ."""
from __future__ import annotations

from ..core import register_kind
from ..geometry import Isometry, GroupSpec, Window, Ball, GammaBall, dist2
from ..lattice import Lattice
from .base import ElementPattern


def _contains(w: Window, g: Isometry) -> bool:
    if w.is_empty:
        return False
    for b in w.balls:
        if isinstance(b, GammaBall):
            if not b.contains(g):
                return False
        elif not b.contains(g.translation):
            return False
    return True


@register_kind
class Plan(ElementPattern):
    kind = "Plan"
    space = "Gamma"

    def __init__(self, group: GroupSpec, entries=(), lattice: Lattice | None = None, **extra):
        super().__init__(group, ((lam, g) for lam, g in entries), lattice, **extra)

    @classmethod
    def from_dict(cls, group, table: dict, lattice=None):
        return cls(group, [(lam, g) for lam, gs in table.items() for g in gs], lattice)

    def indices(self) -> list:
        return sorted({lam for lam, _ in self.elements})

    def entries(self, lam) -> list:
        return sorted((g for l, g in self.elements if l == lam), key=lambda g: g.sort_key())

    def _e_anchor(self, e):
        return e[1]

    def _e_image(self, e, g):
        return (e[0], g.compose(e[1]))

    def _e_translate(self, e, v):
        g = e[1]
        return (e[0], Isometry(tuple(a + b for a, b in zip(g.translation, v)), g.rotation))

    def _e_cut(self, e, w):
        return e if _contains(w, e[1]) else None

    def _e_within(self, e, w):
        return _contains(w, e[1])

    def _e_contains(self, e, x):
        return e[1] == x

    def _e_key(self, e):
        return (str(e[0]), e[1].sort_key())

    def _e_valid(self, e):
        if not self.group.contains(e[1].rotation):
            return "plan entry outside the group"
        return None

    def _conflict(self, a, b):
        # different indices never share an anchor point
        return a[0] != b[0] and a[1].translation == b[1].translation

    def support_contains(self, x) -> bool:
        if self.lattice is None:
            return any(g == x for _, g in self.elements)
        for lam, g in self.elements:
            d = tuple(a - b for a, b in zip(x.translation, g.translation))
            if g.rotation == x.rotation and self.lattice.contains(d):
                return True
        return False
