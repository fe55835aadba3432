"""Pure-point measures (weighted Dirac combs) and the conversions
point set -> comb and map -> density measure."""
from __future__ import annotations

from fractions import Fraction

from ..core import register_kind, PatternError
from ..geometry import as_point, GroupSpec
from ..lattice import Lattice
from .base import ElementPattern
from .points import PointSet
from .maps import MapPattern, DensityMeasure


def _weight(w):
    """Nonzero rational, or a complex number as a pair (re, im) of rationals."""
    if isinstance(w, (tuple, list)):
        re, im = Fraction(w[0]), Fraction(w[1])
        if im == 0:
            return re
        return (re, im)
    return Fraction(w)


def _is_zero_weight(w) -> bool:
    return w == 0 if not isinstance(w, tuple) else False


@register_kind
class DiracComb(ElementPattern):
    kind = "DiracComb"

    def __init__(self, group: GroupSpec, atoms=(), lattice: Lattice | None = None, **extra):
        atoms = [(as_point(x), _weight(w)) for x, w in atoms]
        super().__init__(group, atoms, lattice, **extra)

    @property
    def atoms(self) -> list:
        return self.sorted_elements()

    def _e_anchor(self, e):
        return e[0]

    def _e_image(self, e, g):
        return (g(e[0]), e[1])

    def _e_translate(self, e, v):
        return (tuple(a + b for a, b in zip(e[0], v)), e[1])

    def _e_cut(self, e, w):
        return e if w.contains(e[0]) else None

    def _e_within(self, e, w):
        return w.contains(e[0])

    def _e_contains(self, e, x):
        return e[0] == tuple(x)

    def _e_key(self, e):
        w = e[1]
        return (e[0], (w, Fraction(0)) if not isinstance(w, tuple) else w)

    def _e_valid(self, e):
        if _is_zero_weight(e[1]):
            return "zero weight"
        return None

    def _conflict(self, a, b):
        return a[0] == b[0]

    def support_set(self) -> PointSet:
        """supp |mu| as a point set."""
        return PointSet(self.group, [x for x, _ in self.elements], self.lattice)


def dirac_comb(d: PointSet, weights=None, with_witness: bool = True):
    """mu = sum_x w(x) delta_x.  ``weights``: None (unit), a scalar, a mapping
    from motif points, or a callable.  Returns (mu, witness) or mu."""
    pts = d.sorted_elements()
    if weights is None:
        ws = [Fraction(1)] * len(pts)
    elif callable(weights):
        ws = [weights(x) for x in pts]
    elif isinstance(weights, dict):
        ws = [weights[x] for x in pts]
    else:
        ws = [weights] * len(pts)
    ws = [_weight(w) for w in ws]
    if any(_is_zero_weight(w) for w in ws):
        raise PatternError("zero weight")
    mu = DiracComb(d.group, list(zip(pts, ws)), d.lattice)
    if not with_witness:
        return mu
    from ..derivability import dirac_witness
    return mu, dirac_witness(d, mu)


def density_measure(f: MapPattern, with_witness: bool = True):
    """f -> f dμ with the same payload.  Returns (measure, witness) or measure."""
    m = DensityMeasure(f.group, f.elements, f.lattice, rep=f.rep)
    if not with_witness:
        return m
    from ..derivability import density_witness
    return m, density_witness(f, m)
