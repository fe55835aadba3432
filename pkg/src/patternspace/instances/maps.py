"""Map patterns Map(X, Y, 0) built from radial atoms, and their density measures.

A map pattern is a finite (or lattice-periodic) family of *pieces*.  A piece is
an atom (a radial function about a centre) restricted to a region:

* ``FULL``: the atom's whole domain, or
* a union of canonical restrictions ``atom ∩ B_1 ∩ ... ∩ B_k`` (essential balls).

Cutting may collapse a region to a single point; such a point becomes a
KRONECKER atom carrying the exact value there.  Values are exact: rational
vectors times a factor that is rational, a quadratic surd (tent profile), or
c·exp(q) (smooth profile).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..core import register_kind, PatternError
from ..exact import Surd, sqrt_upper
from ..geometry import (as_point, add, sub, dist2, mat_vec, identity, flat, Isometry,
                        GroupSpec, Window, Ball)
from ..lattice import Lattice
from ..regions import (FULL, min_power, canonical_restriction, part_within,
                       part_within_window, part_contains, part_disks)
from .base import ElementPattern

TENT, EXP, KRONECKER, CONST = "TENT", "EXP", "KRONECKER", "CONST"


# ---------------------------------------------------------------- values

@dataclass(frozen=True)
class MapValue:
    """factor * vec.  tag "Q": factor 1; "S": a + b*sqrt(m); "E": a*exp(b).
    Non-rational factors are normalised so that vec's first nonzero entry is 1."""
    tag: str
    a: Fraction
    b: Fraction
    m: int
    vec: tuple

    @staticmethod
    def rational(vec) -> "MapValue":
        return MapValue("Q", Fraction(1), Fraction(0), 1, tuple(Fraction(c) for c in vec))

    @staticmethod
    def zero(m: int) -> "MapValue":
        return MapValue.rational((0,) * m)

    @staticmethod
    def surd(s: Surd, vec) -> "MapValue":
        vec = tuple(Fraction(c) for c in vec)
        if s.b == 0:
            return MapValue.rational(tuple(s.a * c for c in vec))
        return MapValue("S", s.a, s.b, s.m, vec)._norm()

    @staticmethod
    def exp(coef, inner, vec) -> "MapValue":
        vec = tuple(Fraction(c) for c in vec)
        if coef == 0:
            return MapValue.zero(len(vec))
        return MapValue("E", Fraction(coef), Fraction(inner), 1, vec)._norm()

    def _norm(self) -> "MapValue":
        if self.tag == "Q":
            return self
        nz = next((c for c in self.vec if c != 0), None)
        if nz is None:
            return MapValue.zero(len(self.vec))
        vec = tuple(c / nz for c in self.vec)
        if self.tag == "S":
            return MapValue("S", self.a * nz, self.b * nz, self.m, vec)
        return MapValue("E", self.a * nz, self.b, 1, vec)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.vec)

    def transform(self, M) -> "MapValue":
        return MapValue(self.tag, self.a, self.b, self.m, mat_vec(M, self.vec))._norm()

    def factor_float(self) -> float:
        import math
        if self.tag == "Q":
            return 1.0
        if self.tag == "S":
            return float(self.a) + float(self.b) * math.sqrt(self.m)
        return float(self.a) * math.exp(float(self.b))

    def to_floats(self) -> list:
        f = self.factor_float()
        return [f * float(c) for c in self.vec]

    def __repr__(self):
        v = ",".join(str(c) for c in self.vec)
        if self.tag == "Q":
            return f"[{v}]"
        if self.tag == "S":
            return f"({self.a}+{self.b}√{self.m})[{v}]"
        return f"{self.a}·exp({self.b})[{v}]"


@dataclass(frozen=True)
class Representation:
    """phi: G0 -> GL_m(Q), stored as a table keyed by the flattened matrix."""
    m: int
    table: tuple            # ((flat(A), M), ...) sorted

    @staticmethod
    def trivial(group: GroupSpec, m: int = 1) -> "Representation":
        I = identity(m)
        return Representation(m, tuple(sorted((flat(A), I) for A in group.point_group)))

    @staticmethod
    def from_map(group: GroupSpec, m: int, fn) -> "Representation":
        return Representation(m, tuple(sorted((flat(A), tuple(tuple(Fraction(c) for c in r) for r in fn(A)))
                                              for A in group.point_group)))

    @staticmethod
    def sign(group: GroupSpec) -> "Representation":
        """phi(A) = det(A) on a one-dimensional space."""
        from ..geometry import det
        return Representation.from_map(group, 1, lambda A: ((det(A),),))

    @staticmethod
    def parity(group: GroupSpec) -> "Representation":
        """phi(-I) = -1, phi(A) = 1 otherwise; a homomorphism when -I is central
        and A -> [A = -I] is multiplicative, e.g. on {I, -I}."""
        d = group.dim
        minus = tuple(tuple(Fraction(-1 if i == j else 0) for j in range(d)) for i in range(d))
        rep = Representation.from_map(group, 1, lambda A: ((-1 if tuple(map(tuple, A)) == minus else 1,),))
        if not rep.check_homomorphism(group):
            raise PatternError("parity character is not a homomorphism on this point group")
        return rep

    def __call__(self, A):
        fa = flat(A)
        for k, M in self.table:
            if k == fa:
                return M
        raise PatternError("rotation outside the representation's domain")

    def is_trivial(self) -> bool:
        I = identity(self.m)
        return all(M == I for _, M in self.table)

    def check_homomorphism(self, group: GroupSpec) -> bool:
        from ..geometry import mat_mul
        if self(identity(group.dim)) != identity(self.m):
            return False
        return all(self(mat_mul(A, B)) == mat_mul(self(A), self(B))
                   for A in group.point_group for B in group.point_group)


# ---------------------------------------------------------------- atoms

@dataclass(frozen=True)
class Atom:
    profile: str
    center: tuple
    radius: Fraction
    value: MapValue

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.profile == KRONECKER:
            object.__setattr__(self, "radius", Fraction(0))
        elif self.radius <= 0:
            raise ValueError("atom radius must be positive")

    @property
    def is_open(self) -> bool:
        return self.profile in (TENT, EXP)

    def disk(self):
        return (self.center, self.radius, self.is_open)

    def image(self, g: Isometry, rep: Representation) -> "Atom":
        return Atom(self.profile, g(self.center), self.radius, self.value.transform(rep(g.rotation)))

    def translate(self, v) -> "Atom":
        return Atom(self.profile, add(self.center, v), self.radius, self.value)

    def key(self):
        return (self.center, self.profile, self.radius, self.value.tag, self.value.a,
                self.value.b, self.value.m, self.value.vec)

    def at(self, x) -> MapValue:
        """Value at x (zero outside the atom's domain)."""
        x = tuple(x)
        d2 = dist2(x, self.center)
        m = len(self.value.vec)
        if self.profile == KRONECKER:
            return self.value if x == self.center else MapValue.zero(m)
        r2 = self.radius * self.radius
        if self.profile == CONST:
            return self.value if d2 <= r2 else MapValue.zero(m)
        if d2 >= r2:
            return MapValue.zero(m)
        if self.profile == TENT:
            # 1 - |x - c| / r
            return MapValue.surd(Surd.make(1, -1 / self.radius, d2), self.value.vec)
        return MapValue.exp(1, -1 / (r2 - d2), self.value.vec)


def tent(center, radius, vec=(1,)) -> Atom:
    return Atom(TENT, center, radius, MapValue.rational(vec))


def exp_bump(center, radius, vec=(1,)) -> Atom:
    return Atom(EXP, center, radius, MapValue.rational(vec))


def indicator(center, radius, vec=(1,)) -> Atom:
    return Atom(CONST, center, radius, MapValue.rational(vec))


def kronecker(center, vec=(1,)) -> Atom:
    return Atom(KRONECKER, center, 0, MapValue.rational(vec))


@dataclass(frozen=True)
class Piece:
    atom: Atom
    parts: object = FULL    # FULL or frozenset of tuples of Balls

    def key(self):
        if self.parts == FULL:
            pk = ()
        else:
            pk = tuple(sorted(tuple(b.sort_key() for b in p) for p in self.parts))
        return (self.atom.key(), pk)

    def part_list(self) -> list:
        return [FULL] if self.parts == FULL else sorted(self.parts, key=lambda p: [b.sort_key() for b in p])

    def __repr__(self):
        a = self.atom
        s = f"{a.profile}@({','.join(map(str, a.center))};{a.radius})={a.value!r}"
        if self.parts != FULL:
            s += f"|{len(self.parts)} part(s)"
        return s


def _canon_parts(atom: Atom, parts):
    """Drop parts contained in other parts; FULL absorbs everything."""
    parts = list(parts)
    if any(p == FULL for p in parts):
        return FULL
    parts = sorted(set(parts), key=lambda p: [b.sort_key() for b in p])
    keep = []
    for i, p in enumerate(parts):
        if any(j != i and part_within(atom.disk(), p, q) and not (part_within(atom.disk(), q, p) and j > i)
               for j, q in enumerate(parts)):
            continue
        keep.append(p)
    return frozenset(keep)


# ---------------------------------------------------------------- patterns

@register_kind
class MapPattern(ElementPattern):
    kind = "MapPattern"
    keep_points = True

    def __init__(self, group: GroupSpec, pieces=(), lattice: Lattice | None = None, rep=None, **extra):
        if rep is None:
            rep = Representation.trivial(group, 1)
        pieces = [p if isinstance(p, Piece) else Piece(p) for p in pieces]
        super().__init__(group, pieces, lattice, rep=rep, **extra)

    @property
    def rep(self) -> Representation:
        return self._extra["rep"]

    @property
    def pieces(self) -> list:
        return self.sorted_elements()

    # -- element hooks
    def _e_anchor(self, e):
        return e.atom.center

    def _e_reach(self, e):
        return e.atom.radius

    def _e_image(self, e, g):
        atom = e.atom.image(g, self.rep)
        if e.parts == FULL:
            return Piece(atom)
        parts = frozenset(tuple(sorted((b.image(g) for b in p), key=lambda b: b.sort_key()))
                          for p in e.parts)
        return Piece(atom, parts)

    def _e_translate(self, e, v):
        atom = e.atom.translate(v)
        if e.parts == FULL:
            return Piece(atom)
        sh = Isometry.shift(v)
        parts = frozenset(tuple(sorted((b.image(sh) for b in p), key=lambda b: b.sort_key()))
                          for p in e.parts)
        return Piece(atom, parts)

    def _point_piece(self, atom: Atom, x):
        if not self.keep_points:
            return None
        v = atom.at(x)
        if v.is_zero():
            return None
        return Piece(Atom(KRONECKER, x, 0, v))

    def _e_cut_many(self, e, w: Window) -> list:
        atom = e.atom
        if atom.profile == KRONECKER:
            return [e] if w.contains(atom.center) else []
        out, parts = [], []
        for p in e.part_list():
            balls = list(w.balls) if p == FULL else list(p) + list(w.balls)
            r = canonical_restriction(atom.disk(), balls)
            if r is None:
                continue
            if r == FULL:
                parts.append(FULL)
            elif r[0] == "POINT":
                pp = self._point_piece(atom, r[1])
                if pp is not None:
                    out.append(pp)
            else:
                parts.append(r)
        if parts:
            out.append(Piece(atom, _canon_parts(atom, parts)))
        return out

    def _e_cut(self, e, w):
        res = self._e_cut_many(e, w)
        return res[0] if len(res) == 1 else None

    def _e_within(self, e, w):
        if e.atom.profile == KRONECKER:
            return w.contains(e.atom.center)
        return all(part_within_window(e.atom.disk(), p, w) for p in e.part_list())

    def _e_contains(self, e, x):
        if e.atom.profile == KRONECKER:
            return tuple(x) == e.atom.center
        return any(part_contains(e.atom.disk(), p, tuple(x)) for p in e.part_list())

    def _e_key(self, e):
        return e.key()

    def _e_diameter2(self, e):
        return 4 * e.atom.radius ** 2

    def _e_valid(self, e):
        if len(e.atom.value.vec) != self.rep.m:
            return "value dimension differs from the representation"
        if e.atom.value.is_zero():
            return "zero-valued atom"
        if not self.keep_points and e.atom.profile == KRONECKER:
            return "point atoms carry no mass in a density"
        return None

    def piece_value(self, e: Piece, x) -> MapValue:
        """Value of the piece at x (zero outside its region)."""
        if not self._e_contains(e, x):
            return MapValue.zero(self.rep.m)
        return e.atom.at(x)

    def _conflict(self, a, b):
        if a.atom == b.atom:
            return False
        ka, kb = a.atom.profile == KRONECKER, b.atom.profile == KRONECKER
        if ka or kb:
            if ka and kb:
                return a.atom.center == b.atom.center
            k, o = (a, b) if ka else (b, a)
            x = k.atom.center
            if not self._e_contains(o, x):
                return False
            return self.piece_value(o, x) != k.atom.value
        for pa in a.part_list():
            da = part_disks(a.atom.disk(), pa)
            for pb in b.part_list():
                F, x = min_power(da + part_disks(b.atom.disk(), pb))
                if F > 0:
                    continue
                if F == 0:
                    if not self.keep_points:
                        continue
                    if self.piece_value(a, x) != self.piece_value(b, x):
                        return True
                    continue
                if a.atom.profile == CONST and b.atom.profile == CONST and a.atom.value == b.atom.value:
                    continue
                return True
        return False

    def _canonical(self, elems) -> frozenset:
        by_atom: dict = {}
        for e in elems:
            by_atom.setdefault(e.atom, []).append(e)
        out = []
        for atom, ps in by_atom.items():
            if len(ps) == 1:
                out.append(ps[0])
                continue
            parts = []
            for p in ps:
                parts.extend(p.part_list())
            out.append(Piece(atom, _canon_parts(atom, parts)))
        return frozenset(out)

    def _leq_sets(self, qs, ps) -> bool:
        by_atom = {p.atom: p for p in ps}
        for q in qs:
            if q.atom.profile == KRONECKER:
                x = q.atom.center
                if not any(self.piece_value(p, x) == q.atom.value for p in ps
                           if dist2(p.atom.center, x) <= p.atom.radius ** 2):
                    return False
                continue
            p = by_atom.get(q.atom)
            if p is None:
                return False
            for qp in q.part_list():
                if not any(part_within(q.atom.disk(), qp, pp) for pp in p.part_list()):
                    return False
        return True

    def _validate_extra(self):
        from ..core import Verdict
        if not self.rep.check_homomorphism(self.group):
            return Verdict.fail("representation is not a homomorphism on the point group")
        return None

    # -- evaluation
    def eval(self, x) -> MapValue:
        x = as_point(x)
        pool = self.translates_near(x, self.max_reach())
        for e in pool:
            v = self.piece_value(e, x)
            if not v.is_zero():
                return v
        return MapValue.zero(self.rep.m)


@register_kind
class DensityMeasure(MapPattern):
    """f dμ for a map pattern f: same payload, measure cut semantics (restriction
    of the integration domain), so single points carry no mass."""
    kind = "DensityMeasure"
    keep_points = False

    def __init__(self, group, pieces=(), lattice=None, rep=None, **extra):
        pieces = [p if isinstance(p, Piece) else Piece(p) for p in pieces]
        pieces = [p for p in pieces if p.atom.profile != KRONECKER]
        super().__init__(group, pieces, lattice, rep=rep, **extra)

    def density(self) -> MapPattern:
        return MapPattern(self.group, self.elements, self.lattice, rep=self.rep)


def eval_map(f: MapPattern, x) -> MapValue:
    return f.eval(x)


def map_pattern(group, atoms, lattice=None, rep=None) -> MapPattern:
    return MapPattern(group, [Piece(a) for a in atoms], lattice, rep=rep)
