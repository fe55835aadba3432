"""Full-rank rational lattices: canonical (Hermite) bases, reduction modulo the
lattice, sums, intersections and exact enumeration of translates near a ball."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil, lcm

from .geometry import (as_point, add, sub, scale, dist2, mat_inv, transpose, mat_vec,
                       mat_mul, det, Point)


def _hnf_int(rows: list[list[int]], d: int) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by integer rows."""
    M = [list(r) for r in rows if any(r)]
    out = []
    for col in range(d):
        active = [r for r in M if r[col] != 0]
        rest = [r for r in M if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        if not active:
            raise ValueError("generators do not span a full-rank lattice")
        p = active[0]
        if p[col] < 0:
            p = [-a for a in p]
        out.append(p)
        M = rest
    if any(any(r) for r in M):
        raise AssertionError("hnf left residue")
    # reduce above-diagonal entries
    for i in range(d):
        for j in range(i):
            q = out[j][i] // out[i][i]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return out


def hnf_basis(vectors, d: int) -> tuple:
    """Canonical basis (upper-triangular Hermite form) of the rational lattice
    generated by ``vectors``."""
    vecs = [as_point(v) for v in vectors]
    den = 1
    for v in vecs:
        for c in v:
            den = lcm(den, c.denominator)
    rows = [[int(c * den) for c in v] for v in vecs]
    H = _hnf_int(rows, d)
    return tuple(tuple(Fraction(a, den) for a in r) for r in H)


@dataclass(frozen=True)
class Lattice:
    """Lattice with rows of ``basis`` as generators; basis kept in Hermite form."""
    basis: tuple

    def __post_init__(self):
        b = hnf_basis(self.basis, len(self.basis[0]))
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "_inv", mat_inv(b))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @staticmethod
    def standard(d: int, c=1) -> "Lattice":
        c = Fraction(c)
        return Lattice(tuple(tuple(c if i == j else Fraction(0) for j in range(d)) for i in range(d)))

    def coords(self, x: Point) -> tuple:
        """Coordinates n with x = sum n_i b_i (row convention)."""
        return mat_vec(transpose(self._inv), x)

    def vector(self, n) -> Point:
        d = self.dim
        b = self.basis
        return tuple(sum([n[i] * b[i][j] for i in range(d)], Fraction(0)) for j in range(d))

    def contains(self, v: Point) -> bool:
        return all(c.denominator == 1 for c in self.coords(v))

    def reduce_shift(self, x: Point) -> Point:
        """Lattice vector t with x - t in the half-open fundamental cell."""
        n = [floor(c) for c in self.coords(x)]
        return self.vector(n)

    def reduce(self, x: Point) -> Point:
        return sub(x, self.reduce_shift(x))

    def covolume(self) -> Fraction:
        return abs(det(self.basis))

    def image(self, A) -> "Lattice":
        return Lattice(tuple(mat_vec(A, b) for b in self.basis))

    def dual(self) -> "Lattice":
        return Lattice(transpose(self._inv))

    def translations_within(self, center: Point, radius) -> list:
        """All lattice vectors v with |v - center| <= radius, in canonical order."""
        radius = Fraction(radius)
        c = self.coords(center)
        # |n_i - c_i| <= radius * ||column i of inv||_1 (an upper bound of the 2-norm)
        cols = transpose(self._inv)
        ranges = []
        for i in range(self.dim):
            w = radius * sum((abs(a) for a in cols[i]), Fraction(0))
            ranges.append(range(floor(c[i] - w), ceil(c[i] + w) + 1))
        r2 = radius * radius
        out = []
        for n in itertools.product(*ranges):
            v = self.vector(n)
            if dist2(v, center) <= r2:
                out.append(v)
        out.sort()
        return out

    def index_in(self, other: "Lattice") -> int:
        """[other : self] for self a sublattice of other."""
        r = self.covolume() / other.covolume()
        if r.denominator != 1:
            raise ValueError("not a sublattice")
        return int(r)

    def is_sublattice_of(self, other: "Lattice") -> bool:
        return all(other.contains(b) for b in self.basis)

    def coset_reps(self, sub_lattice: "Lattice") -> list:
        """Representatives of self / sub_lattice, reduced into sub_lattice's cell."""
        if not sub_lattice.is_sublattice_of(self):
            raise ValueError("not a sublattice")
        d = self.dim
        reps = {sub_lattice.reduce((Fraction(0),) * d)}
        frontier = list(reps)
        while frontier:
            x = frontier.pop()
            for b in self.basis:
                y = sub_lattice.reduce(add(x, b))
                if y not in reps:
                    reps.add(y)
                    frontier.append(y)
        return sorted(reps)

    def short_vector_bound(self) -> Fraction:
        """max |b_i|^2 over the stored basis (covering / packing helper)."""
        return max(sum(c * c for c in b) for b in self.basis)


def lattice_sum(a: Lattice, *vectors) -> Lattice:
    gens = list(a.basis) + [as_point(v) for v in vectors]
    return Lattice(tuple(gens))


def lattice_join(a: Lattice, b: Lattice) -> Lattice:
    return Lattice(a.basis + b.basis)


def lattice_intersection(a: Lattice, b: Lattice) -> Lattice:
    if a == b:
        return a
    return lattice_join(a.dual(), b.dual()).dual()
