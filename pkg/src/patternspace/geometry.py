"""Exact Euclidean geometry in d = 1, 2 (3 mostly works): vectors, orthogonal
matrices, isometries, point groups, balls and windows.

Points are plain tuples of Fractions.  Matrices are tuples of row tuples.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import frac, sqrt_sum_le

Point = tuple
Matrix = tuple


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------- vectors

def as_point(xs: Iterable) -> Point:
    return tuple(frac(x) for x in xs)


def zero(d: int) -> Point:
    return (Fraction(0),) * d


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


_ZERO = Fraction(0)


def scale(c, x):
    return tuple(c * a for a in x)


def dot(x, y):
    # fast path for the signed-permutation entries of point-group matrices
    s = _ZERO
    for a, b in zip(x, y):
        if not a:
            continue
        if a == 1:
            s = s + b if s else b
        elif a == -1:
            s = s - b if s else -b
        else:
            s = s + a * b
    return s if isinstance(s, Fraction) else Fraction(s)


def norm2(x):
    return sum((a * a for a in x), Fraction(0))


def dist2(x, y):
    s = _ZERO
    for a, b in zip(x, y):
        c = a - b
        s = s + c * c
    return s if isinstance(s, Fraction) else Fraction(s)


def unit(d: int, i: int) -> Point:
    return tuple(Fraction(1 if j == i else 0) for j in range(d))


def _check_dim(x, y):
    if len(x) != len(y):
        raise DimensionMismatch(f"dimension {len(x)} vs {len(y)}")


# ---------------------------------------------------------------- matrices

def identity(d: int) -> Matrix:
    return tuple(unit(d, i) for i in range(d))


def as_matrix(rows) -> Matrix:
    return tuple(as_point(r) for r in rows)


def mat_vec(A, x):
    return tuple(dot(row, x) for row in A)


def transpose(A):
    return tuple(zip(*A)) if A else A


def mat_mul(A, B):
    Bt = transpose(B)
    return tuple(tuple(dot(r, c) for c in Bt) for r in A)


def mat_neg(A):
    return tuple(tuple(-a for a in r) for r in A)


def mat_inv(A) -> Matrix:
    """Gauss-Jordan over Q."""
    n = len(A)
    M = [list(r) + list(unit(n, i)) for i, r in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return tuple(tuple(r[n:]) for r in M)


def det(A) -> Fraction:
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    return sum(((-1) ** j * A[0][j] * det(tuple(r[:j] + r[j + 1:] for r in A[1:]))
                for j in range(n)), Fraction(0))


@functools.lru_cache(maxsize=4096)
def frob2(A, B) -> Fraction:
    return sum(((a - b) ** 2 for ra, rb in zip(A, B) for a, b in zip(ra, rb)), Fraction(0))


def is_orthogonal(A) -> bool:
    return mat_mul(transpose(A), A) == identity(len(A))


def flat(A) -> tuple:
    return tuple(a for r in A for a in r)


# ---------------------------------------------------------------- isometries

@dataclass(frozen=True)
class Isometry:
    """x -> A x + a."""
    translation: Point
    rotation: Matrix

    @property
    def dim(self) -> int:
        return len(self.translation)

    @staticmethod
    def identity(d: int) -> "Isometry":
        return Isometry(zero(d), identity(d))

    @staticmethod
    def shift(v) -> "Isometry":
        v = as_point(v)
        return Isometry(v, identity(len(v)))

    @staticmethod
    def linear(A) -> "Isometry":
        A = as_matrix(A)
        return Isometry(zero(len(A)), A)

    def __call__(self, x: Point) -> Point:
        _check_dim(self.translation, x)
        return add(mat_vec(self.rotation, x), self.translation)

    def compose(self, other: "Isometry") -> "Isometry":
        """(self o other)(x) = self(other(x))."""
        _check_dim(self.translation, other.translation)
        return Isometry(self(other.translation), mat_mul(self.rotation, other.rotation))

    __matmul__ = compose

    def inverse(self) -> "Isometry":
        At = transpose(self.rotation)
        return Isometry(tuple(-c for c in mat_vec(At, self.translation)), At)

    def is_identity(self) -> bool:
        return all(c == 0 for c in self.translation) and self.rotation == identity(self.dim)

    def sort_key(self):
        return self.translation + flat(self.rotation)

    def __repr__(self):
        t = ",".join(str(c) for c in self.translation)
        if self.rotation == identity(self.dim):
            return f"Iso(+({t}))"
        return f"Iso(+({t}), {[[str(a) for a in r] for r in self.rotation]})"


def isometry_algebra(g: Isometry, h: Isometry, x: Point):
    """(g o h, g^-1, g x)."""
    _check_dim(g.translation, h.translation)
    return g.compose(h), g.inverse(), g(x)


def gamma_metric_sq(g: Isometry, h: Isometry) -> tuple[Fraction, Fraction]:
    """(|a - b|^2, ||A - B||_F^2).  The metric itself is the sum of the square
    roots; Frobenius stands in for the operator norm."""
    _check_dim(g.translation, h.translation)
    return dist2(g.translation, h.translation), frob2(g.rotation, h.rotation)


def gamma_dist_le(g: Isometry, h: Isometry, r) -> bool:
    t, s = gamma_metric_sq(g, h)
    return sqrt_sum_le(t, s, Fraction(r))


# ---------------------------------------------------------------- point groups

def _signed_permutations(d: int):
    out = []
    for perm in itertools.permutations(range(d)):
        for signs in itertools.product((1, -1), repeat=d):
            out.append(tuple(tuple(Fraction(signs[i]) if j == perm[i] else Fraction(0)
                                   for j in range(d)) for i in range(d)))
    return out


@dataclass(frozen=True)
class GroupSpec:
    """Gamma = R^d x| G0 with G0 a finite group of rational orthogonal matrices."""
    dim: int
    point_group: tuple

    def __post_init__(self):
        G = tuple(sorted({as_matrix(A) for A in self.point_group}, key=flat))
        object.__setattr__(self, "point_group", G)
        if not 1 <= self.dim <= 3:
            raise ValueError("dimension must be 1, 2 or 3")
        I = identity(self.dim)
        if I not in G:
            raise ValueError("point group must contain the identity")
        Gs = set(G)
        for A in G:
            if len(A) != self.dim or not is_orthogonal(A):
                raise ValueError(f"not a rational orthogonal matrix: {A}")
            if transpose(A) not in Gs:
                raise ValueError("point group not closed under inverse")
            for B in G:
                if mat_mul(A, B) not in Gs:
                    raise ValueError("point group not closed under products")

    @classmethod
    def translations(cls, d: int) -> "GroupSpec":
        return cls(d, (identity(d),))

    @classmethod
    def inversion(cls, d: int) -> "GroupSpec":
        return cls(d, (identity(d), mat_neg(identity(d))))

    @classmethod
    def hyperoctahedral(cls, d: int) -> "GroupSpec":
        return cls(d, tuple(_signed_permutations(d)))

    @classmethod
    def generated(cls, d: int, gens: Sequence) -> "GroupSpec":
        G = {identity(d)}
        frontier = [as_matrix(g) for g in gens]
        while frontier:
            A = frontier.pop()
            if A in G:
                continue
            G.add(A)
            frontier.extend(mat_mul(A, B) for B in list(G))
            frontier.extend(mat_mul(B, A) for B in list(G))
        return cls(d, tuple(G))

    def contains(self, A) -> bool:
        return A in self.point_group

    def order(self) -> int:
        return len(self.point_group)

    def is_translation_only(self) -> bool:
        return len(self.point_group) == 1

    def name(self) -> str:
        d = self.dim
        if self.is_translation_only():
            return "translations"
        if set(self.point_group) == {identity(d), mat_neg(identity(d))}:
            return "inversion"
        if len(self.point_group) == len(_signed_permutations(d)):
            return "hyperoctahedral"
        return "custom"


# ---------------------------------------------------------------- balls & windows

@dataclass(frozen=True)
class Ball:
    """Closed ball B(center, radius) in R^d."""
    center: Point
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "radius", frac(self.radius))
        if self.radius < 0:
            raise ValueError("negative radius")

    @property
    def dim(self):
        return len(self.center)

    def contains(self, x) -> bool:
        return dist2(x, self.center) <= self.radius * self.radius

    def image(self, g: Isometry) -> "Ball":
        return Ball(g(self.center), self.radius)

    def contains_ball(self, other: "Ball") -> bool:
        """other subset of self: |c - c'| + r' <= r."""
        diff = self.radius - other.radius
        return diff >= 0 and dist2(self.center, other.center) <= diff * diff

    def point_center(self) -> Point:
        return self.center

    def sort_key(self):
        return (0,) + self.center + (self.radius,)


@dataclass(frozen=True)
class GammaBall:
    """Closed ball in Gamma under the (Frobenius) left-invariant metric."""
    center: Isometry
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius", frac(self.radius))
        if self.radius < 0:
            raise ValueError("negative radius")

    @property
    def dim(self):
        return self.center.dim

    def contains(self, g: Isometry) -> bool:
        return gamma_dist_le(g, self.center, self.radius)

    def image(self, g: Isometry) -> "GammaBall":
        return GammaBall(g.compose(self.center), self.radius)

    def point_center(self) -> Point:
        return self.center.translation

    def sort_key(self):
        return (1,) + self.center.sort_key() + (self.radius,)


@dataclass(frozen=True)
class Window:
    """ALL, EMPTY, or a finite intersection of closed balls (kept sorted)."""
    balls: tuple = ()
    empty: bool = False

    def __post_init__(self):
        if self.empty:
            object.__setattr__(self, "balls", ())
            return
        bs = tuple(sorted(set(self.balls), key=lambda b: b.sort_key()))
        object.__setattr__(self, "balls", bs)

    @staticmethod
    def ball(center, radius) -> "Window":
        return Window((Ball(as_point(center), frac(radius)),))

    @staticmethod
    def gamma_ball(center: Isometry, radius) -> "Window":
        return Window((GammaBall(center, frac(radius)),))

    @property
    def is_all(self) -> bool:
        return not self.empty and not self.balls

    @property
    def is_empty(self) -> bool:
        return self.empty

    @property
    def is_bounded(self) -> bool:
        return self.empty or bool(self.balls)

    def contains(self, x) -> bool:
        if self.empty:
            return False
        return all(b.contains(x) for b in self.balls)

    def intersect(self, other: "Window") -> "Window":
        if self.empty or other.empty:
            return EMPTY
        return Window(self.balls + other.balls)

    __and__ = intersect

    def image(self, g: Isometry) -> "Window":
        if self.empty or not self.balls:
            return self
        return Window(tuple(b.image(g) for b in self.balls))

    def bounding(self):
        """The smallest listed ball (every member of the window lies in it)."""
        if not self.balls:
            return None
        return min(self.balls, key=lambda b: (b.radius, b.sort_key()))

    def __repr__(self):
        if self.empty:
            return "EMPTY"
        if not self.balls:
            return "ALL"
        return "∩".join(f"B({','.join(map(str, b.point_center()))};{b.radius})" for b in self.balls)


ALL = Window()
EMPTY = Window(empty=True)


def window_intersect(w1: Window, w2: Window) -> Window:
    return w1.intersect(w2)


def region_containment(shape, w: Window) -> bool:
    """Closed shape subset of w.  ``shape`` is a Ball or anything exposing
    ``within(window)`` (polygons and disks from ``shapes``)."""
    if w.is_empty:
        return False
    if w.is_all:
        return True
    if isinstance(shape, Ball):
        return all(b.contains_ball(shape) for b in w.balls)
    return shape.within(w)
