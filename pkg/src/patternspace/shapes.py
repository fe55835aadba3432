"""Tile shapes: open convex polygons (d=2), open intervals (d=1) and open balls.

All predicates are exact.  A shape is identified with its open interior; the
closure is what gets tested against closed windows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import sqrt_upper
from .geometry import Isometry, Window, Ball, as_point, sub, add, dot, dist2, scale


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _canonical_ccw(pts):
    """Convex-position vertices -> CCW order starting at the lexicographic min,
    with repeated and collinear vertices dropped (monotone chain hull)."""
    pts = sorted(set(pts))
    if len(pts) < 3:
        raise ValueError("degenerate polygon")
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise ValueError("degenerate polygon")
    return tuple(hull)


@dataclass(frozen=True)
class Polygon:
    """Open convex polygon (d=2, CCW vertices) or open interval (d=1, two endpoints)."""
    vertices: tuple

    def __post_init__(self):
        vs = tuple(as_point(v) for v in self.vertices)
        d = len(vs[0])
        if d == 1:
            lo, hi = min(vs), max(vs)
            if lo == hi:
                raise ValueError("degenerate interval")
            vs = (lo, hi)
        elif d == 2:
            vs = _canonical_ccw(vs)
        else:
            raise ValueError("polygons only in d = 1, 2")
        object.__setattr__(self, "vertices", vs)

    @property
    def dim(self):
        return len(self.vertices[0])

    @staticmethod
    def interval(lo, hi) -> "Polygon":
        return Polygon(((lo,), (hi,)))

    @staticmethod
    def box(lo, hi) -> "Polygon":
        lo, hi = as_point(lo), as_point(hi)
        if len(lo) == 1:
            return Polygon.interval(lo[0], hi[0])
        return Polygon(((lo[0], lo[1]), (hi[0], lo[1]), (hi[0], hi[1]), (lo[0], hi[1])))

    def centroid(self):
        n = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / n for i in range(self.dim))

    def image(self, g: Isometry) -> "Polygon":
        vs = [g(v) for v in self.vertices]
        if len(vs[0]) != 2:
            return Polygon(tuple(vs))
        # isometries keep (det +1) or reverse (det -1) the cyclic CCW order
        A = g.rotation
        if A[0][0] * A[1][1] - A[0][1] * A[1][0] < 0:
            vs.reverse()
        i = vs.index(min(vs))
        out = object.__new__(Polygon)
        object.__setattr__(out, "vertices", tuple(vs[i:] + vs[:i]))
        return out

    def translate(self, t) -> "Polygon":
        # translation keeps the CCW order and the lexicographic start
        out = object.__new__(Polygon)
        object.__setattr__(out, "vertices", tuple(add(v, t) for v in self.vertices))
        return out

    def within(self, w: Window) -> bool:
        if w.is_empty:
            return False
        return all(w.contains(v) for v in self.vertices)

    def reach2(self, a) -> Fraction:
        return max(dist2(v, a) for v in self.vertices)

    def diameter2(self) -> Fraction:
        vs = self.vertices
        return max(dist2(u, v) for u in vs for v in vs)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def contains_open(self, x) -> bool:
        if self.dim == 1:
            return self.vertices[0][0] < x[0] < self.vertices[1][0]
        return all(cross(a, b, x) > 0 for a, b in self.edges())

    def contains_closed(self, x) -> bool:
        if self.dim == 1:
            return self.vertices[0][0] <= x[0] <= self.vertices[1][0]
        return all(cross(a, b, x) >= 0 for a, b in self.edges())

    def dist2_closed(self, x) -> Fraction:
        if self.contains_closed(x):
            return Fraction(0)
        if self.dim == 1:
            lo, hi = self.vertices[0][0], self.vertices[1][0]
            return (lo - x[0]) ** 2 if x[0] < lo else (x[0] - hi) ** 2
        return min(seg_dist2(x, a, b) for a, b in self.edges())

    def axes(self):
        if self.dim == 1:
            return [(Fraction(1),)]
        return [(-(b[1] - a[1]), b[0] - a[0]) for a, b in self.edges()]

    def project(self, n):
        vals = [dot(n, v) for v in self.vertices]
        return min(vals), max(vals)

    def sort_key(self):
        return ("P",) + tuple(c for v in self.vertices for c in v)

    def area_sign(self) -> int:
        return 1


def seg_dist2(x, a, b) -> Fraction:
    ab = sub(b, a)
    L = dot(ab, ab)
    t = dot(sub(x, a), ab) / L
    t = min(max(t, Fraction(0)), Fraction(1))
    p = add(a, scale(t, ab))
    return dist2(x, p)


@dataclass(frozen=True)
class Disk:
    """Open ball B(center, radius)°.  In d = 1 callers should prefer intervals."""
    center: tuple
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("disk radius must be positive")

    @property
    def dim(self):
        return len(self.center)

    def centroid(self):
        return self.center

    def image(self, g: Isometry) -> "Disk":
        return Disk(g(self.center), self.radius)

    def translate(self, t) -> "Disk":
        return Disk(add(self.center, t), self.radius)

    def within(self, w: Window) -> bool:
        if w.is_empty:
            return False
        me = Ball(self.center, self.radius)
        return all(b.contains_ball(me) for b in w.balls)

    def reach2(self, a) -> Fraction:
        # (|a - c| + r)^2 bounded above with a rational sqrt bound
        return (sqrt_upper(dist2(a, self.center)) + self.radius) ** 2

    def diameter2(self) -> Fraction:
        return 4 * self.radius * self.radius

    def contains_open(self, x) -> bool:
        return dist2(x, self.center) < self.radius ** 2

    def contains_closed(self, x) -> bool:
        return dist2(x, self.center) <= self.radius ** 2

    def sort_key(self):
        return ("D",) + self.center + (self.radius,)


def interiors_disjoint(s, t) -> bool:
    """Open shapes s, t have empty intersection."""
    if isinstance(s, Disk) and isinstance(t, Disk):
        rr = s.radius + t.radius
        return dist2(s.center, t.center) >= rr * rr
    if isinstance(s, Disk):
        s, t = t, s
    if isinstance(t, Disk):
        # polygon s vs disk t
        return s.dist2_closed(t.center) >= t.radius ** 2
    for n in s.axes() + t.axes():
        a0, a1 = s.project(n)
        b0, b1 = t.project(n)
        if a1 <= b0 or b1 <= a0:
            return True
    return False


def meets_ball(shape, ball: Ball) -> bool:
    """open shape ∩ closed ball != ∅."""
    if isinstance(shape, Disk):
        rr = shape.radius + ball.radius
        return dist2(shape.center, ball.center) < rr * rr
    if ball.radius == 0:
        return shape.contains_open(ball.center)
    return shape.dist2_closed(ball.center) < ball.radius ** 2


def clip_halfplane(vertices, n, c):
    """Clip a convex CCW polygon (vertex list) to {y : n.y <= c}."""
    out = []
    m = len(vertices)
    for i in range(m):
        p, q = vertices[i], vertices[(i + 1) % m]
        fp, fq = dot(n, p) - c, dot(n, q) - c
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append(add(p, scale(t, sub(q, p))))
    # drop repeats
    res = []
    for v in out:
        if not res or res[-1] != v:
            res.append(v)
    if len(res) > 1 and res[0] == res[-1]:
        res.pop()
    return res
