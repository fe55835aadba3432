"""Exact predicates for intersections of closed disks (d = 1, 2).

Used by map patterns, whose pieces are atoms restricted to ball intersections.

* ``min_power`` minimises max_i (|x - c_i|^2 - r_i^2).  All |x|^2 terms share a
  coefficient, so the optimum is a convex combination of centres solving a
  rational linear system; enumerating active sets of size <= d+1 finds it.  The
  intersection is empty iff the minimum is > 0, a single point iff it is 0.
* ``region_within_ball`` decides Q ⊆ B for Q an intersection of disks.  The
  maximum of |x - c_B|^2 over Q sits at a vertex of Q (a circle-circle
  intersection) or at the far point of a boundary circle; these candidates are
  of the form m + sqrt(s) u, so every comparison is a surd sign test.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .exact import sign_surd
from .geometry import Ball, add, sub, scale, dot, dist2, norm2


def _solve(A, b):
    n = len(A)
    M = [list(r) + [v] for r, v in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [v / p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def min_power(disks):
    """disks: list of (center, radius).  Returns (F*, x*)."""
    d = len(disks[0][0])
    ks = [norm2(c) - r * r for c, r in disks]

    def g(i, x):
        c, r = disks[i]
        return dist2(x, c) - r * r

    n = len(disks)
    for size in range(1, min(n, d + 1) + 1):
        for S in itertools.combinations(range(n), size):
            i0 = S[0]
            A = [[Fraction(1)] * size]
            b = [Fraction(1)]
            for i in S[1:]:
                diff = scale(2, sub(disks[i0][0], disks[i][0]))
                A.append([dot(diff, disks[j][0]) for j in S])
                b.append(ks[i0] - ks[i])
            lam = _solve(A, b)
            if lam is None or any(l < 0 for l in lam):
                continue
            x = tuple(sum((l * disks[j][0][t] for l, j in zip(lam, S)), Fraction(0)) for t in range(d))
            F = g(i0, x)
            if all(g(k, x) <= F for k in range(n)):
                return F, x
    raise AssertionError("no KKT point found")  # pragma: no cover


def _circle_points(ci, ri, cj, rj):
    dv = sub(cj, ci)
    D = norm2(dv)
    if D == 0:
        return []
    a = (D + ri * ri - rj * rj) / (2 * D)
    h2 = ri * ri - a * a * D
    if h2 < 0:
        return []
    base = add(ci, scale(a, dv))
    perp = (-dv[1], dv[0])
    s = h2 / D
    if s == 0:
        return [(base, (Fraction(0), Fraction(0)), Fraction(0))]
    return [(base, perp, s), (base, scale(-1, perp), s)]


def _surd_dist2(p, c):
    m, u, s = p
    mc = sub(m, c)
    return norm2(mc) + s * norm2(u), 2 * dot(mc, u), s


def _in_disk(p, c, r) -> bool:
    a, b, s = _surd_dist2(p, c)
    return sign_surd(a - r * r, b, s) <= 0


def region_within_ball(disks, ball: Ball) -> bool:
    """Closed intersection of ``disks`` ⊆ closed ``ball``.  Empty list means
    the whole space (never contained)."""
    if not disks:
        return False
    d = len(disks[0][0])
    F, xs = min_power(disks)
    if F > 0:
        return True
    if d == 1:
        lo = max(c[0] - r for c, r in disks)
        hi = min(c[0] + r for c, r in disks)
        return ball.contains((lo,)) and ball.contains((hi,))
    zero2 = (Fraction(0), Fraction(0))
    cands = [(xs, zero2, Fraction(0))]
    cb = ball.center
    for i, (ci, ri) in enumerate(disks):
        for j in range(i + 1, len(disks)):
            cands.extend(_circle_points(ci, ri, *disks[j]))
        u = sub(ci, cb)
        if norm2(u) != 0:
            cands.append((ci, u, ri * ri / norm2(u)))
        for k in range(2):
            e = tuple(Fraction(1 if t == k else 0) for t in range(2))
            cands.append((add(ci, scale(ri, e)), zero2, Fraction(0)))
            cands.append((sub(ci, scale(ri, e)), zero2, Fraction(0)))
    R = ball.radius
    for p in cands:
        if all(_in_disk(p, c, r) for c, r in disks):
            if not _in_disk(p, cb, R):
                return False
    return True


FULL = "FULL"


def canonical_restriction(atom, balls):
    """Canonical description of (atom support) ∩ (balls).

    ``atom`` is None or (center, radius, open_flag).  Returns
      FULL                      -- the restriction changes nothing,
      None                      -- empty,
      ("POINT", x)              -- a single point x,
      tuple of Balls            -- the essential (irredundant) balls.
    """
    balls = sorted(set(balls), key=lambda b: b.sort_key())
    if atom is not None and len(atom[0]) == 1:
        return _restriction_1d(atom, balls)
    if atom is not None:
        c, r, is_open = atom
        me = Ball(c, r)
        balls = [b for b in balls if not b.contains_ball(me)]
        if not balls:
            return FULL
    extra = [] if atom is None else [(atom[0], atom[1])]
    disks = [(b.center, b.radius) for b in balls] + extra
    F, x = min_power(disks)
    if F > 0:
        return None
    if F == 0:
        if atom is not None and atom[2] and dist2(x, atom[0]) == atom[1] ** 2:
            return None
        return ("POINT", x)
    changed = True
    while changed:
        changed = False
        for b in list(balls):
            rest = [o for o in balls if o != b]
            rd = [(o.center, o.radius) for o in rest] + extra
            if rd and region_within_ball(rd, b):
                balls = rest
                changed = True
                break
    if atom is not None and not balls:
        return FULL
    return tuple(balls)


def _restriction_1d(atom, balls):
    # an intersection of intervals is an interval: store it as one ball
    c, r, is_open = atom
    lo, hi = c[0] - r, c[0] + r
    for b in balls:
        lo = max(lo, b.center[0] - b.radius)
        hi = min(hi, b.center[0] + b.radius)
    if lo > hi:
        return None
    if lo == hi:
        if is_open and (lo == c[0] - r or lo == c[0] + r):
            return None
        return ("POINT", (lo,))
    if lo == c[0] - r and hi == c[0] + r:
        return FULL
    return (Ball(((lo + hi) / 2,), (hi - lo) / 2),)


def part_disks(atom, part):
    extra = [] if atom is None else [(atom[0], atom[1])]
    if part == FULL:
        return extra
    return [(b.center, b.radius) for b in part] + extra


def part_within(atom, p1, p2) -> bool:
    """region(p1) ⊆ region(p2) for canonical parts of the same atom."""
    if p2 == FULL:
        return True
    if isinstance(p2, tuple) and p2 and p2[0] == "POINT":
        return p1 == p2
    if isinstance(p1, tuple) and p1 and p1[0] == "POINT":
        return all(b.contains(p1[1]) for b in p2)
    disks = part_disks(atom, p1)
    return all(region_within_ball(disks, b) for b in p2)


def part_within_window(atom, part, w) -> bool:
    if w.is_empty:
        return False
    if part != FULL and part[0] == "POINT":
        return w.contains(part[1])
    disks = part_disks(atom, part)
    return all(region_within_ball(disks, b) for b in w.balls)


def part_contains(atom, part, x) -> bool:
    """x in the closed region of the part."""
    if part != FULL and part[0] == "POINT":
        return part[1] == x
    return all(dist2(x, c) <= r * r for c, r in part_disks(atom, part))
