"""SVG pictures of finite windows of a pattern.

Geometry is printed with 9 decimals (presentation only); colours come from a
fixed palette keyed by label or plan index, so output is byte-stable.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass
from fractions import Fraction

from .core import UnboundedRequest
from .exact import sqrt_upper
from .geometry import Window
from .shapes import Disk
from .instances import (PointSet, Patch, MapPattern, DiracComb, Plan, Product, materialize_window)

PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
           "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd")


@dataclass
class Style:
    scale: float = 40.0          # pixels per unit
    point_radius: float = 0.06   # marker radius (units)
    puncture_radius: float = 0.03
    strip_height: float = 0.5    # d = 1 drawings
    stroke: str = "#222222"


def colour(key) -> str:
    if key is None:
        return "#dddddd"
    return PALETTE[zlib.crc32(str(key).encode()) % len(PALETTE)]


def _f(x) -> str:
    s = f"{float(x):.9f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class Box:
    """Axis-parallel box [lo, hi]; rendered through the covering ball, then
    elements are kept when their closure lies in the box."""

    def __init__(self, lo, hi):
        self.lo = tuple(Fraction(c) for c in lo)
        self.hi = tuple(Fraction(c) for c in hi)

    def window(self) -> Window:
        c = tuple((a + b) / 2 for a, b in zip(self.lo, self.hi))
        r2 = sum(((b - a) / 2) ** 2 for a, b in zip(self.lo, self.hi))
        return Window.ball(c, sqrt_upper(r2))

    def holds(self, x) -> bool:
        return all(a <= c <= b for a, c, b in zip(self.lo, x, self.hi))


def _inside(kind, e, box: Box | None) -> bool:
    if box is None:
        return True
    if kind == "tile":
        if isinstance(e.shape, Disk):
            return all(box.holds(tuple(c + s * e.shape.radius if i == j else c for j, c in enumerate(e.shape.center)))
                       for i in range(len(e.shape.center)) for s in (-1, 1))
        return all(box.holds(v) for v in e.shape.vertices)
    return box.holds(e)


def _items(p, box):
    """(sort key, kind, payload) for every drawable element."""
    out = []
    if isinstance(p, Product):
        for c in p.components:
            out.extend(_items(c, box))
        return out
    if isinstance(p, Patch):
        for t in p.sorted_elements():
            if _inside("tile", t, box):
                out.append(("tile", t))
    elif isinstance(p, PointSet):
        out += [("point", x) for x in p.sorted_elements() if _inside("point", x, box)]
    elif isinstance(p, DiracComb):
        out += [("dirac", e) for e in p.sorted_elements() if _inside("point", e[0], box)]
    elif isinstance(p, MapPattern):
        out += [("atom", e) for e in p.sorted_elements() if _inside("point", e.atom.center, box)]
    elif isinstance(p, Plan):
        out += [("plan", e) for e in p.sorted_elements() if _inside("point", e[1].translation, box)]
    return out


def _xy(x, d, st: Style):
    return (x[0], x[1]) if d == 2 else (x[0], Fraction(0))


def render_svg(p, w, style: Style | None = None) -> str:
    """w: a bounded Window or a Box."""
    st = style or Style()
    box = w if isinstance(w, Box) else None
    win = box.window() if box else w
    if not win.is_bounded:
        raise UnboundedRequest("render needs a bounded window")
    q = materialize_window(p, win)
    d = p.dim
    b = win.bounding()
    c, r = b.point_center(), float(b.radius)
    if box is not None:
        x0, x1 = float(box.lo[0]), float(box.hi[0])
        y0, y1 = (float(box.lo[1]), float(box.hi[1])) if d == 2 else (-st.strip_height, st.strip_height)
    else:
        x0, x1 = float(c[0]) - r, float(c[0]) + r
        y0, y1 = (float(c[1]) - r, float(c[1]) + r) if d == 2 else (-st.strip_height, st.strip_height)
    pad = 0.25
    vb = f"{_f(x0 - pad)} {_f(-(y1 + pad))} {_f(x1 - x0 + 2 * pad)} {_f(y1 - y0 + 2 * pad)}"
    W, H = _f((x1 - x0 + 2 * pad) * st.scale), _f((y1 - y0 + 2 * pad) * st.scale)
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="{vb}">',
             '<g transform="scale(1,-1)" stroke-width="0.01" stroke="%s">' % st.stroke]
    sw = st.strip_height
    for kind, e in _items(q, box):
        if kind == "tile":
            fill = colour(e.label)
            s = e.shape
            if isinstance(s, Disk):
                cx, cy = _xy(s.center, d, st)
                lines.append(f'<circle class="tile" cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(s.radius)}" fill="{fill}"/>')
            elif d == 1:
                lo, hi = s.vertices[0][0], s.vertices[1][0]
                lines.append(f'<rect class="tile" x="{_f(lo)}" y="{_f(-sw / 2)}" width="{_f(hi - lo)}" '
                             f'height="{_f(sw)}" fill="{fill}"/>')
            else:
                pts = " ".join(f"{_f(v[0])},{_f(v[1])}" for v in s.vertices)
                lines.append(f'<polygon class="tile" points="{pts}" fill="{fill}"/>')
            for pu in e.punctures:
                px, py = _xy(pu, d, st)
                lines.append(f'<circle class="puncture" cx="{_f(px)}" cy="{_f(py)}" r="{_f(st.puncture_radius)}" '
                             f'fill="#ffffff"/>')
        elif kind == "point":
            px, py = _xy(e, d, st)
            lines.append(f'<circle class="point" cx="{_f(px)}" cy="{_f(py)}" r="{_f(st.point_radius)}" fill="#000000"/>')
        elif kind == "dirac":
            px, py = _xy(e[0], d, st)
            wt = e[1] if not isinstance(e[1], tuple) else e[1][0]
            lines.append(f'<circle class="dirac" cx="{_f(px)}" cy="{_f(py)}" r="{_f(st.point_radius)}" '
                         f'fill="{colour(wt)}"/>')
        elif kind == "atom":
            a = e.atom
            px, py = _xy(a.center, d, st)
            rad = a.radius if a.radius > 0 else st.point_radius
            lines.append(f'<circle class="atom" cx="{_f(px)}" cy="{_f(py)}" r="{_f(rad)}" '
                         f'fill="{colour(a.value.vec)}" fill-opacity="0.5"/>')
        else:
            lam, g = e
            px, py = _xy(g.translation, d, st)
            lines.append(f'<circle class="plan" cx="{_f(px)}" cy="{_f(py)}" r="{_f(st.point_radius)}" '
                         f'fill="{colour(lam)}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def count_elements(svg: str, cls: str) -> int:
    return svg.count(f'class="{cls}"')


def fill_classes(svg: str, cls: str = "tile") -> set:
    import re
    return set(re.findall(rf'class="{cls}"[^>]*fill="(#[0-9a-f]+)"', svg))
