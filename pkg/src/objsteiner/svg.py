"""Minimal SVG rendering of instances: colored squares by gadget tag,
crosses for terminals, disks for interface squares."""

from __future__ import annotations

from fractions import Fraction

from .geometry import AxisSquare, Disk, PointShape, RotatedSquare, SimplePolygon

_PALETTE = [
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3",
    "#937860", "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd",
]


def _color_for(tag: str) -> str:
    base = tag.split("[")[0]
    return _PALETTE[hash(base) % len(_PALETTE)]


class _Canvas:
    def __init__(self):
        self.parts = []
        self.xmin = self.ymin = float("inf")
        self.xmax = self.ymax = float("-inf")

    def bump(self, x, y):
        self.xmin = min(self.xmin, x)
        self.xmax = max(self.xmax, x)
        self.ymin = min(self.ymin, y)
        self.ymax = max(self.ymax, y)

    def rect(self, x, y, w, h, fill, opacity=0.6):
        self.bump(x, y)
        self.bump(x + w, y + h)
        self.parts.append(
            f'<rect x="{x:.4f}" y="{y:.4f}" width="{w:.4f}" height="{h:.4f}" '
            f'fill="{fill}" fill-opacity="{opacity}" stroke="#333" stroke-width="0.02"/>'
        )

    def circle(self, x, y, r, fill, opacity=0.5, stroke="#333"):
        self.bump(x - r, y - r)
        self.bump(x + r, y + r)
        self.parts.append(
            f'<circle cx="{x:.4f}" cy="{y:.4f}" r="{r:.4f}" fill="{fill}" '
            f'fill-opacity="{opacity}" stroke="{stroke}" stroke-width="0.02"/>'
        )

    def polygon(self, pts, fill, opacity=0.5):
        for x, y in pts:
            self.bump(x, y)
        coords = " ".join(f"{x:.4f},{y:.4f}" for x, y in pts)
        self.parts.append(
            f'<polygon points="{coords}" fill="{fill}" fill-opacity="{opacity}" '
            f'stroke="#333" stroke-width="0.02"/>'
        )

    def cross(self, x, y, size=0.3, color="#c40000"):
        self.bump(x - size, y - size)
        self.bump(x + size, y + size)
        self.parts.append(
            f'<path d="M {x - size:.4f} {y - size:.4f} L {x + size:.4f} {y + size:.4f} '
            f'M {x - size:.4f} {y + size:.4f} L {x + size:.4f} {y - size:.4f}" '
            f'stroke="{color}" stroke-width="0.08" fill="none"/>'
        )

    def render(self, scale=40) -> str:
        pad = 1.0
        if not self.parts:
            self.xmin = self.ymin = 0.0
            self.xmax = self.ymax = 1.0
        w = (self.xmax - self.xmin + 2 * pad) * scale
        h = (self.ymax - self.ymin + 2 * pad) * scale
        tx = -self.xmin + pad
        ty = self.ymax + pad
        body = "\n".join(self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" height="{h:.0f}" '
            f'viewBox="0 0 {w:.2f} {h:.2f}">\n'
            f'<g transform="scale({scale},-{scale}) translate({tx:.4f},{-ty:.4f})">\n'
            f"{body}\n</g>\n</svg>\n"
        )


def render_squares(squares, interfaces=(), chosen=()) -> str:
    """Unit-square instance; interface squares get a marker disk, terminals
    a cross, selected squares a heavier opacity."""
    c = _Canvas()
    chosen = set(chosen)
    iface = set(interfaces)
    for i, s in enumerate(squares):
        x, y = float(s.x), float(s.y)
        opacity = 0.85 if i in chosen else 0.45
        c.rect(x, y, 1, 1, _color_for(s.tag or "square"), opacity)
    for i, s in enumerate(squares):
        x, y = float(s.x), float(s.y)
        if s.is_terminal:
            c.cross(x + 0.5, y + 0.5)
        if i in iface:
            c.circle(x + 0.5, y + 0.5, 0.18, "#ff9900", 0.9)
    return c.render()


def render_geometric(objects, chosen=()) -> str:
    c = _Canvas()
    chosen = set(chosen)
    for i, o in enumerate(objects):
        s = o.shape
        fill = "#4c72b0" if i not in chosen else "#55a868"
        opacity = 0.35 if i not in chosen else 0.7
        if isinstance(s, Disk):
            c.circle(float(s.center.x), float(s.center.y), float(s.radius), fill, opacity)
        elif isinstance(s, PointShape):
            c.circle(float(s.point.x), float(s.point.y), 0.05, fill, 1.0)
        else:
            c.polygon([(float(p.x), float(p.y)) for p in s.corners()], fill, opacity)
    for o in objects:
        if o.is_terminal:
            s = o.shape
            if isinstance(s, Disk):
                c.cross(float(s.center.x), float(s.center.y))
            elif isinstance(s, PointShape):
                c.cross(float(s.point.x), float(s.point.y), size=0.15)
            else:
                xs = [float(p.x) for p in s.corners()]
                ys = [float(p.y) for p in s.corners()]
                c.cross(sum(xs) / len(xs), sum(ys) / len(ys))
    return c.render()


def render_rects(ri, chosen=()) -> str:
    c = _Canvas()
    chosen = set(chosen)
    for i, (si, r) in enumerate(ri.rects):
        fill = "#55a868" if i in chosen else "#4c72b0"
        c.rect(float(r.x1), float(r.y1), float(r.x2 - r.x1), float(r.y2 - r.y1), fill, 0.12)
    for lbl, (px, py) in ri.terminals:
        c.cross(float(px), float(py), size=0.02)
    return c.render(scale=200)
