"""Geometric primitives and predicates for objects in the plane.

Shapes are disks, axis-parallel squares, 45-degree rotated squares (L1
balls), simple polygons, and points.  All intersection predicates use
closed-set semantics: shapes that merely touch at a boundary point do
intersect.  Predicates avoid square roots, so they are exact when
coordinates are ints or Fractions (the gadget generators rely on this).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class Point:
    x: object
    y: object

    def __iter__(self):
        yield self.x
        yield self.y


def _is_finite(v):
    try:
        return math.isfinite(float(v))
    except (OverflowError, TypeError, ValueError):
        return False


# ---------------------------------------------------------------------------
# shape kinds


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: object

    def validate(self):
        if not (_is_finite(self.center.x) and _is_finite(self.center.y)):
            raise ValueError("disk center must be finite")
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")


@dataclass(frozen=True)
class AxisSquare:
    lower_left: Point
    side: object

    def validate(self):
        if not self.side > 0:
            raise ValueError("square side must be positive")

    def corners(self):
        x, y = self.lower_left.x, self.lower_left.y
        s = self.side
        return (Point(x, y), Point(x + s, y), Point(x + s, y + s), Point(x, y + s))


@dataclass(frozen=True)
class RotatedSquare:
    """Axis square rotated 45 degrees, i.e. an L1 ball of radius l1_radius."""

    center: Point
    l1_radius: object

    def validate(self):
        if not self.l1_radius > 0:
            raise ValueError("rotated square radius must be positive")

    def corners(self):
        cx, cy = self.center.x, self.center.y
        r = self.l1_radius
        return (Point(cx + r, cy), Point(cx, cy + r), Point(cx - r, cy), Point(cx, cy - r))


@dataclass(frozen=True)
class SimplePolygon:
    vertices: tuple

    def validate(self):
        vs = self.vertices
        if len(vs) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        n = len(vs)
        for i in range(n):
            if vs[i] == vs[(i + 1) % n]:
                raise ValueError("polygon has a zero-length edge")
        for i in range(n):
            a1, a2 = vs[i], vs[(i + 1) % n]
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue
                b1, b2 = vs[j], vs[(j + 1) % n]
                if segments_intersect(a1, a2, b1, b2):
                    raise ValueError("polygon is self-intersecting")

    def corners(self):
        return self.vertices


@dataclass(frozen=True)
class PointShape:
    point: Point

    def validate(self):
        if not (_is_finite(self.point.x) and _is_finite(self.point.y)):
            raise ValueError("point must be finite")


SHAPES = (Disk, AxisSquare, RotatedSquare, SimplePolygon, PointShape)


@dataclass(frozen=True)
class GeometricObject:
    shape: object
    weight: object = 1
    is_terminal: bool = False

    def __post_init__(self):
        if not isinstance(self.shape, SHAPES):
            raise TypeError(f"unknown shape {self.shape!r}")
        self.shape.validate()
        if not self.weight > 0:
            raise ValueError("object weight must be strictly positive")


@dataclass(frozen=True)
class AlphaParams:
    alpha: float

    def __post_init__(self):
        if not self.alpha >= 4:
            raise ValueError("alpha must be at least 4")


# ---------------------------------------------------------------------------
# low-level predicates (exact for rational inputs)


def orient(o, a, b):
    """Sign of the cross product (a-o) x (b-o)."""
    v = (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
    return (v > 0) - (v < 0)


def _on_segment(p, a, b):
    return (
        orient(a, b, p) == 0
        and min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def segments_intersect(p1, p2, q1, q2):
    """Closed-segment intersection test."""
    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if d1 != d2 and d3 != d4:
        return True
    if d1 == 0 and _on_segment(p1, q1, q2):
        return True
    if d2 == 0 and _on_segment(p2, q1, q2):
        return True
    if d3 == 0 and _on_segment(q1, p1, p2):
        return True
    if d4 == 0 and _on_segment(q2, p1, p2):
        return True
    return False


def point_in_polygon(p, vertices):
    """Closed containment test for a simple polygon given as a vertex cycle."""
    n = len(vertices)
    for i in range(n):
        if _on_segment(p, vertices[i], vertices[(i + 1) % n]):
            return True
    inside = False
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            # x coordinate of the edge at height p.y; keep it exact
            t = (p.y - a.y) / (b.y - a.y)
            xc = a.x + t * (b.x - a.x)
            if p.x < xc:
                inside = not inside
    return inside


def dist2(a, b):
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2


def dist2_point_segment(p, a, b):
    """Squared distance from p to the closed segment ab (exact on Fractions)."""
    abx, aby = b.x - a.x, b.y - a.y
    apx, apy = p.x - a.x, p.y - a.y
    denom = abx * abx + aby * aby
    if denom == 0:
        return dist2(p, a)
    t = (apx * abx + apy * aby) / denom
    if t < 0:
        t = 0
    elif t > 1:
        t = 1
    cx, cy = a.x + t * abx, a.y + t * aby
    return (p.x - cx) ** 2 + (p.y - cy) ** 2


def dist2_point_polygon(p, vertices):
    """Squared distance from p to a closed polygonal region (0 if inside)."""
    if point_in_polygon(p, vertices):
        return 0
    n = len(vertices)
    return min(dist2_point_segment(p, vertices[i], vertices[(i + 1) % n]) for i in range(n))


def _polygons_intersect(va, vb):
    na, nb = len(va), len(vb)
    for i in range(na):
        for j in range(nb):
            if segments_intersect(va[i], va[(i + 1) % na], vb[j], vb[(j + 1) % nb]):
                return True
    return point_in_polygon(va[0], vb) or point_in_polygon(vb[0], va)


def _as_polygon(shape):
    if isinstance(shape, (AxisSquare, RotatedSquare, SimplePolygon)):
        return shape.corners()
    return None


def intersects(a: GeometricObject, b: GeometricObject) -> bool:
    """Closed-set intersection of two geometric objects."""
    return _shapes_intersect(a.shape, b.shape)


def _shapes_intersect(sa, sb):
    if isinstance(sa, Disk) and isinstance(sb, Disk):
        return dist2(sa.center, sb.center) <= (sa.radius + sb.radius) ** 2
    if isinstance(sa, PointShape) and isinstance(sb, PointShape):
        return sa.point == sb.point
    if isinstance(sa, Disk) and isinstance(sb, PointShape):
        return dist2(sa.center, sb.point) <= sa.radius**2
    if isinstance(sb, Disk) and isinstance(sa, PointShape):
        return _shapes_intersect(sb, sa)
    pa, pb = _as_polygon(sa), _as_polygon(sb)
    if pa is not None and pb is not None:
        # fast interval rejection for the axis-aligned case
        if isinstance(sa, AxisSquare) and isinstance(sb, AxisSquare):
            ax, ay, s = sa.lower_left.x, sa.lower_left.y, sa.side
            bx, by, t = sb.lower_left.x, sb.lower_left.y, sb.side
            return ax <= bx + t and bx <= ax + s and ay <= by + t and by <= ay + s
        return _polygons_intersect(pa, pb)
    if pa is not None and isinstance(sb, Disk):
        return dist2_point_polygon(sb.center, pa) <= sb.radius**2
    if pb is not None and isinstance(sa, Disk):
        return _shapes_intersect(sb, sa)
    if pa is not None and isinstance(sb, PointShape):
        return point_in_polygon(sb.point, pa)
    if pb is not None and isinstance(sa, PointShape):
        return _shapes_intersect(sb, sa)
    raise TypeError(f"unsupported shape pair {sa!r}, {sb!r}")


# ---------------------------------------------------------------------------
# size and fatness


def diameter(o: GeometricObject):
    """Exact Euclidean diameter of the object."""
    s = o.shape
    if isinstance(s, Disk):
        return 2 * s.radius
    if isinstance(s, PointShape):
        return 0
    if isinstance(s, AxisSquare):
        return float(s.side) * math.sqrt(2)
    if isinstance(s, RotatedSquare):
        return 2 * s.l1_radius
    best = 0
    vs = s.vertices
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            best = max(best, dist2(vs[i], vs[j]))
    return math.sqrt(float(best))


def _is_convex(vertices):
    n = len(vertices)
    signs = set()
    for i in range(n):
        d = orient(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n])
        if d != 0:
            signs.add(d)
    return len(signs) <= 1


def _chebyshev_radius(vertices):
    """Radius of the largest inscribed disk of a convex polygon (LP)."""
    from scipy.optimize import linprog

    vs = [(float(p.x), float(p.y)) for p in vertices]
    area2 = sum(
        vs[i][0] * vs[(i + 1) % len(vs)][1] - vs[(i + 1) % len(vs)][0] * vs[i][1]
        for i in range(len(vs))
    )
    if area2 < 0:
        vs = vs[::-1]
    n = len(vs)
    A, b = [], []
    for i in range(n):
        (x1, y1), (x2, y2) = vs[i], vs[(i + 1) % n]
        ex, ey = x2 - x1, y2 - y1
        norm = math.hypot(ex, ey)
        # interior is to the left of each CCW edge: -ey*(x-x1) + ex*(y-y1) >= r*norm
        A.append([ey, -ex, norm])
        b.append(ey * x1 - ex * y1)
    res = linprog([0.0, 0.0, -1.0], A_ub=A, b_ub=b, bounds=[(None, None), (None, None), (0, None)])
    if not res.success:
        return 0.0
    return res.x[2]


def contains_unit_diameter_disk(o: GeometricObject, tol: float = 1e-3) -> bool:
    """Whether a disk of radius 0.5 fits inside the object.

    Exact for disks, squares, and convex polygons.  Non-convex polygons are
    sampled on a grid of spacing tol: a True answer is always correct, a
    False answer may be wrong only when the largest inscribed disk has
    radius within tol of 0.5.
    """
    s = o.shape
    if isinstance(s, PointShape):
        return False
    if isinstance(s, Disk):
        return s.radius >= Fraction(1, 2)
    if isinstance(s, AxisSquare):
        return s.side >= 1
    if isinstance(s, RotatedSquare):
        return float(s.l1_radius) / math.sqrt(2) >= 0.5
    vs = s.vertices
    if _is_convex(vs):
        return _chebyshev_radius(vs) >= 0.5 - 1e-9
    xs = [float(p.x) for p in vs]
    ys = [float(p.y) for p in vs]
    step = tol
    n = len(vs)
    y = min(ys)
    while y <= max(ys):
        x = min(xs)
        while x <= max(xs):
            c = Point(x, y)
            if point_in_polygon(c, vs):
                clear2 = min(float(dist2_point_segment(c, vs[i], vs[(i + 1) % n])) for i in range(n))
                if clear2 >= 0.25:
                    return True
            x += step
        y += step
    return False


@dataclass
class GReport:
    """Outcome of checking the fat-or-disk input assumption."""

    alpha: float
    classification: dict = field(default_factory=dict)  # index -> 'fat' | 'disk'
    violations: list = field(default_factory=list)  # (index, message)

    @property
    def ok(self):
        return not self.violations


def validate_assumption_G(objects, alpha, tol: float = 1e-3) -> GReport:
    """Partition objects into fat polygons and large disks, listing violations.

    Disks qualify when their radius is at least 1.  Polygon-like shapes
    qualify as fat when their diameter is at most alpha/4 and they contain a
    unit-diameter disk.
    """
    if not alpha >= 4:
        raise ValueError("alpha must be at least 4")
    rep = GReport(alpha=alpha)
    for i, o in enumerate(objects):
        s = o.shape
        if isinstance(s, Disk):
            if s.radius >= 1:
                rep.classification[i] = "disk"
            else:
                rep.violations.append((i, f"disk radius {s.radius} < 1"))
        elif isinstance(s, PointShape):
            rep.violations.append((i, "point objects do not satisfy the assumption"))
        else:
            d = diameter(o)
            issues = []
            if float(d) > float(alpha) / 4 + 1e-12:
                issues.append(f"diameter {float(d):.4g} exceeds alpha/4 = {float(alpha) / 4:.4g}")
            if not contains_unit_diameter_disk(o, tol):
                issues.append("no inscribed unit-diameter disk")
            if issues:
                rep.violations.append((i, "; ".join(issues)))
            else:
                rep.classification[i] = "fat"
    return rep
