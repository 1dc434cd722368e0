"""Reductions from geometric instances to planar object instances, the
long-object reduction, and validators for the structural assumptions."""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import geometry
from .geometry import (
    AxisSquare,
    Disk,
    GeometricObject,
    Point,
    PointShape,
    RotatedSquare,
    SimplePolygon,
)
from .graphs import GraphObject, ObjectSteinerInstance, WeightedGraph, geometric_instance, graph_instance

_EPS = 1e-9


# ---------------------------------------------------------------------------
# terminal independence


@dataclass
class IndependenceInfo:
    kept: tuple  # T' indices in the old instance
    demoted: tuple  # T \ T'
    designated: int  # the terminal whose weight absorbs the demoted weight
    expected_shift: object  # exact optimum shift when demoted terminals are essential


def make_terminals_independent(inst: ObjectSteinerInstance):
    """Demote overlapping terminals to cheap connector objects.

    T' is the greedy-by-index maximal independent subset of T; each demoted
    terminal gets weight 1/(3|T \\ T'|) and the lowest-index kept terminal
    absorbs the demoted objects' original weight.
    """
    terms = list(inst.terminals)
    if not terms:
        raise ValueError("instance has no terminals")
    kept = []
    for t in terms:
        if all(t not in inst.adj[s] for s in kept):
            kept.append(t)
    demoted = [t for t in terms if t not in kept]
    if not demoted:
        return inst, IndependenceInfo(tuple(kept), (), kept[0], 0)
    exact = all(isinstance(inst.weights[i], (int, Fraction)) for i in range(inst.n))
    small = Fraction(1, 3 * len(demoted)) if exact else 1.0 / (3 * len(demoted))
    absorbed = sum(inst.weights[t] for t in demoted)
    designated = kept[0]
    new_objects = []
    for i, o in enumerate(inst.objects):
        if i in demoted:
            new_objects.append(GeometricObject(o.shape, small, False))
        elif i == designated:
            new_objects.append(GeometricObject(o.shape, o.weight + absorbed, True))
        else:
            new_objects.append(o)
    out = geometric_instance(new_objects, k=inst.k, X=inst.X, F=inst.F)
    shift = Fraction(1, 3) if exact else 1.0 / 3
    return out, IndependenceInfo(tuple(kept), tuple(demoted), designated, shift)


# ---------------------------------------------------------------------------
# geometric packing report


@dataclass
class PackingReport:
    alpha: float
    max_count: int
    within_proof_bound: bool  # 300 alpha^2
    within_assumption_bound: bool  # 1000 alpha^2
    worst_center: tuple = None


def _reference_point(o: GeometricObject):
    s = o.shape
    if isinstance(s, Disk):
        return s.center
    if isinstance(s, PointShape):
        return s.point
    return s.corners()[0]


def packing_report(objects, alpha) -> PackingReport:
    """Count solution objects met by radius-4*alpha balls centered at every
    object reference point."""
    best = 0
    worst = None
    for o in objects:
        p = _reference_point(o)
        ball = GeometricObject(Disk(Point(float(p.x), float(p.y)), 4 * alpha))
        cnt = sum(1 for q in objects if geometry.intersects(ball, q))
        if cnt > best:
            best, worst = cnt, (float(p.x), float(p.y))
    return PackingReport(
        alpha, best, best <= 300 * alpha * alpha, best <= 1000 * alpha * alpha, worst
    )


# ---------------------------------------------------------------------------
# geometric helpers for the planar translation


def _boundary_segments(shape):
    cs = shape.corners()
    return [(cs[i], cs[(i + 1) % len(cs)]) for i in range(len(cs))]


def _seg_seg_points(p1, p2, q1, q2):
    """Intersection points of two closed segments (0, 1, or endpoints of an
    overlap)."""
    x1, y1, x2, y2 = p1.x, p1.y, p2.x, p2.y
    x3, y3, x4, y4 = q1.x, q1.y, q2.x, q2.y
    d = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
    if abs(d) > _EPS:
        t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / d
        u = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / d
        if -1e-12 <= t <= 1 + 1e-12 and -1e-12 <= u <= 1 + 1e-12:
            return [Point(x1 + t * (x2 - x1), y1 + t * (y2 - y1))]
        return []
    # parallel: collect endpoints lying on the other segment
    out = []
    for p, a, b in ((p1, q1, q2), (p2, q1, q2), (q1, p1, p2), (q2, p1, p2)):
        if geometry.dist2_point_segment(p, a, b) <= _EPS * _EPS:
            out.append(p)
    return out


def _seg_circle_points(p, q, c, r):
    dx, dy = q.x - p.x, q.y - p.y
    fx, fy = p.x - c.x, p.y - c.y
    a = dx * dx + dy * dy
    if a < _EPS * _EPS:
        return []
    b = 2 * (fx * dx + fy * dy)
    cc = fx * fx + fy * fy - r * r
    disc = b * b - 4 * a * cc
    if disc < 0:
        return []
    sq = math.sqrt(max(disc, 0.0))
    out = []
    for t in ((-b - sq) / (2 * a), (-b + sq) / (2 * a)):
        if -1e-12 <= t <= 1 + 1e-12:
            out.append(Point(p.x + t * dx, p.y + t * dy))
    return out


def _circle_circle_points(c1, r1, c2, r2):
    d2 = geometry.dist2(c1, c2)
    d = math.sqrt(float(d2))
    if d < _EPS or d > r1 + r2 + _EPS or d < abs(r1 - r2) - _EPS:
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    h2 = r1 * r1 - a * a
    h = math.sqrt(max(h2, 0.0))
    mx = c1.x + a * (c2.x - c1.x) / d
    my = c1.y + a * (c2.y - c1.y) / d
    ux, uy = (c2.y - c1.y) / d, -(c2.x - c1.x) / d
    pts = [Point(mx + h * ux, my + h * uy)]
    if h > _EPS:
        pts.append(Point(mx - h * ux, my - h * uy))
    return pts


def _boundary_pair_point(sa, sb):
    """Lexicographically smallest boundary-boundary intersection point."""
    pts = []
    pa = None if isinstance(sa, Disk) else _boundary_segments(sa)
    pb = None if isinstance(sb, Disk) else _boundary_segments(sb)
    if pa is not None and pb is not None:
        for a1, a2 in pa:
            for b1, b2 in pb:
                pts += _seg_seg_points(a1, a2, b1, b2)
    elif pa is not None:
        for a1, a2 in pa:
            pts += _seg_circle_points(a1, a2, sb.center, float(sb.radius))
    elif pb is not None:
        for b1, b2 in pb:
            pts += _seg_circle_points(b1, b2, sa.center, float(sa.radius))
    else:
        pts = _circle_circle_points(sa.center, float(sa.radius), sb.center, float(sb.radius))
    if not pts:
        return None
    return min(pts, key=lambda p: (p.x, p.y))


def _point_in_shape(p, shape, tol=0.0):
    if isinstance(shape, Disk):
        return geometry.dist2(p, shape.center) <= (float(shape.radius) + tol) ** 2
    if isinstance(shape, PointShape):
        return geometry.dist2(p, shape.point) <= tol * tol
    cs = shape.corners()
    if geometry.point_in_polygon(p, cs):
        return True
    if tol > 0:
        return geometry.dist2_point_polygon(p, cs) <= tol * tol
    return False


def _strictly_inside(p, shape):
    if isinstance(shape, Disk):
        return geometry.dist2(p, shape.center) < (float(shape.radius) - _EPS) ** 2
    cs = shape.corners()
    if not geometry.point_in_polygon(p, cs):
        return False
    return geometry.dist2_point_polygon(p, cs) > _EPS * _EPS and all(
        geometry.dist2_point_segment(p, cs[i], cs[(i + 1) % len(cs)]) > _EPS * _EPS
        for i in range(len(cs))
    )


def _segment_in_polygon(p, q, corners):
    n = len(corners)
    for i in range(n):
        a, b = corners[i], corners[(i + 1) % n]
        for pt in _seg_seg_points(p, q, a, b):
            # transversal crossings disqualify; touching at the segment ends
            # or running along the boundary is fine
            if (
                geometry.dist2(pt, p) > _EPS * _EPS
                and geometry.dist2(pt, q) > _EPS * _EPS
                and geometry.dist2_point_segment(pt, a, b) <= _EPS * _EPS
                and geometry.orient(a, b, p) * geometry.orient(a, b, q) < 0
            ):
                return False
    mid = Point((p.x + q.x) / 2, (p.y + q.y) / 2)
    return _point_in_shape(mid, SimplePolygon(tuple(corners)), tol=_EPS)


# ---------------------------------------------------------------------------
# the planar object instance


@dataclass
class PlanarObjectInstance:
    graph: WeightedGraph
    objects: tuple  # GraphObject
    k: object = math.inf
    X: tuple = ()
    F: tuple = ()
    classification: tuple = ()  # per object: 'fat' | 'disk' | 'long'
    tau: dict = field(default_factory=dict)  # object index -> vertex (fat/disk)
    r: float = 0.0
    points: dict = field(default_factory=dict)  # vertex -> (x, y) plane point
    pendant: frozenset = frozenset()  # symbolic vertices without a plane point
    catalog: object = None  # LongObjectCatalog after the long reduction
    _steiner: object = None

    @property
    def terminals(self):
        return tuple(i for i, o in enumerate(self.objects) if o.is_terminal)

    def steiner(self) -> ObjectSteinerInstance:
        if self._steiner is None:
            self._steiner = graph_instance(
                self.graph, self.objects, k=self.k, X=self.X, F=self.F
            )
        return self._steiner

    def replace(self, **kw):
        data = dict(
            graph=self.graph,
            objects=self.objects,
            k=self.k,
            X=self.X,
            F=self.F,
            classification=self.classification,
            tau=dict(self.tau),
            r=self.r,
            points=self.points,
            pendant=self.pendant,
            catalog=self.catalog,
        )
        data.update(kw)
        return PlanarObjectInstance(**data)


def geo_to_planar(inst: ObjectSteinerInstance, alpha, metric="l2") -> PlanarObjectInstance:
    """Translate a geometric instance into a planar object instance.

    Builds the arrangement-style graph (boundary vertices, disk centers, one
    crossing vertex per boundary pair, per-fat spokes, center-to-contained
    edges), planarizes by subdividing all crossings, subdivides at disk
    boundaries and then once more on every edge, and emits one graph object
    per input object: balls of a common radius for disks (recentered by a
    pendant when smaller), qualifying-edge vertex sets for fat objects.
    The optimum and the whole touch relation are preserved exactly.
    """
    rep = geometry.validate_assumption_G(inst.objects, alpha)
    if not rep.ok:
        raise ValueError(f"input violates the fat-or-disk assumption: {rep.violations}")
    for a, b in itertools.combinations(inst.terminals, 2):
        if b in inst.adj[a]:
            raise ValueError("terminals must be pairwise disjoint (preprocess first)")

    fats = sorted(i for i, c in rep.classification.items() if c == "fat")
    disks = sorted(i for i, c in rep.classification.items() if c == "disk")

    def length(p, q):
        if metric == "l1":
            return abs(p.x - q.x) + abs(p.y - q.y)
        return math.hypot(p.x - q.x, p.y - q.y)

    points = []
    pindex = {}

    def vid(p):
        key = (round(p.x, 9), round(p.y, 9))
        if key not in pindex:
            pindex[key] = len(points)
            points.append(Point(float(p.x), float(p.y)))
        return pindex[key]

    # step 1: base vertices
    corner_vids = {}
    for f in fats:
        corner_vids[f] = [vid(c) for c in inst.objects[f].shape.corners()]
    center_vids = {d: vid(inst.objects[d].shape.center) for d in disks}
    for a, b in itertools.combinations(range(inst.n), 2):
        if b in inst.adj[a]:
            p = _boundary_pair_point(inst.objects[a].shape, inst.objects[b].shape)
            if p is not None:
                vid(p)
    base_points = list(points)

    # step 1: base segments, owners = fat objects whose object set follows them
    segments = {}  # (vid_a, vid_b) sorted -> owner set

    def add_segment(p, q, owners=frozenset()):
        a, b = vid(p), vid(q)
        if a == b:
            return
        key = (a, b) if a < b else (b, a)
        segments.setdefault(key, set()).update(owners)

    for f in fats:
        shape = inst.objects[f].shape
        cs = shape.corners()
        n = len(cs)
        for i in range(n):
            add_segment(cs[i], cs[(i + 1) % n], {f})
        s_f = cs[0]
        for b in cs[1:]:
            owners = {f} if _segment_in_polygon(b, s_f, cs) else frozenset()
            add_segment(b, s_f, owners)
        for p in base_points:
            if _strictly_inside(p, shape):
                for b in cs:
                    if _segment_in_polygon(p, b, cs):
                        add_segment(p, b, {f})
                        break
    for d in disks:
        c = inst.objects[d].shape.center
        rr = float(inst.objects[d].shape.radius)
        for p in base_points:
            if geometry.dist2(Point(float(p.x), float(p.y)), c) <= (rr + _EPS) ** 2:
                add_segment(c, p)

    # step 2: planarize.  Collect every split point on every segment.
    seg_list = [(points[a], points[b], a, b, frozenset(own)) for (a, b), own in segments.items()]
    cut_points = [set() for _ in seg_list]
    for i in range(len(seg_list)):
        p1, p2 = seg_list[i][0], seg_list[i][1]
        for j in range(i + 1, len(seg_list)):
            q1, q2 = seg_list[j][0], seg_list[j][1]
            for pt in _seg_seg_points(p1, p2, q1, q2):
                v = vid(pt)
                cut_points[i].add(v)
                cut_points[j].add(v)
        for d in disks:
            c = inst.objects[d].shape.center
            rr = float(inst.objects[d].shape.radius)
            for pt in _seg_circle_points(p1, p2, c, rr):
                cut_points[i].add(vid(pt))
    # vertices that happen to lie on a segment also subdivide it
    for i, (p1, p2, a, b, _own) in enumerate(seg_list):
        for v, p in enumerate(points):
            if v in (a, b):
                continue
            if geometry.dist2_point_segment(p, p1, p2) <= _EPS * _EPS:
                cut_points[i].add(v)

    vertex_owner = {}
    edge_set = {}

    def note_owner(v, owners):
        if owners:
            vertex_owner.setdefault(v, set()).update(owners)

    for (p1, p2, a, b, owners), cuts in zip(seg_list, cut_points):
        chain = [a] + sorted(
            cuts - {a, b},
            key=lambda v: geometry.dist2(points[v], p1),
        ) + [b]
        for u, v in zip(chain, chain[1:]):
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            w = length(points[u], points[v])
            edge_set[key] = min(edge_set.get(key, math.inf), w)
            note_owner(u, owners)
            note_owner(v, owners)

    # final subdivision: one midpoint per edge, half weight on each side
    subdivision = set()
    final_edges = []
    for (u, v), w in sorted(edge_set.items()):
        p = Point((points[u].x + points[v].x) / 2, (points[u].y + points[v].y) / 2)
        mid = vid(p)
        subdivision.add(mid)
        owners = set(vertex_owner.get(u, set())) & set(vertex_owner.get(v, set()))
        note_owner(mid, owners)
        final_edges.append((u, mid, w / 2))
        final_edges.append((mid, v, w / 2))

    # step 3: objects
    r_common = max(float(inst.objects[d].shape.radius) for d in disks) if disks else 4 * alpha
    r_eff = r_common * (1 + 1e-9) + 1e-12
    pendants = []
    n_vertices = len(points)

    def new_pendant():
        nonlocal n_vertices
        v = n_vertices
        n_vertices += 1
        pendants.append(v)
        return v

    ball_center = {}
    for d in disks:
        rr = float(inst.objects[d].shape.radius)
        c_vid = center_vids[d]
        if rr < r_common or any(ball_center.get(e) == c_vid for e in disks):
            cp = new_pendant()
            final_edges.append((c_vid, cp, r_common - rr))
            ball_center[d] = cp
        else:
            ball_center[d] = c_vid

    fat_tau = {}
    fat_sets = {}
    for f in fats:
        vs = {v for v, own in vertex_owner.items() if f in own}
        if not vs:
            raise AssertionError(f"fat object {f} produced no vertices")
        tp = new_pendant()
        final_edges.append((min(vs), tp, 0.0))
        fat_tau[f] = tp
        fat_sets[f] = vs | {tp}

    g = WeightedGraph(n_vertices, final_edges)

    objects = []
    classification = []
    tau = {}
    for i, o in enumerate(inst.objects):
        if i in rep.classification and rep.classification[i] == "disk":
            dist = g.dijkstra(ball_center[i])
            ball = frozenset(v for v in range(n_vertices) if dist[v] <= r_eff)
            objects.append(GraphObject(ball, o.weight, o.is_terminal))
            classification.append("disk")
            tau[i] = ball_center[i]
        else:
            objects.append(GraphObject(frozenset(fat_sets[i]), o.weight, o.is_terminal))
            classification.append("fat")
            tau[i] = fat_tau[i]
    if len(set(tau.values())) != len(tau):
        raise AssertionError("representative vertices are not injective")

    return PlanarObjectInstance(
        graph=g,
        objects=tuple(objects),
        k=math.inf,
        X=tuple(inst.X),
        F=tuple(inst.F),
        classification=tuple(classification),
        tau=tau,
        r=r_eff,
        points={v: (p.x, p.y) for v, p in enumerate(points)},
        pendant=frozenset(pendants),
    )


def geo_pipeline(inst: ObjectSteinerInstance, alpha, metric="l2"):
    """Terminal-independence preprocessing followed by the planar translation."""
    indep, info = make_terminals_independent(inst)
    return geo_to_planar(indep, alpha, metric=metric), info


# ---------------------------------------------------------------------------
# assumption validators


def tau_for_solution(pinst: PlanarObjectInstance, sol_indices):
    """Injective representatives for the given solution objects: the stored
    map for fat/disk objects, private vertices for long objects."""
    tau = {}
    used = set()
    for i in sorted(sol_indices):
        if pinst.classification[i] != "long":
            v = pinst.tau[i]
            if v in used or v not in pinst.objects[i].vertices:
                return None
            tau[i] = v
            used.add(v)
    others = {}
    for i in sorted(sol_indices):
        for v in pinst.objects[i].vertices:
            others.setdefault(v, set()).add(i)
    for i in sorted(sol_indices):
        if pinst.classification[i] == "long":
            cands = [
                v
                for v in sorted(pinst.objects[i].vertices)
                if v not in used and others.get(v, set()) == {i}
            ]
            if not cands:
                return None
            tau[i] = cands[0]
            used.add(cands[0])
    return tau


def _object_distance(g: WeightedGraph, vs_a, vs_b) -> float:
    dist = g.dijkstra(tuple(sorted(vs_a)))
    return min(dist[v] for v in vs_b)


def validate_assumption_P(pinst: PlanarObjectInstance, candidate, alpha):
    """Check the fat/disk structural assumption for a candidate solution.

    Returns (ok, report_lines).  Checks the representative injection, disk
    objects being exact balls of the common radius >= 4*alpha, fat weak
    diameters <= alpha, and the fat-count packing bound on 4*alpha balls.
    """
    sol = sorted(set(candidate.chosen) | set(pinst.terminals))
    report = []
    g = pinst.graph
    if any(pinst.classification[i] == "long" for i in sol):
        report.append("solution contains long objects (use the long-object check)")
    tau = tau_for_solution(pinst, sol)
    if tau is None:
        report.append("no injective representative assignment exists")
    else:
        for i in sol:
            if tau[i] not in pinst.objects[i].vertices:
                report.append(f"tau({i}) is not a vertex of the object")
    if pinst.r < 4 * alpha - 1e-9:
        report.append(f"common radius {pinst.r} is below 4*alpha")
    tol = 1e-6 * (1 + abs(pinst.r))
    for i in sol:
        if pinst.classification[i] == "disk":
            dist = g.dijkstra(pinst.tau[i])
            ball = frozenset(v for v in range(g.n) if dist[v] <= pinst.r)
            if ball != pinst.objects[i].vertices:
                report.append(f"object {i} is not the ball of radius r around its center")
        elif pinst.classification[i] == "fat":
            vs = sorted(pinst.objects[i].vertices)
            diam = max(g.dijkstra(vs[0])[v] for v in vs)
            for u in vs:
                du = g.dijkstra(u)
                diam = max(diam, max(du[v] for v in vs))
            if diam > alpha + tol:
                report.append(f"fat object {i} has weak diameter {diam:.4f} > alpha")
    fat_sets = [
        (i, pinst.objects[i].vertices) for i in sol if pinst.classification[i] == "fat"
    ]
    bound = 1000 * alpha * alpha
    for v in range(g.n):
        dist = g.dijkstra(v)
        cnt = sum(1 for _, vs in fat_sets if min(dist[u] for u in vs) <= 4 * alpha + tol)
        if cnt > bound:
            report.append(f"ball around vertex {v} meets {cnt} fat objects > {bound}")
            break
    return (not report), report


def validate_assumption_PL(pinst: PlanarObjectInstance, candidate, alpha):
    """The long-object variant: the fat/disk checks plus long-object
    disjointness and the near-object fat-count bound."""
    sol = sorted(set(candidate.chosen) | set(pinst.terminals))
    report = []
    g = pinst.graph
    tau = tau_for_solution(pinst, sol)
    if tau is None:
        report.append("no injective representative assignment exists")
    if pinst.r < 4 * alpha - 1e-9:
        report.append(f"common radius {pinst.r} is below 4*alpha")
    tol = 1e-6 * (1 + abs(pinst.r))
    longs = [i for i in sol if pinst.classification[i] == "long"]
    for i in longs:
        for j in sol:
            if j != i and pinst.objects[i].vertices & pinst.objects[j].vertices:
                report.append(f"long object {i} overlaps object {j}")
    for i in sol:
        if pinst.classification[i] == "disk":
            dist = g.dijkstra(pinst.tau[i])
            ball = frozenset(v for v in range(g.n) if dist[v] <= pinst.r)
            if ball != pinst.objects[i].vertices:
                report.append(f"object {i} is not the ball of radius r around its center")
        elif pinst.classification[i] == "fat":
            vs = sorted(pinst.objects[i].vertices)
            diam = 0.0
            for u in vs:
                du = g.dijkstra(u)
                diam = max(diam, max(du[v] for v in vs))
            if diam > alpha + tol:
                report.append(f"fat object {i} has weak diameter {diam:.4f} > alpha")
    fat_sets = [
        (i, pinst.objects[i].vertices) for i in sol if pinst.classification[i] == "fat"
    ]
    bound = 1000 * alpha * alpha
    for v in range(g.n):
        dist = g.dijkstra(v)
        cnt = sum(1 for _, vs in fat_sets if min(dist[u] for u in vs) <= 4 * alpha + tol)
        if cnt > bound:
            report.append(f"ball around vertex {v} meets {cnt} fat objects > {bound}")
            break
    for i in sol:
        if pinst.classification[i] in ("long", "fat"):
            dist = g.dijkstra(tuple(sorted(pinst.objects[i].vertices)))
            cnt = sum(
                1
                for j, vs in fat_sets
                if j != i and min(dist[u] for u in vs) <= alpha + tol
            )
            if cnt > bound:
                report.append(f"object {i} has {cnt} fat objects within distance alpha")
    return (not report), report


# ---------------------------------------------------------------------------
# long-object reduction


@dataclass
class CatalogEntry:
    x: int
    y: int
    psi: tuple  # object indices of the cheapest covering chain
    path: tuple  # vertex path from x to y inside the chain's vertices
    cover: tuple  # minimum-weight subset of psi covering the path
    cost: object


class LongObjectCatalog:
    """Cheapest covered paths between vertex pairs, with lazily expanded
    subpath entries (pair, start, end)."""

    def __init__(self, pinst: PlanarObjectInstance):
        self.pinst = pinst
        self.entries = {}
        self._sub_cache = {}
        self._build()

    def _build(self):
        pinst = self.pinst
        g = pinst.graph
        osi = pinst.steiner()
        containing = [[] for _ in range(g.n)]
        for i, o in enumerate(pinst.objects):
            for v in o.vertices:
                containing[v].append(i)
        for x in range(g.n):
            if not containing[x]:
                continue
            # node-weighted Dijkstra over the touching graph from A_x
            dist = {}
            prev = {}
            heap = []
            for o in containing[x]:
                dist[o] = pinst.objects[o].weight
                heapq.heappush(heap, (dist[o], o, None))
            settled = {}
            while heap:
                d, o, pr = heapq.heappop(heap)
                if o in settled:
                    continue
                settled[o] = d
                prev[o] = pr
                for q in sorted(osi.adj[o]):
                    nd = d + pinst.objects[q].weight
                    if q not in settled and nd < dist.get(q, math.inf):
                        dist[q] = nd
                        heapq.heappush(heap, (nd, q, o))
            for y in range(x + 1, g.n):
                if not containing[y]:
                    continue
                best = None
                for o in containing[y]:
                    if o in settled and (best is None or settled[o] < settled[best]):
                        best = o
                if best is None:
                    continue
                chain = []
                cur = best
                while cur is not None:
                    chain.append(cur)
                    cur = prev[cur]
                chain.reverse()
                allowed = set()
                for o in chain:
                    allowed |= pinst.objects[o].vertices
                path = self._bfs_path(x, y, allowed)
                if path is None:
                    continue
                cover = self._min_cover(tuple(path), tuple(chain))
                self.entries[(x, y)] = CatalogEntry(
                    x, y, tuple(chain), tuple(path), cover[1], cover[0]
                )

    def _bfs_path(self, x, y, allowed):
        if x not in allowed or y not in allowed:
            return None
        prev = {x: None}
        queue = [x]
        while queue:
            nxt = []
            for u in queue:
                for v in sorted(self.pinst.graph.adj[u]):
                    if v in allowed and v not in prev:
                        prev[v] = u
                        nxt.append(v)
            queue = nxt
            if y in prev:
                break
        if y not in prev:
            return None
        path = [y]
        while path[-1] != x:
            path.append(prev[path[-1]])
        return path[::-1]

    def _min_cover(self, path_vertices, universe):
        """Minimum-weight subfamily of `universe` covering the vertices."""
        key = (path_vertices, universe)
        if key in self._sub_cache:
            return self._sub_cache[key]
        objs = self.pinst.objects
        need = set(path_vertices)
        cands = [o for o in universe if objs[o].vertices & need]
        best = [math.inf, None]

        def rec(remaining, chosen, weight):
            if weight >= best[0]:
                return
            if not remaining:
                best[0], best[1] = weight, tuple(sorted(chosen))
                return
            v = min(remaining)
            for o in cands:
                if o not in chosen and v in objs[o].vertices:
                    rec(remaining - objs[o].vertices, chosen + [o], weight + objs[o].weight)

        rec(frozenset(need), [], 0)
        out = (best[0], best[1])
        self._sub_cache[key] = out
        return out

    def subpath_entry(self, x, y, i, j):
        """Long-object data for the subpath path[i..j] of the pair (x, y)."""
        e = self.entries[(x, y)]
        sub = e.path[i : j + 1]
        cost, cover = self._min_cover(tuple(sub), e.psi)
        return tuple(sub), cover, cost

    def materialize_all(self, limit=20000):
        """All distinct subpath long objects (min weight per vertex set)."""
        seen = {}
        count = 0
        for (x, y), e in sorted(self.entries.items()):
            L = len(e.path)
            for i in range(L):
                for j in range(i, L):
                    count += 1
                    if count > limit:
                        raise ValueError("catalog too large to materialize")
                    sub, cover, cost = self.subpath_entry(x, y, i, j)
                    key = frozenset(sub)
                    if key not in seen or cost < seen[key][0]:
                        seen[key] = (cost, sub, cover, (x, y, i, j))
        return [
            dict(cost=cost, path=sub, cover=cover, source=src)
            for key, (cost, sub, cover, src) in sorted(
                seen.items(), key=lambda kv: (sorted(kv[0]), kv[1][0])
            )
        ]


def long_reduction(pinst: PlanarObjectInstance, alpha, materialize=True, limit=20000):
    """Append subpath long objects and set the cardinality budget to 8|T|.

    The optimum is unchanged: a long object can always be replaced by its
    covering set, and chains of the original solution can be replaced by
    long objects within the budget.
    """
    osi = pinst.steiner()
    terms = pinst.terminals
    for a, b in itertools.combinations(terms, 2):
        da = {a}
        stack = [a]
        while stack:
            u = stack.pop()
            for v in osi.adj[u]:
                if v not in da:
                    da.add(v)
                    stack.append(v)
        if b not in da:
            raise ValueError("terminal pair cannot be connected: instance infeasible")
    catalog = LongObjectCatalog(pinst)
    objects = list(pinst.objects)
    classification = list(pinst.classification)
    meta = []
    if materialize:
        for entry in catalog.materialize_all(limit=limit):
            objects.append(GraphObject(frozenset(entry["path"]), entry["cost"], False))
            classification.append("long")
            meta.append(entry)
    out = pinst.replace(
        objects=tuple(objects),
        classification=tuple(classification),
        k=8 * len(terms),
        catalog=catalog,
        _steiner=None,
    )
    out.long_meta = meta
    return out


def replace_long_objects(reduced: PlanarObjectInstance, original: PlanarObjectInstance, chosen):
    """Map a reduced-instance solution back: swap each selected long object
    for its covering set of original objects."""
    n_orig = len(original.objects)
    out = set()
    for i in chosen:
        if i < n_orig:
            out.add(i)
        else:
            entry = reduced.long_meta[i - n_orig]
            out.update(entry["cover"])
    return tuple(sorted(out))
