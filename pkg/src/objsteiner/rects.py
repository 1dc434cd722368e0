"""Vertex cover on cubic graphs -> restricted set cover -> almost-square
rectangle Steiner instances.

The rectangle construction places terminal points on two diagonal
staircases and one near-square rectangle per set, corners confined to thin
bands so that every rectangle contains the origin and covers exactly its
set's points.  Coordinates are Fractions, so incidence is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class CubicGraph:
    n: int
    edges: tuple  # sorted (u, v) pairs, 0-based

    def __post_init__(self):
        deg = [0] * self.n
        seen = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < v < self.n):
                raise ValueError("edges must be simple and sorted")
            if (u, v) in seen:
                raise ValueError("parallel edge")
            seen.add((u, v))
            deg[u] += 1
            deg[v] += 1
        if any(d != 3 for d in deg):
            raise ValueError("graph is not 3-regular")


def min_vertex_cover_size(g: CubicGraph) -> int:
    for c in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), c):
            s = set(combo)
            if all(u in s or v in s for u, v in g.edges):
                return c
    raise AssertionError("unreachable")


@dataclass
class Special3SCInstance:
    """Restricted set cover: universe A+W+X+Y+Z with the five-set pattern
    per t and every A-element in exactly two sets."""

    n: int  # |A|
    m: int  # |W| = |X| = |Y| = |Z|
    family: list  # list of frozensets of universe labels
    patterns: list = field(default_factory=list)  # per t: (i, j, k) with i<j<k

    @property
    def universe(self):
        out = [f"a{t}" for t in range(1, self.n + 1)]
        for grp in "wxyz":
            out += [f"{grp}{t}" for t in range(1, self.m + 1)]
        return out

    def validate(self):
        if 2 * self.n != 3 * self.m:
            raise ValueError("need 2n = 3m")
        if len(self.family) != 5 * self.m:
            raise ValueError("family must contain exactly 5m sets")
        for t in range(1, self.n + 1):
            cnt = sum(1 for s in self.family if f"a{t}" in s)
            if cnt != 2:
                raise ValueError(f"a{t} occurs in {cnt} sets, expected 2")
        for t, (i, j, k) in enumerate(self.patterns, start=1):
            if not (1 <= i < j < k <= self.n):
                raise ValueError(f"bad index triple for t={t}")
            expect = [
                frozenset({f"a{i}", f"w{t}"}),
                frozenset({f"w{t}", f"x{t}"}),
                frozenset({f"a{j}", f"x{t}", f"y{t}"}),
                frozenset({f"y{t}", f"z{t}"}),
                frozenset({f"a{k}", f"z{t}"}),
            ]
            for s in expect:
                if s not in self.family:
                    raise ValueError(f"missing pattern set {sorted(s)}")


def vc3_to_special3sc(g: CubicGraph) -> Special3SCInstance:
    """Five sets per vertex, with A indexed by the edges at that vertex.

    Minimum set cover equals 2m + minimum vertex cover: covered vertices
    contribute their three a-sets, uncovered ones the two filler sets.
    """
    m = g.n
    n = len(g.edges)
    edge_id = {e: idx + 1 for idx, e in enumerate(sorted(g.edges))}
    inst = Special3SCInstance(n=n, m=m, family=[])
    for t in range(1, m + 1):
        v = t - 1
        incident = sorted(edge_id[e] for e in g.edges if v in e)
        if len(incident) != 3:
            raise ValueError("graph is not 3-regular")
        i, j, k = incident
        inst.patterns.append((i, j, k))
        inst.family += [
            frozenset({f"a{i}", f"w{t}"}),
            frozenset({f"w{t}", f"x{t}"}),
            frozenset({f"a{j}", f"x{t}", f"y{t}"}),
            frozenset({f"y{t}", f"z{t}"}),
            frozenset({f"a{k}", f"z{t}"}),
        ]
    inst.validate()
    return inst


def cover_from_vertex_cover(inst: Special3SCInstance, cover_vertices) -> list:
    """The canonical cover of size 2m + |cover| induced by a vertex cover."""
    chosen = []
    for t, (i, j, k) in enumerate(inst.patterns, start=1):
        if (t - 1) in cover_vertices:
            chosen += [
                frozenset({f"a{i}", f"w{t}"}),
                frozenset({f"a{j}", f"x{t}", f"y{t}"}),
                frozenset({f"a{k}", f"z{t}"}),
            ]
        else:
            chosen += [frozenset({f"w{t}", f"x{t}"}), frozenset({f"y{t}", f"z{t}"})]
    return chosen


def min_set_cover_size(universe, family) -> int:
    """Exact minimum set cover via 0/1 integer programming."""
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp

    family = list(family)
    idx = {u: i for i, u in enumerate(universe)}
    A = np.zeros((len(universe), len(family)))
    for j, s in enumerate(family):
        for u in s:
            A[idx[u], j] = 1.0
    res = milp(
        c=np.ones(len(family)),
        constraints=LinearConstraint(A, lb=np.ones(len(universe)), ub=np.inf),
        integrality=np.ones(len(family)),
        bounds=Bounds(0, 1),
    )
    if not res.success:
        raise RuntimeError("set cover MILP failed")
    return round(res.fun)


# ---------------------------------------------------------------------------
# rectangles


@dataclass(frozen=True)
class Rect:
    x1: Fraction
    y1: Fraction
    x2: Fraction
    y2: Fraction

    def contains(self, px, py) -> bool:
        return self.x1 <= px <= self.x2 and self.y1 <= py <= self.y2

    def intersects(self, other) -> bool:
        return (
            self.x1 <= other.x2
            and other.x1 <= self.x2
            and self.y1 <= other.y2
            and other.y1 <= self.y2
        )


@dataclass
class RectInstance:
    epsilon: Fraction
    delta: Fraction
    terminals: list  # (label, (px, py))
    rects: list  # (setindex, Rect)
    scale: Fraction = Fraction(1)

    def incidence(self):
        """point label -> set of rectangle indices containing it."""
        out = {}
        for label, (px, py) in self.terminals:
            out[label] = {ri for ri, (_, r) in enumerate(self.rects) if r.contains(px, py)}
        return out


def _rank(label) -> int:
    grp, t = label[0], int(label[1:])
    return {"w": 1, "x": 2, "y": 3, "z": 4}[grp] + 4 * (t - 1)


def special3sc_to_rects(inst: Special3SCInstance, epsilon=Fraction(1, 10)) -> RectInstance:
    """Realize the cover instance geometrically.

    A-points sit on the staircase (1 + i*delta, i*delta - 1): moving the
    right edge up to 1 + i*delta and the bottom edge up to i*delta - 1
    admits exactly the i-th of them.  W/X/Y/Z points sit on the opposite
    staircase with ranks consecutive per t, so a corner window spanning a
    rank interval admits exactly the sets' consecutive members.  Every
    rectangle contains the origin; a final uniform scaling brings all side
    lengths into [1, 1 + epsilon].
    """
    inst.validate()
    epsilon = Fraction(epsilon)
    n = inst.n
    delta = epsilon / (20 * n * n)

    terminals = []
    for i in range(1, n + 1):
        terminals.append((f"a{i}", (1 + i * delta, i * delta - 1)))
    for t in range(1, inst.m + 1):
        for grp in "wxyz":
            r = _rank(f"{grp}{t}")
            terminals.append((f"{grp}{t}", (r * delta - 1, r * delta + 1)))

    rects = []
    for si, s in enumerate(inst.family):
        a_members = sorted(int(u[1:]) for u in s if u.startswith("a"))
        b_ranks = sorted(_rank(u) for u in s if not u.startswith("a"))
        if b_ranks != list(range(b_ranks[0], b_ranks[0] + len(b_ranks))):
            raise ValueError("set's staircase members must be rank-consecutive")
        x_min = b_ranks[0] * delta - 1
        y_max = b_ranks[-1] * delta + 1
        if a_members:
            (ai,) = a_members
            x_max = 1 + ai * delta
            y_min = ai * delta - 1
        else:
            x_max = Fraction(1)
            y_min = Fraction(-1)
        rects.append((si, Rect(x_min, y_min, x_max, y_max)))

    # uniform scaling so every side length lands in [1, 1 + epsilon]
    min_side = min(min(r.x2 - r.x1, r.y2 - r.y1) for _, r in rects)
    scale = 1 / min_side
    rects = [
        (si, Rect(r.x1 * scale, r.y1 * scale, r.x2 * scale, r.y2 * scale)) for si, r in rects
    ]
    terminals = [(lbl, (px * scale, py * scale)) for lbl, (px, py) in terminals]
    out = RectInstance(epsilon, delta, terminals, rects, scale)
    for _, r in out.rects:
        for side in (r.x2 - r.x1, r.y2 - r.y1):
            if not 1 <= side <= 1 + epsilon:
                raise AssertionError(f"side {side} outside [1, 1+epsilon]")
    return out


def rect_steiner_instance(ri: RectInstance):
    """View as an abstract Steiner instance: unit-weight rectangle objects,
    point terminals (adjacency by containment / rectangle overlap)."""
    import math as _math

    from .graphs import ObjectSteinerInstance

    objects = [lbl for lbl, _ in ri.terminals] + [f"rect{si}" for si, _ in ri.rects]
    nt = len(ri.terminals)
    adj = [set() for _ in objects]
    for i, (_, (px, py)) in enumerate(ri.terminals):
        for j, (_, r) in enumerate(ri.rects):
            if r.contains(px, py):
                adj[i].add(nt + j)
                adj[nt + j].add(i)
    for a in range(len(ri.rects)):
        for b in range(a + 1, len(ri.rects)):
            if ri.rects[a][1].intersects(ri.rects[b][1]):
                adj[nt + a].add(nt + b)
                adj[nt + b].add(nt + a)
    return ObjectSteinerInstance(
        objects=tuple(objects),
        weights=tuple([1] * len(objects)),
        terminals=tuple(range(nt)),
        adj=tuple(frozenset(s) for s in adj),
        k=_math.inf,
    )


# ---------------------------------------------------------------------------
# cubic graph enumeration (test support)


def enumerate_cubic_graphs(n: int):
    """All 3-regular simple graphs on n labeled vertices, deduplicated by a
    cheap spectral invariant (adequate at this size)."""
    import numpy as np

    if n % 2:
        return []
    all_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    target = 3 * n // 2
    reps = {}

    def invariant(edges):
        A = np.zeros((n, n))
        for u, v in edges:
            A[u, v] = A[v, u] = 1.0
        ev = np.round(np.sort(np.linalg.eigvalsh(A)), 6)
        tri = round(float(np.trace(np.linalg.matrix_power(A, 3))) / 6)
        quad = round(float(np.trace(np.linalg.matrix_power(A, 4))))
        return (tuple(ev), tri, quad)

    def extend(start, edges, deg):
        if len(edges) == target:
            key = invariant(edges)
            if key not in reps:
                reps[key] = CubicGraph(n, tuple(sorted(edges)))
            return
        # find the lowest-index vertex still deficient, branch on its partner
        v = min(i for i in range(n) if deg[i] < 3)
        for u in range(v + 1, n):
            if deg[u] < 3 and (v, u) not in edges:
                edges.add((v, u))
                deg[v] += 1
                deg[u] += 1
                extend(start, edges, deg)
                edges.discard((v, u))
                deg[v] -= 1
                deg[u] -= 1

    extend(0, set(), [0] * n)
    return list(reps.values())
