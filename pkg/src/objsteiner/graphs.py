"""Edge-weighted graphs, vertex-set objects, and their touching structure."""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field

from . import geometry


class WeightedGraph:
    """Immutable undirected graph with non-negative edge lengths."""

    def __init__(self, n, edges):
        self.n = n
        adj = [dict() for _ in range(n)]
        canon = []
        for u, v, w in edges:
            if u == v:
                raise ValueError("self-loops not supported")
            if w < 0:
                raise ValueError("edge lengths must be non-negative")
            a, b = (u, v) if u < v else (v, u)
            if b >= n or a < 0:
                raise ValueError("edge endpoint out of range")
            if b in adj[a]:
                w = min(w, adj[a][b])
            adj[a][b] = w
            adj[b][a] = w
        for a in range(n):
            for b, w in adj[a].items():
                if a < b:
                    canon.append((a, b, w))
        canon.sort()
        self.edges = tuple(canon)
        self.adj = tuple(adj)
        self._dist_cache = {}

    @classmethod
    def from_pairs(cls, n, pairs, length=1.0):
        return cls(n, [(u, v, length) for u, v in pairs])

    def dijkstra(self, source):
        """Distances from a vertex (cached) or from an iterable of vertices."""
        if isinstance(source, int):
            if source in self._dist_cache:
                return self._dist_cache[source]
            sources = (source,)
        else:
            sources = tuple(source)
        dist = [math.inf] * self.n
        heap = []
        for s in sources:
            dist[s] = 0.0
            heap.append((0.0, s))
        heapq.heapify(heap)
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, w in self.adj[u].items():
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        if isinstance(source, int):
            self._dist_cache[source] = dist
        return dist

    def shortest_path(self, s, t, allowed=None):
        """Vertex list of a shortest s-t path, ties broken by vertex index.

        `allowed` restricts the search to an induced subgraph.
        """
        if allowed is not None and (s not in allowed or t not in allowed):
            return None
        dist = {s: 0.0}
        prev = {}
        heap = [(0.0, s)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist.get(u, math.inf):
                continue
            if u == t:
                break
            for v, w in sorted(self.adj[u].items()):
                if allowed is not None and v not in allowed:
                    continue
                nd = d + w
                if nd < dist.get(v, math.inf) - 1e-15:
                    dist[v] = nd
                    prev[v] = u
                    heapq.heappush(heap, (nd, v))
        if t not in dist:
            return None
        path = [t]
        while path[-1] != s:
            path.append(prev[path[-1]])
        return path[::-1]

    def connected_components(self, removed=frozenset()):
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s] or s in removed:
                continue
            comp = []
            stack = [s]
            seen[s] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in self.adj[u]:
                    if not seen[v] and v not in removed:
                        seen[v] = True
                        stack.append(v)
            comps.append(sorted(comp))
        return comps

    def degree(self, v):
        return len(self.adj[v])


@dataclass(frozen=True)
class GraphObject:
    """A connected set of vertices in a host graph."""

    vertices: frozenset
    weight: object = 1
    is_terminal: bool = False

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("object must be nonempty")
        if not self.weight > 0:
            raise ValueError("object weight must be strictly positive")


def induced_connected(g: WeightedGraph, vertices) -> bool:
    vs = set(vertices)
    start = next(iter(vs))
    stack = [start]
    seen = {start}
    while stack:
        u = stack.pop()
        for v in g.adj[u]:
            if v in vs and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen == vs


def touch(a: GraphObject, b: GraphObject, g: WeightedGraph) -> bool:
    """Objects touch when they share a vertex or an edge joins them."""
    if a.vertices & b.vertices:
        return True
    small, big = (a.vertices, b.vertices) if len(a.vertices) <= len(b.vertices) else (b.vertices, a.vertices)
    for u in small:
        for v in g.adj[u]:
            if v in big:
                return True
    return False


def touching_graph(objs, g: WeightedGraph):
    """Sorted index pairs of touching objects."""
    pairs = []
    objs = list(objs)
    for i in range(len(objs)):
        for j in range(i + 1, len(objs)):
            if touch(objs[i], objs[j], g):
                pairs.append((i, j))
    return tuple(pairs)


def dijkstra_ball(g: WeightedGraph, v, r) -> frozenset:
    """Closed ball of radius r around v in shortest-path distance."""
    if not 0 <= v < g.n:
        raise ValueError(f"unknown vertex {v}")
    if r < 0:
        raise ValueError("radius must be non-negative")
    dist = g.dijkstra(v)
    return frozenset(u for u in range(g.n) if dist[u] <= r)


def all_pairs_distances(g: WeightedGraph):
    return [g.dijkstra(v) for v in range(g.n)]


def has_unique_distances(g: WeightedGraph, rel_tol=1e-12):
    vals = []
    for v in range(g.n):
        d = g.dijkstra(v)
        for u in range(v + 1, g.n):
            if math.isfinite(d[u]):
                vals.append(d[u])
    vals.sort()
    scale = max(vals) if vals else 1.0
    return all(b - a > rel_tol * max(scale, 1.0) for a, b in zip(vals, vals[1:]))


def perturb_lengths(g: WeightedGraph, seed) -> WeightedGraph:
    """Multiplicative-style jitter making all pairwise distances distinct.

    Each edge gains an independent positive offset small enough that every
    shortest-path distance moves by less than 1e-9 times the smallest
    positive edge length; deterministic in the seed.
    """
    positive = [w for _, _, w in g.edges if w > 0]
    base = min(positive) if positive else 1.0
    m = max(len(g.edges), 1)
    for attempt in range(32):
        rng = random.Random(f"perturb-{seed}-{attempt}")
        eps = 1e-9 * base / (m + 1)
        edges = [(u, v, w + rng.random() * eps) for u, v, w in g.edges]
        g2 = WeightedGraph(g.n, edges)
        if has_unique_distances(g2):
            return g2
    raise RuntimeError("failed to find a distance-separating perturbation")


def is_critically_connected(g: WeightedGraph, Y) -> bool:
    """Whether removing any non-Y vertex splits Y across components."""
    Y = set(Y)
    if len(Y) < 2:
        raise ValueError("Y must have at least two vertices")
    if len(g.connected_components()) != 1:
        raise ValueError("graph must be connected")
    for x in range(g.n):
        if x in Y:
            continue
        comps = g.connected_components(removed=frozenset([x]))
        with_y = sum(1 for c in comps if Y.intersection(c))
        if with_y < 2:
            return False
    return True


def check_deg3_bound(g: WeightedGraph, T):
    """Count degree>=3 vertices against the critical-connectivity bound.

    Returns (count, bound, holds) with bound = 3(|T|-2) - |T_deg2|.
    """
    T = set(T)
    if not is_critically_connected(g, T):
        raise ValueError("T is not critically connected in g")
    count = sum(1 for v in range(g.n) if g.degree(v) >= 3)
    t_eq2 = sum(1 for v in T if g.degree(v) == 2)
    bound = 3 * (len(T) - 2) - t_eq2
    return count, bound, count <= bound


# ---------------------------------------------------------------------------
# abstract Steiner instances over a touch/intersection structure


@dataclass
class ObjectSteinerInstance:
    """Node-weighted Steiner instance over an object adjacency structure.

    Covers both geometric instances (objects with pairwise intersection
    adjacency) and planar-graph instances (vertex-set objects with touching
    adjacency).  `X` and `F` describe the extended variant: F is a forest
    whose vertices are the distinguished terminals X.
    """

    objects: tuple
    weights: tuple
    terminals: tuple  # sorted indices
    adj: tuple  # index -> frozenset of adjacent indices
    k: object = math.inf
    X: tuple = ()
    F: tuple = ()  # forest edges over object indices in X
    graph: WeightedGraph = None

    def __post_init__(self):
        term = set(self.terminals)
        if not set(self.X) <= term:
            raise ValueError("X must be a subset of the terminals")
        xs = set(self.X)
        parent = {x: x for x in xs}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, v in self.F:
            if u not in xs or v not in xs:
                raise ValueError("F must have vertex set X")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise ValueError("F must be a forest")
            parent[ru] = rv

    @property
    def n(self):
        return len(self.objects)

    @property
    def nonterminals(self):
        term = set(self.terminals)
        return tuple(i for i in range(self.n) if i not in term)

    def replace(self, **kw):
        data = dict(
            objects=self.objects,
            weights=self.weights,
            terminals=self.terminals,
            adj=self.adj,
            k=self.k,
            X=self.X,
            F=self.F,
            graph=self.graph,
        )
        data.update(kw)
        return ObjectSteinerInstance(**data)


def geometric_instance(objects, k=math.inf, X=(), F=()) -> ObjectSteinerInstance:
    """Instance over geometric objects with intersection adjacency."""
    objects = tuple(objects)
    n = len(objects)
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if geometry.intersects(objects[i], objects[j]):
                adj[i].add(j)
                adj[j].add(i)
    return ObjectSteinerInstance(
        objects=objects,
        weights=tuple(o.weight for o in objects),
        terminals=tuple(sorted(i for i, o in enumerate(objects) if o.is_terminal)),
        adj=tuple(frozenset(s) for s in adj),
        k=k,
        X=tuple(X),
        F=tuple(F),
    )


def graph_instance(g: WeightedGraph, objects, k=math.inf, X=(), F=()) -> ObjectSteinerInstance:
    """Instance over vertex-set objects with touching adjacency."""
    objects = tuple(objects)
    for o in objects:
        if not induced_connected(g, o.vertices):
            raise ValueError("object vertex sets must induce connected subgraphs")
    n = len(objects)
    adj = [set() for _ in range(n)]
    for i, j in touching_graph(objects, g):
        adj[i].add(j)
        adj[j].add(i)
    return ObjectSteinerInstance(
        objects=objects,
        weights=tuple(o.weight for o in objects),
        terminals=tuple(sorted(i for i, o in enumerate(objects) if o.is_terminal)),
        adj=tuple(frozenset(s) for s in adj),
        k=k,
        X=tuple(X),
        F=tuple(F),
        graph=g,
    )
