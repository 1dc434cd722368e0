"""Pairwise-disjoint path representations of overlapping solutions.

A solution's objects may overlap heavily; the separator machinery needs
disjoint connected pieces.  The representation W consists of shortest paths
inside solution objects (plus the long objects themselves), pairwise
vertex-disjoint, whose touching graph preserves the connectivity of the
solution's representative vertices.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field

from .graphs import GraphObject, WeightedGraph
from .pipeline import PlanarObjectInstance, tau_for_solution


@dataclass(frozen=True)
class RepMember:
    path: tuple  # ordered vertex path (shortest inside its zone)
    parent: int  # object index this member represents (pi value)

    @property
    def vertices(self):
        return frozenset(self.path)


@dataclass
class Representation:
    members: tuple  # RepMember, pairwise vertex-disjoint
    tau: dict  # object index -> representative vertex
    solution: tuple  # sorted object indices of S + T

    def pi(self, m: RepMember) -> int:
        return m.parent

    def preimage(self, obj_index) -> list:
        return [m for m in self.members if m.parent == obj_index]

    def covered(self) -> frozenset:
        out = set()
        for m in self.members:
            out |= m.vertices
        return frozenset(out)


# ---------------------------------------------------------------------------
# OBJ': shortest paths inside objects


class ObjPrime:
    """Lazily computed shortest paths inside each object's induced graph."""

    def __init__(self, pinst: PlanarObjectInstance):
        self.pinst = pinst
        self._cache = {}

    def shortest_path(self, obj_index, x, y):
        """Vertex tuple of the shortest x-y path within the object."""
        key = (obj_index, x)
        if key not in self._cache:
            vs = self.pinst.objects[obj_index].vertices
            g = self.pinst.graph
            dist = {x: 0.0}
            prev = {}
            heap = [(0.0, x)]
            while heap:
                d, u = heapq.heappop(heap)
                if d > dist.get(u, math.inf):
                    continue
                for v, w in sorted(g.adj[u].items()):
                    if v not in vs:
                        continue
                    nd = d + w
                    if nd < dist.get(v, math.inf) - 1e-15:
                        dist[v] = nd
                        prev[v] = u
                        heapq.heappush(heap, (nd, v))
            self._cache[key] = (dist, prev)
        dist, prev = self._cache[key]
        if y not in dist:
            return None
        path = [y]
        while path[-1] != x:
            path.append(prev[path[-1]])
        return tuple(path[::-1])

    def path_length(self, path):
        g = self.pinst.graph
        return sum(g.adj[u][v] for u, v in zip(path, path[1:]))

    def is_shortest_within(self, path, vertex_set):
        """Whether the path is a shortest path between its ends inside the
        induced graph on vertex_set."""
        if len(path) == 1:
            return path[0] in vertex_set
        if not set(path) <= set(vertex_set):
            return False
        g = self.pinst.graph
        x, y = path[0], path[-1]
        dist = {x: 0.0}
        heap = [(0.0, x)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist.get(u, math.inf):
                continue
            for v, w in g.adj[u].items():
                if v not in vertex_set:
                    continue
                nd = d + w
                if nd < dist.get(v, math.inf) - 1e-15:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        return y in dist and self.path_length(path) <= dist[y] + 1e-9


def build_obj_prime(pinst: PlanarObjectInstance) -> ObjPrime:
    return ObjPrime(pinst)


# ---------------------------------------------------------------------------
# spanning tree of objects


@dataclass
class ObjectSpanningTree:
    vertices: frozenset
    edges: tuple  # (u, v) vertex pairs
    important_edges: tuple
    important_vertices: frozenset


def spanning_tree_of_objects(pinst: PlanarObjectInstance, obj_indices, tau, root_vertex=None):
    """Depth-first spanning structure over a connected object family.

    Every representative vertex is included; every tree edge is witnessed by
    an object touching both endpoints or by a graph edge; the edge count is
    at most 3 per object plus the representative hookups.
    """
    objs = sorted(obj_indices)
    osi = pinst.steiner()
    g = pinst.graph
    if root_vertex is None:
        root_vertex = min(min(pinst.objects[i].vertices) for i in objs)

    # DFS over the touching graph, recording witness connectors per step
    start = min(
        (i for i in objs if root_vertex in pinst.objects[i].vertices),
        default=objs[0],
    )
    seen = {start}
    order = [(start, None)]
    stack = [start]
    while stack:
        u = stack.pop()
        for v in sorted(osi.adj[u]):
            if v in objs and v not in seen:
                seen.add(v)
                order.append((v, u))
                stack.append(v)
    if set(objs) - seen:
        raise ValueError("object family is not touching-connected")

    edges = set()
    vertices = set()

    def add_edge(u, v):
        if u != v:
            edges.add((u, v) if u < v else (v, u))
        vertices.update((u, v))

    def witness(a, b):
        """A contact between two touching objects: shared vertex or edge."""
        shared = pinst.objects[a].vertices & pinst.objects[b].vertices
        if shared:
            w = min(shared)
            return (w, w)
        best = None
        for u in sorted(pinst.objects[a].vertices):
            for v in sorted(g.adj[u]):
                if v in pinst.objects[b].vertices:
                    cand = (u, v)
                    if best is None or cand < best:
                        best = cand
        return best

    vertices.add(tau[start])
    for child, parent in order:
        if parent is None:
            continue
        u, v = witness(parent, child)
        add_edge(tau[parent], u)  # witnessed by the parent object
        if u != v:
            add_edge(u, v)  # a graph edge
        add_edge(v, tau[child])  # witnessed by the child object

    # trim to a spanning tree over the collected vertices
    vs = sorted(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    parent_uf = list(range(len(vs)))

    def find(a):
        while parent_uf[a] != a:
            parent_uf[a] = parent_uf[parent_uf[a]]
            a = parent_uf[a]
        return a

    tree_edges = []
    for u, v in sorted(edges):
        ru, rv = find(pos[u]), find(pos[v])
        if ru != rv:
            parent_uf[ru] = rv
            tree_edges.append((u, v))

    disk_sets = [
        pinst.objects[i].vertices
        for i in objs
        if pinst.classification[i] == "disk"
    ]
    important_edges = tuple(
        (u, v)
        for u, v in tree_edges
        if not any(u in ds and v in ds for ds in disk_sets)
    )
    important = set(tau[i] for i in objs)
    for u, v in important_edges:
        important.update((u, v))
    return ObjectSpanningTree(
        frozenset(vertices), tuple(tree_edges), important_edges, frozenset(important)
    )


# ---------------------------------------------------------------------------
# construction


class _Builder:
    def __init__(self, pinst, alpha, tau, sol):
        self.pinst = pinst
        self.alpha = alpha
        self.tau = tau
        self.sol = sol
        self.members = []
        self.covered = set()
        self.fat_tau_vertices = {
            tau[i]: i for i in sol if pinst.classification[i] == "fat"
        }
        self.disk_center = {
            i: tau[i] for i in sol if pinst.classification[i] == "disk"
        }

    # ---- membership bookkeeping

    def add_path(self, path, parent):
        """Add a path member, splitting out fat representative vertices so
        they stay singleton members (same parent)."""
        path = tuple(path)
        if not path:
            return
        assert not (set(path) & self.covered), "member overlaps existing cover"
        if self.pinst.classification[parent] == "disk":
            for piece in self._disk_pieces(path, parent):
                self._register(piece, parent)
        else:
            for piece in self._split_at_fat_taus(path):
                self._register(piece, parent)

    def _register(self, path, parent):
        self.members.append(RepMember(tuple(path), parent))
        self.covered.update(path)

    def _split_at_fat_taus(self, path):
        out = []
        cur = []
        for v in path:
            if v in self.fat_tau_vertices:
                if cur:
                    out.append(tuple(cur))
                    cur = []
                out.append((v,))
            else:
                cur.append(v)
        if cur:
            out.append(tuple(cur))
        return out

    def _disk_pieces(self, path, disk):
        """Split a within-disk path at the inner-ball boundary, chunk the
        annulus runs to length <= 3*alpha, then isolate fat representatives."""
        g = self.pinst.graph
        c = self.disk_center[disk]
        dist = g.dijkstra(c)
        inner = self.pinst.r - 3 * self.alpha

        def zone(v):
            return "inner" if dist[v] <= inner else "annulus"

        runs = []
        cur = [path[0]]
        for v in path[1:]:
            if zone(v) == zone(cur[-1]):
                cur.append(v)
            else:
                runs.append(cur)
                cur = [v]
        runs.append(cur)
        pieces = []
        for run in runs:
            if zone(run[0]) == "inner":
                pieces.append(tuple(run))
            else:
                pieces.extend(self._chunk(run, 3 * self.alpha))
        out = []
        for p in pieces:
            out.extend(self._split_at_fat_taus(p))
        return out

    def _chunk(self, run, max_len):
        g = self.pinst.graph
        out = []
        cur = [run[0]]
        ln = 0.0
        for u, v in zip(run, run[1:]):
            w = g.adj[u][v]
            if ln + w > max_len and len(cur) >= 1:
                out.append(tuple(cur))
                cur = [v]
                ln = 0.0
            else:
                cur.append(v)
                ln += w
        out.append(tuple(cur))
        return [p for p in out if p]

    # ---- component structure

    def component_of(self):
        """Union-find over members by touching."""
        g = self.pinst.graph
        n = len(self.members)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        vert_owner = {}
        for i, m in enumerate(self.members):
            for v in m.path:
                vert_owner[v] = i
        for i, m in enumerate(self.members):
            for v in m.path:
                for u in g.adj[v]:
                    j = vert_owner.get(u)
                    if j is not None and j != i:
                        ra, rb = find(i), find(j)
                        if ra != rb:
                            parent[ra] = rb
        comp = {}
        labels = {}
        for i in range(n):
            r = find(i)
            if r not in labels:
                labels[r] = len(labels)
            comp[i] = labels[r]
        return comp, vert_owner

    def comps_at(self, v, comp, vert_owner):
        """Components whose members contain or neighbour a vertex."""
        g = self.pinst.graph
        out = set()
        j = vert_owner.get(v)
        if j is not None:
            out.add(comp[j])
        for u in g.adj[v]:
            j = vert_owner.get(u)
            if j is not None:
                out.add(comp[j])
        return out

    def touched_components(self, obj_index, comp, vert_owner):
        """Components of the current members touched by the given object."""
        out = set()
        for v in self.pinst.objects[obj_index].vertices:
            out |= self.comps_at(v, comp, vert_owner)
        return out

    def anchor_component(self, obj_index, comp, vert_owner):
        """Component of the member covering the object's representative."""
        j = vert_owner.get(self.tau[obj_index])
        return None if j is None else comp[j]

    def route(self, obj_index, comp, vert_owner, source_comps, target_comps, anchor=None):
        """Shortest uncovered path inside the object from the frontier of
        `source_comps` (restricted to members of `anchor` when given, which
        keeps a disk's preimage connected) to the frontier of `target_comps`.
        """
        g = self.pinst.graph
        vs = self.pinst.objects[obj_index].vertices
        sources = set()
        for v in vs:
            if v in self.covered:
                continue
            if anchor is not None:
                if any(
                    vert_owner.get(u) is not None
                    and self.members[vert_owner[u]].parent == anchor
                    for u in g.adj[v]
                ):
                    sources.add(v)
            elif self.comps_at(v, comp, vert_owner) & source_comps:
                sources.add(v)

        def is_goal(v):
            return bool(self.comps_at(v, comp, vert_owner) & target_comps)

        dist = {v: 0.0 for v in sources}
        prev = {}
        heap = [(0.0, v) for v in sorted(sources)]
        heapq.heapify(heap)
        goal = None
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist.get(u, math.inf):
                continue
            if is_goal(u):
                goal = u
                break
            for v, w in sorted(g.adj[u].items()):
                if v not in vs or v in self.covered:
                    continue
                nd = d + w
                if nd < dist.get(v, math.inf) - 1e-15:
                    dist[v] = nd
                    prev[v] = u
                    heapq.heappush(heap, (nd, v))
        if goal is None:
            return None
        path = [goal]
        while path[-1] in prev:
            path.append(prev[path[-1]])
        return tuple(path[::-1])


def _containing_disk(pinst, sol, fat_index):
    for j in sol:
        if pinst.classification[j] == "disk" and pinst.objects[fat_index].vertices <= pinst.objects[j].vertices:
            return j
    return None


def construct_representation(pinst: PlanarObjectInstance, solution, alpha) -> Representation:
    """Build the disjoint representation of a solution.

    Connects disk interiors first (important vertices route to their nearest
    disk center), merges remaining components through disks and then fat
    objects, keeps fat representatives as singleton members, and finishes
    with the long objects themselves.
    """
    sol = tuple(sorted(set(getattr(solution, "chosen", solution)) | set(pinst.terminals)))
    tau = tau_for_solution(pinst, sol)
    if tau is None:
        raise ValueError("solution admits no injective representative map")
    g = pinst.graph
    osi = pinst.steiner()

    # component decomposition of the solution's touching graph
    comp_of = {}
    for i in sol:
        if i in comp_of:
            continue
        comp_id = len(set(comp_of.values()))
        stack = [i]
        comp_of[i] = comp_id
        while stack:
            u = stack.pop()
            for v in osi.adj[u]:
                if v in sol and v not in comp_of:
                    comp_of[v] = comp_id
                    stack.append(v)

    members = []
    tau_all = dict(tau)
    for cid in sorted(set(comp_of.values())):
        group = [i for i in sol if comp_of[i] == cid]
        members.extend(_construct_component(pinst, group, tau, alpha).members)
    rep = Representation(tuple(members), tau_all, sol)
    return rep


def _construct_component(pinst, group, tau, alpha):
    b = _Builder(pinst, alpha, tau, tuple(group))
    g = pinst.graph
    disks = [i for i in group if pinst.classification[i] == "disk"]
    fats = [i for i in group if pinst.classification[i] == "fat"]
    longs = [i for i in group if pinst.classification[i] == "long"]

    tree = spanning_tree_of_objects(pinst, group, tau)

    # step 1: connect tree vertices to their closest disk centers.  Along a
    # shortest path toward one's closest center the closest center never
    # changes, so a prefix stopping at covered territory stops at a member
    # of the same disk and each preimage grows connectedly.
    if disks:
        centers = {b.disk_center[d]: d for d in disks}
        eta = {}
        for v in range(g.n):
            best = None
            for c in sorted(centers):
                d = g.dijkstra(c)[v]
                if best is None or (d, c) < best:
                    best = (d, c)
            eta[v] = best[1]
        sigma = {v: g.dijkstra(eta[v])[v] for v in range(g.n)}
        for v in sorted(tree.vertices, key=lambda u: (sigma[u], u)):
            if sigma[v] > pinst.r:
                continue
            c = eta[v]
            path = list(_shortest_path_to(g, v, c))
            rho = []
            for u in path:
                if u in b.covered:
                    break
                rho.append(u)
            if rho:
                b.add_path(tuple(rho), centers[c])

    # long objects participate in the merge phases as members of W
    for i in sorted(longs):
        path = _path_order(pinst, i)
        b._register(path, i)

    # fat representatives enter as singletons; inside a disk they carry the
    # host's label and get wired into the host's preimage
    for f in sorted(fats):
        tv = tau[f]
        if tv in b.covered:
            continue
        host = _containing_disk(pinst, group, f)
        if host is None:
            b._register((tv,), f)
        else:
            b.add_path((tv,), host)
            comp, vert_owner = b.component_of()
            anchor_comp = b.anchor_component(host, comp, vert_owner)
            tv_comp = comp[vert_owner[tv]]
            if anchor_comp is not None and anchor_comp != tv_comp:
                path = b.route(host, comp, vert_owner, {tv_comp}, {anchor_comp}, anchor=host)
                if path:
                    b.add_path(path, host)

    # merge phases: disks first (anchored at their preimages), then fat
    # objects, then stitching through touching pairs
    guard = 0
    while guard < 20 * (len(group) + len(b.members) + 5):
        guard += 1
        comp, vert_owner = b.component_of()
        if len(set(comp.values())) <= 1:
            break
        progressed = False
        for d in sorted(disks):
            anchor_comp = b.anchor_component(d, comp, vert_owner)
            touched = b.touched_components(d, comp, vert_owner)
            others = touched - ({anchor_comp} if anchor_comp is not None else set())
            if anchor_comp is not None and others:
                path = b.route(d, comp, vert_owner, {anchor_comp}, others, anchor=d)
                if path:
                    b.add_path(path, d)
                    progressed = True
                    break
        if progressed:
            continue
        for f in sorted(fats):
            if _containing_disk(pinst, group, f) is not None:
                continue
            touched = b.touched_components(f, comp, vert_owner)
            if len(touched) >= 2:
                src = {min(touched)}
                path = b.route(f, comp, vert_owner, src, touched - src)
                if path:
                    b.add_path(path, f)
                    progressed = True
                    break
        if progressed:
            continue
        # stitch: extend one side of a touching pair whose anchors disagree
        stitched = False
        osi = pinst.steiner()
        for a in sorted(group):
            ca = b.anchor_component(a, comp, vert_owner)
            if ca is None:
                continue
            for other in sorted(osi.adj[a]):
                if other not in group:
                    continue
                cb = b.anchor_component(other, comp, vert_owner)
                if cb is None or cb == ca:
                    continue
                carrier, anchor = a, None
                if pinst.classification[a] == "disk":
                    anchor = a
                elif pinst.classification[a] == "fat":
                    host = _containing_disk(pinst, group, a)
                    if host is not None:
                        carrier, anchor = host, host
                        ca2 = b.anchor_component(host, comp, vert_owner)
                        if ca2 is not None:
                            ca = ca2
                path = b.route(carrier, comp, vert_owner, {ca}, {cb}, anchor=anchor)
                if path:
                    b.add_path(path, carrier)
                    stitched = True
                    break
            if stitched:
                break
        if not stitched:
            break
    return Representation(tuple(b.members), dict(tau), tuple(group))


def _shortest_path_to(g: WeightedGraph, v, c):
    """Walk from v to c along a shortest path, ties broken by vertex index."""
    dist = g.dijkstra(c)
    path = [v]
    cur = v
    while cur != c:
        cand = [u for u in sorted(g.adj[cur]) if abs(dist[u] + g.adj[cur][u] - dist[cur]) <= 1e-9]
        if not cand:
            cand = [min(sorted(g.adj[cur]), key=lambda u: dist[u])]
        cur = cand[0]
        path.append(cur)
    return tuple(path)


def _path_order(pinst, obj_index):
    """Recover the vertex order of a path-shaped object."""
    vs = pinst.objects[obj_index].vertices
    if len(vs) == 1:
        return (next(iter(vs)),)
    g = pinst.graph
    deg = {v: sum(1 for u in g.adj[v] if u in vs) for v in vs}
    ends = sorted(v for v in vs if deg[v] == 1)
    start = ends[0] if ends else min(vs)
    order = [start]
    seen = {start}
    while len(order) < len(vs):
        nxt = [u for u in sorted(g.adj[order[-1]]) if u in vs and u not in seen]
        if not nxt:
            # not a simple path; fall back to sorted vertices
            return tuple(sorted(vs))
        order.append(nxt[0])
        seen.add(nxt[0])
    return tuple(order)


# ---------------------------------------------------------------------------
# verification


def verify_representation(rep: Representation, solution, pinst: PlanarObjectInstance, alpha):
    """Check the eight representation properties independently.

    Returns {property_number: (ok, message)}.
    """
    sol = tuple(sorted(set(getattr(solution, "chosen", solution)) | set(pinst.terminals)))
    g = pinst.graph
    osi = pinst.steiner()
    op = build_obj_prime(pinst)
    out = {}

    # 1: terminal connectivity is preserved through the representation
    comp_sol = _components_of(osi, sol)
    comp_w = _member_components(pinst, rep.members)
    cover_union = {}
    for idx, grouped in comp_w.items():
        verts = set()
        for m in grouped:
            verts |= m.vertices
        cover_union[idx] = verts
    ok1, msg1 = True, "ok"
    terms = [t for t in pinst.terminals if t in sol]
    for t1, t2 in itertools.combinations(terms, 2):
        if comp_sol[t1] != comp_sol[t2]:
            continue
        hit = [
            idx
            for idx, verts in cover_union.items()
            if rep.tau[t1] in verts and rep.tau[t2] in verts
        ]
        if not hit:
            ok1, msg1 = False, f"terminals {t1},{t2} not covered by one component"
            break
    out[1] = (ok1, msg1)

    # 2: pairwise disjoint
    seen = {}
    ok2, msg2 = True, "ok"
    for i, m in enumerate(rep.members):
        for v in m.path:
            if v in seen:
                ok2, msg2 = False, f"members {seen[v]} and {i} share vertex {v}"
                break
            seen[v] = i
        if not ok2:
            break
    out[2] = (ok2, msg2)

    # 3: long members are the objects themselves
    ok3, msg3 = True, "ok"
    for m in rep.members:
        if pinst.classification[m.parent] == "long":
            if m.vertices != pinst.objects[m.parent].vertices:
                ok3, msg3 = False, f"long object {m.parent} not represented by itself"
                break
    out[3] = (ok3, msg3)

    # 4: fat members are shortest paths inside their object
    ok4, msg4 = True, "ok"
    for m in rep.members:
        if pinst.classification[m.parent] == "fat":
            if not op.is_shortest_within(m.path, pinst.objects[m.parent].vertices):
                ok4, msg4 = False, f"member {m.path} not shortest inside fat {m.parent}"
                break
    out[4] = (ok4, msg4)

    # 5: disk members are annulus paths of length <= 3*alpha or inner paths
    ok5, msg5 = True, "ok"
    for m in rep.members:
        if pinst.classification[m.parent] != "disk":
            continue
        c = rep.tau[m.parent]
        dist = g.dijkstra(c)
        inner_r = pinst.r - 3 * alpha
        zones = {("inner" if dist[v] <= inner_r else "annulus") for v in m.path}
        if len(zones) > 1:
            ok5, msg5 = False, f"member {m.path} straddles the inner-ball boundary"
            break
        ball = pinst.objects[m.parent].vertices
        if zones == {"annulus"}:
            annulus = frozenset(v for v in ball if dist[v] > inner_r)
            if op.path_length(m.path) > 3 * alpha + 1e-9:
                ok5, msg5 = False, f"annulus member longer than 3*alpha: {m.path}"
                break
            if not op.is_shortest_within(m.path, annulus):
                ok5, msg5 = False, f"member {m.path} not shortest in the annulus"
                break
        else:
            inner = frozenset(v for v in ball if dist[v] <= inner_r)
            if not op.is_shortest_within(m.path, inner):
                ok5, msg5 = False, f"member {m.path} not shortest in the inner ball"
                break
    out[5] = (ok5, msg5)

    # 6: disk preimages are connected and contain the center
    ok6, msg6 = True, "ok"
    for i in sol:
        if pinst.classification[i] != "disk":
            continue
        pre = rep.preimage(i)
        if not pre:
            ok6, msg6 = False, f"disk {i} has empty preimage"
            break
        verts = set()
        for m in pre:
            verts |= m.vertices
        if rep.tau[i] not in verts:
            ok6, msg6 = False, f"disk {i} preimage misses its center"
            break
        if len(_member_components(pinst, tuple(pre))) > 1:
            ok6, msg6 = False, f"disk {i} preimage is disconnected"
            break
    out[6] = (ok6, msg6)

    # 7: fat representative singletons are members
    ok7, msg7 = True, "ok"
    singleton_paths = {m.path for m in rep.members if len(m.path) == 1}
    for i in sol:
        if pinst.classification[i] == "fat" and (rep.tau[i],) not in singleton_paths:
            ok7, msg7 = False, f"fat {i}: representative singleton not in W"
            break
    out[7] = (ok7, msg7)

    # 8: fat objects inside disks have empty preimage
    ok8, msg8 = True, "ok"
    for i in sol:
        if pinst.classification[i] != "fat":
            continue
        if _containing_disk(pinst, sol, i) is not None and rep.preimage(i):
            ok8, msg8 = False, f"fat {i} inside a disk but has preimage members"
            break
    out[8] = (ok8, msg8)
    return out


def _components_of(osi, sol):
    comp = {}
    for i in sol:
        if i in comp:
            continue
        cid = len(set(comp.values()))
        stack = [i]
        comp[i] = cid
        while stack:
            u = stack.pop()
            for v in osi.adj[u]:
                if v in sol and v not in comp:
                    comp[v] = cid
                    stack.append(v)
    return comp


def _member_components(pinst, members):
    g = pinst.graph
    n = len(members)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner = {}
    for i, m in enumerate(members):
        for v in m.path:
            owner[v] = i
    for i, m in enumerate(members):
        for v in m.path:
            for u in g.adj[v]:
                j = owner.get(u)
                if j is not None and j != i:
                    ra, rb = find(i), find(j)
                    if ra != rb:
                        parent[ra] = rb
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(members[i])
    return comps
