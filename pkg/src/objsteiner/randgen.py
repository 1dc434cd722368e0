"""Seeded random instance generators used by tests, demos, and the bench
harness."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .geometry import AxisSquare, Disk, GeometricObject, Point, SimplePolygon
from .graphs import GraphObject, WeightedGraph, dijkstra_ball, geometric_instance, graph_instance, perturb_lengths
from .pipeline import PlanarObjectInstance


def random_fat_polygon(rng, cx, cy):
    """Regular-ish polygon with diameter <= 2 containing a unit-diameter disk."""
    n = rng.choice([6, 7, 8])
    rad = rng.uniform(0.7, 1.0)
    rot = rng.uniform(0, 2 * math.pi)
    pts = tuple(
        Point(cx + rad * math.cos(rot + 2 * math.pi * i / n), cy + rad * math.sin(rot + 2 * math.pi * i / n))
        for i in range(n)
    )
    return SimplePolygon(pts)


def random_geometric_instance(
    seed,
    n_objects=8,
    n_terminals=3,
    alpha=8,
    window=7.0,
    kinds=("disk", "square", "polygon"),
    weight_style="int",
    connected_terminals=True,
):
    """Random instance satisfying the fat-or-disk assumption at the given
    alpha.  Objects land in a window sized so that typical instances need a
    couple of connector objects."""
    rng = random.Random(f"geo-{seed}")
    objs = []
    for i in range(n_objects):
        cx, cy = rng.uniform(0, window), rng.uniform(0, window)
        kind = rng.choice(kinds)
        if kind == "disk":
            shape = Disk(Point(cx, cy), rng.uniform(1.0, 1.6))
        elif kind == "square":
            s = rng.uniform(1.0, 1.4)
            shape = AxisSquare(Point(cx - s / 2, cy - s / 2), s)
        else:
            shape = random_fat_polygon(rng, cx, cy)
        if weight_style == "int":
            w = rng.randint(1, 9)
        elif weight_style == "fraction":
            w = Fraction(rng.randint(1, 19), rng.randint(1, 4))
        else:
            w = rng.uniform(0.5, 5.0)
        objs.append(GeometricObject(shape, w, False))
    term_idx = rng.sample(range(n_objects), min(n_terminals, n_objects))
    objs = [GeometricObject(o.shape, o.weight, i in term_idx) for i, o in enumerate(objs)]
    inst = geometric_instance(objs)
    if connected_terminals:
        # keep only instances where the terminals can be connected at all
        reach = set()
        stack = [inst.terminals[0]] if inst.terminals else []
        while stack:
            u = stack.pop()
            if u in reach:
                continue
            reach.add(u)
            stack.extend(inst.adj[u])
        if not set(inst.terminals) <= reach:
            return None
    return inst


def iter_geometric_instances(first_seed, count, **kw):
    """Yield `count` feasible random instances, skipping infeasible draws."""
    seed = first_seed
    produced = 0
    while produced < count:
        inst = random_geometric_instance(seed, **kw)
        seed += 1
        if inst is None:
            continue
        produced += 1
        yield inst


def random_planar_instance(
    seed, n_vertices=10, n_objects=5, n_terminals=3, alpha=1.0, extra_edges=3
):
    """Small abstract planar-object instance with fat/disk classification.

    The graph is a random tree plus a few extra edges with lengths near 1;
    fat objects are small balls (weak diameter <= alpha), disks are balls of
    a common radius r = 4*alpha around distinct centers.  Lengths are
    perturbed so distances are unique.
    """
    rng = random.Random(f"planar-{seed}")
    edges = []
    for v in range(1, n_vertices):
        u = rng.randrange(v)
        edges.append((u, v, rng.uniform(0.6, 1.4)))
    for _ in range(extra_edges):
        u, v = rng.sample(range(n_vertices), 2)
        edges.append((u, v, rng.uniform(0.6, 1.4)))
    g = perturb_lengths(WeightedGraph(n_vertices, edges), seed)

    r = 4 * alpha
    objs = []
    classification = []
    tau = {}
    centers = rng.sample(range(n_vertices), min(n_objects, n_vertices))
    n_disks = rng.randint(0, max(0, len(centers) - 2))
    for i, c in enumerate(centers):
        if i < n_disks:
            vs = dijkstra_ball(g, c, r)
            classification.append("disk")
        else:
            dist = g.dijkstra(c)
            radius = rng.uniform(0.0, alpha / 2)
            vs = frozenset(v for v in range(n_vertices) if dist[v] <= radius)
            classification.append("fat")
        w = rng.randint(1, 9)
        objs.append(GraphObject(vs, w, False))
        tau[i] = c
    if len({tuple(sorted(o.vertices)) for o in objs}) < len(objs):
        return None
    if len(set(tau.values())) < len(tau):
        return None
    term_idx = rng.sample(range(len(objs)), min(n_terminals, len(objs)))
    objs = [GraphObject(o.vertices, o.weight, i in term_idx) for i, o in enumerate(objs)]
    pinst = PlanarObjectInstance(
        graph=g,
        objects=tuple(objs),
        k=math.inf,
        classification=tuple(classification),
        tau=tau,
        r=r,
    )
    osi = pinst.steiner()
    reach = set()
    stack = [osi.terminals[0]] if osi.terminals else []
    while stack:
        u = stack.pop()
        if u in reach:
            continue
        reach.add(u)
        stack.extend(osi.adj[u])
    if not set(osi.terminals) <= reach:
        return None
    return pinst


def iter_planar_instances(first_seed, count, **kw):
    seed = first_seed
    produced = 0
    while produced < count:
        inst = random_planar_instance(seed, **kw)
        seed += 1
        if inst is None:
            continue
        produced += 1
        yield inst
