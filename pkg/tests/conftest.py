import math
import random

import pytest

from objsteiner.graphs import GraphObject, WeightedGraph, dijkstra_ball, perturb_lengths
from objsteiner.pipeline import PlanarObjectInstance


def dense_planar_instance(seed):
    """Planar-object instance with heavily overlapping ball objects."""
    rng = random.Random(f"dense-{seed}")
    n = rng.randint(10, 14)
    edges = [(rng.randrange(v), v, rng.uniform(0.5, 1.5)) for v in range(1, n)]
    for _ in range(rng.randint(2, 6)):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v, rng.uniform(0.5, 1.5)))
    g = perturb_lengths(WeightedGraph(n, edges), seed)
    alpha = 1.0
    r = 4 * alpha
    centers = rng.sample(range(n), min(rng.randint(3, 7), n))
    objs, classification, tau = [], [], {}
    n_disks = rng.randint(1, max(1, len(centers) - 1))
    for i, c in enumerate(centers):
        if i < n_disks:
            vs = dijkstra_ball(g, c, r)
            classification.append("disk")
        else:
            dist = g.dijkstra(c)
            vs = frozenset(v for v in range(n) if dist[v] <= rng.uniform(0, alpha / 2))
            classification.append("fat")
        objs.append(GraphObject(vs, rng.randint(1, 9), False))
        tau[i] = c
    if len({tuple(sorted(o.vertices)) for o in objs}) < len(objs):
        return None
    t = rng.sample(range(len(objs)), min(rng.randint(2, 4), len(objs)))
    objs = [GraphObject(o.vertices, o.weight, i in t) for i, o in enumerate(objs)]
    return PlanarObjectInstance(
        graph=g,
        objects=tuple(objs),
        k=math.inf,
        classification=tuple(classification),
        tau=tau,
        r=r,
    )


def iter_dense_planar(count, first_seed=1):
    seed = first_seed
    made = 0
    while made < count and seed < first_seed + 100 * count:
        inst = dense_planar_instance(seed)
        seed += 1
        if inst is None:
            continue
        made += 1
        yield inst
