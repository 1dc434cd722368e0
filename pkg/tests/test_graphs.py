import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from objsteiner import graphs as gr


def path_graph(n, length=1.0):
    return gr.WeightedGraph(n, [(i, i + 1, length) for i in range(n - 1)])


def test_touch_modes():
    g = path_graph(4)
    a = gr.GraphObject(frozenset({0, 1}))
    b = gr.GraphObject(frozenset({1, 2}))
    c = gr.GraphObject(frozenset({3}))
    d = gr.GraphObject(frozenset({2}))
    assert gr.touch(a, b, g)  # shared vertex
    assert gr.touch(c, d, g)  # connecting edge
    assert not gr.touch(a, c, g)


def test_touching_graph_matches_pairwise_oracle():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(4, 9)
        edges = [(rng.randrange(v), v, 1.0) for v in range(1, n)]
        g = gr.WeightedGraph(n, edges)
        objs = []
        for _ in range(rng.randint(2, 5)):
            v0 = rng.randrange(n)
            vs = {v0}
            for _ in range(rng.randint(0, 2)):
                frontier = [u for v in vs for u in g.adj[v] if u not in vs]
                if frontier:
                    vs.add(rng.choice(sorted(frontier)))
            objs.append(gr.GraphObject(frozenset(vs)))
        pairs = set(gr.touching_graph(objs, g))
        for i in range(len(objs)):
            for j in range(i + 1, len(objs)):
                assert ((i, j) in pairs) == gr.touch(objs[i], objs[j], g)


def test_dijkstra_ball():
    g = path_graph(3)
    assert gr.dijkstra_ball(g, 0, 0) == frozenset({0})
    assert gr.dijkstra_ball(g, 0, 1) == frozenset({0, 1})
    with pytest.raises(ValueError):
        gr.dijkstra_ball(g, 9, 1)


def test_ball_monotone_in_radius():
    rng = random.Random(7)
    for _ in range(15):
        n = rng.randint(4, 10)
        edges = [(rng.randrange(v), v, rng.uniform(0.2, 2)) for v in range(1, n)]
        g = gr.WeightedGraph(n, edges)
        v = rng.randrange(n)
        r1 = rng.uniform(0, 3)
        r2 = r1 + rng.uniform(0, 2)
        assert gr.dijkstra_ball(g, v, r1) <= gr.dijkstra_ball(g, v, r2)


def test_ball_equals_floyd_warshall_oracle():
    rng = random.Random(19)
    n = 8
    edges = [(rng.randrange(v), v, rng.uniform(0.2, 2)) for v in range(1, n)]
    for _ in range(4):
        u, v = rng.sample(range(n), 2)
        edges.append((u, v, rng.uniform(0.2, 2)))
    g = gr.WeightedGraph(n, edges)
    dist = [[math.inf] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0.0
    for u, v, w in g.edges:
        dist[u][v] = min(dist[u][v], w)
        dist[v][u] = min(dist[v][u], w)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]
    for v in range(n):
        for r in (0.5, 1.5, 3.0):
            assert gr.dijkstra_ball(g, v, r) == frozenset(
                u for u in range(n) if dist[v][u] <= r
            )


def test_perturb_lengths():
    # symmetric square graph: distances collide before perturbation
    g = gr.WeightedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])
    assert not gr.has_unique_distances(g)
    g2 = gr.perturb_lengths(g, seed=0)
    assert gr.has_unique_distances(g2)
    base = min(w for _, _, w in g.edges if w > 0)
    for (u1, v1, w1), (u2, v2, w2) in zip(g.edges, g2.edges):
        assert (u1, v1) == (u2, v2)
        assert 0 <= w2 - w1 < 1e-9 * base
    # distances move by less than 1e-9 * min positive length
    for u in range(4):
        d1, d2 = g.dijkstra(u), g2.dijkstra(u)
        assert all(abs(a - b) < 1e-9 * base for a, b in zip(d1, d2))
    # already-unique stays unique; zero edges become positive
    g3 = gr.perturb_lengths(g2, seed=1)
    assert gr.has_unique_distances(g3)
    gz = gr.WeightedGraph(3, [(0, 1, 0.0), (1, 2, 1.0)])
    gz2 = gr.perturb_lengths(gz, seed=2)
    assert all(w > 0 for _, _, w in gz2.edges)


def test_perturb_deterministic():
    g = gr.WeightedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)])
    a = gr.perturb_lengths(g, seed=5)
    b = gr.perturb_lengths(g, seed=5)
    assert a.edges == b.edges


def test_critically_connected():
    p = path_graph(4)
    assert gr.is_critically_connected(p, [0, 3])
    star = gr.WeightedGraph(5, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)])
    # pendant non-Y leaf: removing an internal vertex isolates nothing of Y
    pend = gr.WeightedGraph(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (1, 4, 1)])
    assert not gr.is_critically_connected(pend, [0, 3])
    with pytest.raises(ValueError):
        gr.is_critically_connected(p, [0])


def test_deg3_bound_cases():
    p = path_graph(5)
    count, bound, holds = gr.check_deg3_bound(p, [0, 4])
    assert (count, bound, holds) == (0, 0, True)
    star = gr.WeightedGraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    count, bound, holds = gr.check_deg3_bound(star, [1, 2, 3])
    assert (count, bound, holds) == (1, 3, True)
    # triangle with three legs: three branch vertices, bound is tight
    fig = gr.WeightedGraph(
        6, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 3, 1), (1, 4, 1), (2, 5, 1)]
    )
    count, bound, holds = gr.check_deg3_bound(fig, [3, 4, 5])
    assert (count, bound, holds) == (3, 3, True)
    with pytest.raises(ValueError):
        gr.check_deg3_bound(pathological := pend_graph(), [0, 3])


def pend_graph():
    return gr.WeightedGraph(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (1, 4, 1)])


def test_instance_validation():
    g = path_graph(3)
    objs = [
        gr.GraphObject(frozenset({0}), 1, True),
        gr.GraphObject(frozenset({2}), 1, True),
        gr.GraphObject(frozenset({1}), 2, False),
    ]
    inst = gr.graph_instance(g, objs)
    assert inst.terminals == (0, 1)
    with pytest.raises(ValueError):
        gr.graph_instance(g, [gr.GraphObject(frozenset({0, 2}))])  # disconnected
    with pytest.raises(ValueError):
        gr.graph_instance(g, objs, X=(0, 1), F=((0, 1), (1, 0)))  # cycle in F
    with pytest.raises(ValueError):
        gr.graph_instance(g, objs, X=(2,), F=())  # X not a terminal
