"""Ground-truth optimizers for node-weighted Steiner over object adjacency.

Both solvers return a Solution, or None when the terminals cannot be
connected at all.  Weights may be ints, Fractions, or floats; comparisons
and sums are exact for rational inputs.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass

from .graphs import ObjectSteinerInstance


class CapExceeded(Exception):
    """Raised when an instance exceeds a solver's hard size cap."""


@dataclass(frozen=True)
class Solution:
    chosen: tuple  # sorted indices of selected non-terminal objects
    total_weight: object
    cardinality: int

    @staticmethod
    def of(inst, chosen):
        chosen = tuple(sorted(chosen))
        w = sum((inst.weights[i] for i in chosen), 0)
        return Solution(chosen, w, len(chosen))


def _merged_terminal_groups(inst: ObjectSteinerInstance):
    """Group terminals by F-components of X; singletons for the rest."""
    groups = {t: {t} for t in inst.terminals}
    parent = {t: t for t in inst.terminals}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in inst.F:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    merged = {}
    for t in inst.terminals:
        merged.setdefault(find(t), set()).add(t)
    return [frozenset(s) for _, s in sorted(merged.items())]


def _adjacency_masks(inst: ObjectSteinerInstance):
    masks = []
    for i in range(inst.n):
        m = 0
        for j in inst.adj[i]:
            m |= 1 << j
        masks.append(m)
    for u, v in inst.F:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _mask_connected(active: int, masks) -> bool:
    if active == 0:
        return True
    reach = active & (-active)
    while True:
        grow = reach
        probe = reach
        while probe:
            low = probe & (-probe)
            grow |= masks[low.bit_length() - 1] & active
            probe ^= low
        if grow == reach:
            return reach == active
        reach = grow


def is_feasible(inst: ObjectSteinerInstance, chosen) -> bool:
    """Whether touchgraph(chosen + terminals) plus F is connected."""
    active = 0
    for i in set(chosen) | set(inst.terminals):
        active |= 1 << i
    return _mask_connected(active, _adjacency_masks(inst))


def brute_force_optimum(inst: ObjectSteinerInstance, cap: int = 20):
    """Exhaustive minimum-weight feasible subset of the non-terminals.

    Enumerates by increasing cardinality with a sorted-weight prune; ties
    broken by (weight, cardinality, lexicographic indices).  Refuses
    instances with more objects than `cap`.
    """
    if inst.n > cap:
        raise CapExceeded(f"{inst.n} objects exceeds brute-force cap {cap}")
    masks = _adjacency_masks(inst)
    term_mask = 0
    for t in inst.terminals:
        term_mask |= 1 << t
    nonterm = inst.nonterminals
    kmax = len(nonterm) if inst.k is math.inf else min(int(inst.k), len(nonterm))
    sorted_w = sorted(inst.weights[i] for i in nonterm)
    prefix = [0]
    for w in sorted_w:
        prefix.append(prefix[-1] + w)
    best = None  # (weight, cardinality, chosen)
    for c in range(kmax + 1):
        if best is not None and prefix[c] >= best[0]:
            break
        for combo in itertools.combinations(nonterm, c):
            active = term_mask
            for i in combo:
                active |= 1 << i
            if not _mask_connected(active, masks):
                continue
            w = sum((inst.weights[i] for i in combo), 0)
            key = (w, c, combo)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    return Solution(best[2], best[0], best[1])


def dreyfus_wagner(inst: ObjectSteinerInstance, mask_cap: int = 20):
    """Dynamic program over (object, terminal-subset) states.

    Terminal objects cost nothing to traverse; merging reuses the shared
    object's weight once.  The forest F is handled by contracting the
    F-components of X into super-terminals.  A finite cardinality budget k
    adds a third state dimension.
    """
    groups = _merged_terminal_groups(inst)
    t = len(groups)
    if t > mask_cap:
        raise CapExceeded(f"{t} terminal groups exceeds bitmask cap {mask_cap}")
    if t == 0:
        return Solution((), 0, 0)

    # nodes: contracted touching graph.  node 0..t-1 = groups, then nonterminals.
    nonterm = list(inst.nonterminals)
    node_members = [tuple(sorted(g)) for g in groups] + [(i,) for i in nonterm]
    nn = len(node_members)
    cost = [0] * t + [inst.weights[i] for i in nonterm]
    member_adj = []
    for mem in node_members:
        s = set()
        for i in mem:
            s |= inst.adj[i]
        member_adj.append(s)
    nbrs = [set() for _ in range(nn)]
    for a in range(nn):
        for b in range(a + 1, nn):
            if member_adj[a].intersection(node_members[b]) or member_adj[b].intersection(node_members[a]):
                nbrs[a].add(b)
                nbrs[b].add(a)

    track_card = inst.k is not math.inf
    kmax = min(int(inst.k), len(nonterm)) if track_card else len(nonterm)

    full = (1 << t) - 1
    INF = math.inf
    # dp[(node, mask, card)] = weight; card omitted (0) when not tracking
    dp = {}
    back = {}

    def state(v, m, c):
        return (v, m, c if track_card else 0)

    for ti in range(t):
        s = state(ti, 1 << ti, 0)
        dp[s] = 0
        back[s] = ("base",)

    order = sorted(range(1, full + 1), key=lambda m: bin(m).count("1"))
    for mask in order:
        # merge step
        sub = (mask - 1) & mask
        while sub:
            other = mask ^ sub
            if sub < other:
                for v in range(nn):
                    unit = 0 if v < t else 1
                    for c1 in range(kmax + 1):
                        s1 = state(v, sub, c1)
                        if s1 not in dp:
                            continue
                        for c2 in range(kmax + 1 - c1 + unit):
                            s2 = state(v, other, c2)
                            if s2 not in dp:
                                continue
                            c = c1 + c2 - unit
                            if c < 0 or c > kmax:
                                continue
                            w = dp[s1] + dp[s2] - cost[v]
                            s = state(v, mask, c)
                            if w < dp.get(s, INF):
                                dp[s] = w
                                back[s] = ("merge", sub, other, c1, c2)
                        if not track_card:
                            break
            sub = (sub - 1) & mask
        # grow step: Dijkstra over (node, card) within this mask
        heap = []
        for v in range(nn):
            for c in range(kmax + 1):
                s = state(v, mask, c)
                if s in dp:
                    heap.append((dp[s], v, c))
                if not track_card:
                    break
        heapq.heapify(heap)
        while heap:
            d, v, c = heapq.heappop(heap)
            if d > dp.get(state(v, mask, c), INF):
                continue
            for u in nbrs[v]:
                unit = 0 if u < t else 1
                cu = c + (unit if track_card else 0)
                if cu > kmax:
                    continue
                w = d + cost[u]
                s = state(u, mask, cu)
                if w < dp.get(s, INF):
                    dp[s] = w
                    back[s] = ("grow", v, c)
                    heapq.heappush(heap, (w, u, cu))

    best = None
    for v in range(nn):
        for c in range(kmax + 1):
            s = state(v, full, c)
            if s in dp and (best is None or dp[s] < dp[best]):
                best = s
            if not track_card:
                break
    if best is None:
        return None

    used = set()
    stack = [best]
    while stack:
        s = stack.pop()
        v, mask, c = s
        used.add(v)
        move = back[s]
        if move[0] == "merge":
            _, sub, other, c1, c2 = move
            stack.append(state(v, sub, c1))
            stack.append(state(v, other, c2))
        elif move[0] == "grow":
            _, u, cprev = move
            stack.append(state(u, mask, cprev))
    chosen = sorted(node_members[v][0] for v in used if v >= t)
    sol = Solution.of(inst, chosen)
    assert sol.total_weight == dp[best], "reconstruction mismatch"
    return sol


def enumerate_feasible(inst: ObjectSteinerInstance, cap: int = 20):
    """All feasible chosen-sets within the cardinality budget (test helper)."""
    if inst.n > cap:
        raise CapExceeded(f"{inst.n} objects exceeds enumeration cap {cap}")
    masks = _adjacency_masks(inst)
    term_mask = 0
    for t in inst.terminals:
        term_mask |= 1 << t
    nonterm = inst.nonterminals
    kmax = len(nonterm) if inst.k is math.inf else min(int(inst.k), len(nonterm))
    for c in range(kmax + 1):
        for combo in itertools.combinations(nonterm, c):
            active = term_mask
            for i in combo:
                active |= 1 << i
            if _mask_connected(active, masks):
                yield combo


def weakly_optimal_check(inst, candidate: Solution, alpha, cap: int = 20) -> bool:
    """Whether the candidate is no worse than any solution satisfying the
    long-object structural assumption (brute-force reference)."""
    from .pipeline import validate_assumption_PL

    if not is_feasible(inst.steiner() if hasattr(inst, "steiner") else inst, candidate.chosen):
        raise ValueError("candidate must be feasible")
    osi = inst.steiner() if hasattr(inst, "steiner") else inst
    best = None
    for combo in enumerate_feasible(osi, cap=cap):
        sol = Solution.of(osi, combo)
        ok, _ = validate_assumption_PL(inst, sol, alpha)
        if ok and (best is None or sol.total_weight < best):
            best = sol.total_weight
    if best is None:
        return True
    return candidate.total_weight <= best
