"""Instance enumeration shared by the test modules."""

from __future__ import annotations

import itertools
import random

import networkx as nx

from sgflow.sgraph import Edge, SignedGraph, build


def atlas(max_n: int, max_m: int, min_n: int = 1, connected: bool = True, no_isolated: bool = False):
    """Unlabelled simple graphs from the networkx atlas with vertices 0..n-1."""
    for h in nx.graph_atlas_g():
        n, m = h.number_of_nodes(), h.number_of_edges()
        if n < min_n or n > max_n or m > max_m:
            continue
        if connected and (n == 0 or not nx.is_connected(h)):
            continue
        if no_isolated and any(d == 0 for _, d in h.degree()):
            continue
        yield build(n, [(u, w, "+") for u, w in sorted(h.edges())])


def with_signs(g: SignedGraph, signs) -> SignedGraph:
    return g.replace(edges={eid: Edge(e.u, e.w, s) for (eid, e), s in zip(sorted(g.edges.items()), signs)})


def all_signatures(g: SignedGraph):
    for signs in itertools.product((1, -1), repeat=g.num_edges):
        yield with_signs(g, signs)


def switching_representatives(g: SignedGraph):
    """One signature per switching class: spanning-forest edges kept positive."""
    seen = set()
    forest = []
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for eid, e in sorted(g.edges.items()):
        a, b = find(e.u), find(e.w)
        if a != b:
            parent[a] = b
            forest.append(eid)
            seen.add(eid)
    free = [eid for eid in sorted(g.edges) if eid not in seen]
    for signs in itertools.product((1, -1), repeat=len(free)):
        chosen = dict(zip(free, signs))
        yield g.replace(edges={eid: Edge(e.u, e.w, chosen.get(eid, 1)) for eid, e in g.edges.items()})


def small_multigraphs(max_n: int, max_m: int, loops: bool = True, connected: bool = True):
    """Loopy multigraphs on up to ``max_n`` vertices, up to vertex relabelling by sorting only."""
    for n in range(1, max_n + 1):
        slots = [(u, w) for u in range(n) for w in range(u, n) if loops or u != w]
        for m in range(0, max_m + 1):
            for combo in itertools.combinations_with_replacement(slots, m):
                g = build(n, [(u, w, "+") for u, w in combo])
                if connected and not g.is_connected():
                    continue
                yield g


def random_signed(rng: random.Random, n: int, m: int, negprob: float = 0.4, loops: bool = True) -> SignedGraph:
    """Connected random multigraph; loops allowed when ``loops``."""
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
    while len(pairs) < m:
        u, w = rng.randrange(n), rng.randrange(n)
        if u == w and not loops:
            continue
        pairs.append((u, w))
    rng.shuffle(pairs)
    return build(n, [(u, w, -1 if rng.random() < negprob else 1) for u, w in pairs])


def regular_multigraphs(n: int, d: int, loops: bool = True, connected: bool = True):
    """Connected d-regular multigraphs on n vertices, every isomorphism class at least once.

    Labellings are pruned to those where vertex 0 has the most loops and the
    other vertices are sorted by (multiplicity to 0, loops), descending.
    """
    slots = [(u, w) for u in range(n) for w in range(u, n)]
    need = [d] * n
    mult: dict[tuple[int, int], int] = {}

    def canonical_so_far(u, w):
        if u == 0 and w >= 2:
            return mult.get((0, w - 1), 0) >= mult.get((0, w), 0)
        if u == w and u >= 1:
            lw = mult.get((u, u), 0)
            if lw > mult.get((0, 0), 0):
                return False
            if u >= 2 and mult.get((0, u - 1), 0) == mult.get((0, u), 0):
                return mult.get((u - 1, u - 1), 0) >= lw
        return True

    def rec(i):
        if i == len(slots):
            if not connected or _connected(n, mult):
                yield build(n, [(u, w, "+") for (u, w), k in sorted(mult.items()) for _ in range(k)])
            return
        u, w = slots[i]
        top = (need[u] // 2 if loops else 0) if u == w else min(need[u], need[w])
        last_of_row = i + 1 == len(slots) or slots[i + 1][0] != u
        for k in range(top, -1, -1):
            spent = 2 * k if u == w else k
            need[u] -= spent if u == w else k
            if u != w:
                need[w] -= k
            if k:
                mult[(u, w)] = k
            if not (last_of_row and need[u]) and canonical_so_far(u, w):
                yield from rec(i + 1)
            mult.pop((u, w), None)
            need[u] += spent if u == w else k
            if u != w:
                need[w] += k

    yield from rec(0)


def _connected(n: int, mult) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, w in mult:
        parent[find(u)] = find(w)
    return len({find(v) for v in range(n)}) <= 1
