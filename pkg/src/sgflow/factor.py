"""f-factors: Tutte's criterion, a matching-based finder, 2-factorizations and (p, mu)-factors."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._accel import CUT_VERTEX_GATE, TUTTE_VERTEX_GATE, check_gate
from .errors import PreconditionError, TheoremViolation
from .matching import bipartite_perfect_matching, max_matching
from .sgraph import SignedGraph, euler_circuits, odd_edge_connectivity, split_off
from .split import batch_split


@dataclass(frozen=True)
class FactorSubgraph:
    """Edge subset with its degree map (loops count 2)."""

    edges: frozenset[int]
    degree: Mapping[int, int]

    @classmethod
    def from_edges(cls, g: SignedGraph, edges: Iterable[int]) -> FactorSubgraph:
        es = frozenset(edges)
        deg = {v: 0 for v in g.vertices}
        for eid in es:
            e = g.edge(eid)
            deg[e.u] += 1
            deg[e.w] += 1
        return cls(es, deg)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class TutteCheck:
    holds: bool
    s: frozenset[int] = frozenset()
    t: frozenset[int] = frozenset()
    deficiency: int = 0

    def __bool__(self) -> bool:
        return self.holds


def tutte_condition(g: SignedGraph, fdem: Mapping[int, int], limit: int = TUTTE_VERTEX_GATE) -> TutteCheck:
    """Exhaustive check of Tutte's f-factor inequality over all disjoint (S, T).

    A pair violates when f(S) - f(T) + sum_T d_{G-S} - q(S, T) < 0, where
    q counts components U of G - S - T with f(U) + e(U, T) odd.
    """
    check_gate(g.num_vertices, limit, "tutte_condition")
    index, n, eu, ew, _ = g.dense_arrays(include_loops=True)
    if n == 0:
        return TutteCheck(True)
    order = g.sorted_vertices()
    f = np.array([int(fdem.get(v, 0)) for v in order], dtype=np.int64)
    violated, smask, tmask, deficiency = _kernels.tutte_scan(n, eu, ew, f)
    if not violated:
        return TutteCheck(True)
    s = frozenset(order[i] for i in range(n) if (int(smask) >> i) & 1)
    t = frozenset(order[i] for i in range(n) if (int(tmask) >> i) & 1)
    return TutteCheck(False, s, t, int(deficiency))


def find_f_factor(g: SignedGraph, fdem: Mapping[int, int]) -> FactorSubgraph | None:
    """An f-factor via perfect matching in the standard gadget, or ``None``.

    Each vertex v becomes one external node per half-edge and d(v) - f(v)
    internal nodes joined completely to the externals; each edge links its
    two external nodes.  A perfect matching uses exactly f(v) links at v.
    """
    nodes = 0
    ext: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = []

    def node() -> int:
        nonlocal nodes
        adj.append([])
        nodes += 1
        return nodes - 1

    for v in g.sorted_vertices():
        f = int(fdem.get(v, 0))
        d = g.degree(v)
        if f < 0 or f > d:
            return None
        outer = []
        for h in g.halves(v):
            ext[h] = node()
            outer.append(ext[h])
        for _ in range(d - f):
            x = node()
            for y in outer:
                adj[x].append(y)
                adj[y].append(x)
    link_of: dict[tuple[int, int], int] = {}
    for eid in g.edges:
        a, b = ext[(eid, 0)], ext[(eid, 1)]
        # links first in each external node's list so the greedy start favours them
        adj[a].insert(0, b)
        adj[b].insert(0, a)
        link_of[(a, b)] = eid
    mate = max_matching(nodes, adj)
    if any(m == -1 for m in mate):
        return None
    chosen = [eid for (a, b), eid in link_of.items() if mate[a] == b]
    fs = FactorSubgraph.from_edges(g, chosen)
    for v in g.vertices:
        if fs.degree[v] != int(fdem.get(v, 0)):
            raise TheoremViolation(f"gadget matching gave degree {fs.degree[v]} at {v}")
    return fs


def petersen_2_factorization(g: SignedGraph, p: int | None = None) -> list[FactorSubgraph]:
    """Split a 2p-regular multigraph into p spanning 2-regular factors.

    Orient along Euler circuits, send each vertex's out-ends to a left copy
    and in-ends to a right copy, and peel off p perfect matchings of the
    resulting p-regular bipartite multigraph.
    """
    degs = {g.degree(v) for v in g.vertices}
    if p is None:
        if not degs:
            return []
        p = next(iter(degs)) // 2
    if p < 1 or degs - {2 * p}:
        raise PreconditionError(f"graph is not {2 * p}-regular (degrees {sorted(degs)})")
    order = g.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    arcs = []
    for trail in euler_circuits(g):
        for eid, tail, head in trail:
            arcs.append((index[g.half_vertex((eid, tail))], index[g.half_vertex((eid, head))], eid))
    n = len(order)
    factors = []
    remaining = arcs
    for _ in range(p):
        m = bipartite_perfect_matching(n, n, remaining)
        if m is None:
            raise TheoremViolation("regular bipartite multigraph without a perfect matching")
        used = set(m.values())
        factors.append(FactorSubgraph.from_edges(g, used))
        remaining = [a for a in remaining if a[2] not in used]
    return factors


def p_mu_factor(
    g: SignedGraph, p: int, mu: Mapping[int, int] | None = None, limit: int = CUT_VERTEX_GATE
) -> FactorSubgraph:
    """Spanning subgraph with d_F(v) = p * mu(v) in an odd-(2p+1)-connected graph of degrees (2p+1) mu.

    Splits high-degree vertices down to degrees 2p+1 and 2(2p+1) keeping odd
    connectivity, takes a {1,2}-factor F0, 2-factorizes the rest after an
    arbitrary split of the 4p-degree vertices, and combines F0 (p odd) with
    half of the 2-factors.  Edge ids survive every split, so the factor is
    read off directly on ``g``.
    """
    if p < 1:
        raise PreconditionError("p must be positive")
    k = 2 * p + 1
    for v in g.vertices:
        d = g.degree(v)
        if d % k:
            raise PreconditionError(f"vertex {v} has degree {d}, not a multiple of {k}")
        if mu is not None and d != k * mu.get(v, 0):
            raise PreconditionError(f"vertex {v}: degree {d} != {k} * mu")
    if mu is None:
        mu = {v: g.degree(v) // k for v in g.vertices}
    if odd_edge_connectivity(g, limit) < k:
        raise PreconditionError(f"graph is not odd-{k}-edge-connected")

    h = g
    while True:
        big = [v for v in h.sorted_vertices() if h.degree(v) > 2 * k]
        if not big:
            break
        h, _, _ = batch_split(h, big[0], 2 * k, k, limit)

    f0 = find_f_factor(h, {v: h.degree(v) // k for v in h.vertices})
    if f0 is None:
        raise TheoremViolation("no {1,2}-factor in a split graph with degrees in {k, 2k}")
    rest = h.edge_subgraph(set(h.edges) - f0.edges)
    for v in rest.sorted_vertices():
        if rest.degree(v) == 4 * p:
            rest, _ = split_off(rest, v, rest.halves(v)[: 2 * p])
    rest = rest.edge_subgraph(rest.edges, keep_vertices=False)
    twos = petersen_2_factorization(rest, p) if rest.num_vertices else []
    chosen = set(f0.edges) if p % 2 else set()
    for fac in twos[: p // 2]:
        chosen |= fac.edges
    out = FactorSubgraph.from_edges(g, chosen)
    for v in g.vertices:
        if out.degree[v] != p * mu[v]:
            raise TheoremViolation(f"factor degree {out.degree[v]} != {p * mu[v]} at vertex {v}")
    return out
