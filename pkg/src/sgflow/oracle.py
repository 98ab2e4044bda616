"""Brute-force ground truth used to validate every constructive routine.

The searches share one backtracking kernel (``_kernels.label_search``) but
none of them reuse the constructive code paths they are meant to check.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Mapping, Sequence

import numpy as np

from . import _kernels
from ._accel import CUT_VERTEX_GATE, FLOW_ORACLE_GATE, check_gate, search_gate
from .errors import PreconditionError
from .factor import FactorSubgraph
from .flow import FlowAssignment, FlowSpec, Orientation, canonical_orientation, check_orientation
from .sgraph import SignedGraph


def bfs_edge_order(g: SignedGraph) -> list[int]:
    """Edges in order of discovery by BFS, restarting at the smallest unseen vertex."""
    seen_v: set[int] = set()
    seen_e: set[int] = set()
    order: list[int] = []
    for root in g.sorted_vertices():
        if root in seen_v:
            continue
        seen_v.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for eid in g.incident_edges(v):
                if eid in seen_e:
                    continue
                seen_e.add(eid)
                order.append(eid)
                x = g.other_end(eid, v)
                if x not in seen_v:
                    seen_v.add(x)
                    queue.append(x)
    return order


def _run(g, order, coef, candidates, target, modulus, limit):
    """Pack a labelling problem for the kernel; returns a list of value tuples in ``order``."""
    verts = g.sorted_vertices()
    index = {v: i for i, v in enumerate(verts)}
    n, m = len(verts), len(order)
    va = np.zeros(m, dtype=np.int64)
    vb = np.full(m, -1, dtype=np.int64)
    ca = np.zeros(m, dtype=np.int64)
    cb = np.zeros(m, dtype=np.int64)
    width = max((len(c) for c in candidates), default=1) or 1
    vals = np.zeros((m, width), dtype=np.int64)
    nv = np.zeros(m, dtype=np.int64)
    cap = np.zeros(n, dtype=np.int64)
    for i, eid in enumerate(order):
        e = g.edge(eid)
        c0, c1 = coef[i]
        cs = candidates[i]
        nv[i] = len(cs)
        vals[i, : len(cs)] = cs
        big = max((abs(x) for x in cs), default=0)
        if e.is_loop:
            va[i], ca[i] = index[e.u], c0 + c1
            cap[va[i]] += abs(ca[i]) * big
        else:
            va[i], ca[i] = index[e.u], c0
            vb[i], cb[i] = index[e.w], c1
            cap[va[i]] += abs(c0) * big
            cap[vb[i]] += abs(c1) * big
    tgt = np.array([target.get(v, 0) for v in verts], dtype=np.int64)
    touched = set(va.tolist()) | {x for x in vb.tolist() if x >= 0}
    for i in range(n):
        if i not in touched and (tgt[i] % modulus if modulus else tgt[i]) != 0:
            return []
    if limit < 1 or any(x == 0 for x in nv):
        return []
    capa = np.zeros(m, dtype=np.int64)
    capb = np.zeros(m, dtype=np.int64)
    for i in range(m):
        big = int(np.abs(vals[i, : nv[i]]).max())
        cap[va[i]] -= abs(ca[i]) * big
        capa[i] = cap[va[i]]
        if vb[i] >= 0:
            cap[vb[i]] -= abs(cb[i]) * big
            capb[i] = cap[vb[i]]
    count, sols = _kernels.label_search(n, va, ca, capa, vb, cb, capb, vals, nv, tgt, modulus, limit)
    return [tuple(int(x) for x in sols[j]) for j in range(int(count))]


def iter_flows(
    g: SignedGraph,
    spec: FlowSpec,
    allowed: Mapping[int, Sequence[int]] | None = None,
    tau: Mapping[int, tuple[int, int]] | None = None,
    limit: int = 1,
    gate: int | None = None,
) -> list[FlowAssignment]:
    """Up to ``limit`` flows meeting ``spec`` (and per-edge ``allowed`` values), in canonical order.

    Values are tried ascending by absolute value, positive first; edges are
    assigned in BFS order.  ``tau`` defaults to the canonical orientation.
    """
    check_gate(g.num_edges, search_gate(FLOW_ORACLE_GATE) if gate is None else gate, "search_flow")
    tau = canonical_orientation(g) if tau is None else {k: tuple(t) for k, t in tau.items()}
    check_orientation(g, tau)
    base = spec.admissible_values()
    if spec.nowhere_zero:
        base = [x for x in base if x != 0]
    order = bfs_edge_order(g)
    candidates = []
    for eid in order:
        if allowed is not None and eid in allowed:
            ok = set(base)
            cs = [x for x in allowed[eid] if x in ok]
        else:
            cs = base
        candidates.append(cs)
    coef = [tau[eid] for eid in order]
    modulus = spec.k if spec.modular else 0
    sols = _run(g, order, coef, candidates, {}, modulus, limit)
    out = []
    for sol in sols:
        value = dict(zip(order, sol))
        out.append(FlowAssignment({eid: tau[eid] for eid in g.edges}, {eid: value[eid] for eid in g.edges}))
    return out


def search_flow(
    g: SignedGraph,
    spec: FlowSpec,
    allowed: Mapping[int, Sequence[int]] | None = None,
    tau: Mapping[int, tuple[int, int]] | None = None,
    gate: int | None = None,
) -> FlowAssignment | None:
    """First flow in canonical order, or ``None`` once the space is exhausted."""
    found = iter_flows(g, spec, allowed, tau, limit=1, gate=gate)
    return found[0] if found else None


def search_orientation(g: SignedGraph, p: int, limit: int = 1, gate: int | None = None) -> Orientation | None:
    """A modulo (2p+1)-orientation, or ``None``."""
    found = iter_orientations(g, p, limit=1, gate=gate)
    return found[0] if found else None


def iter_orientations(g: SignedGraph, p: int, limit: int = 1, gate: int | None = None) -> list[Orientation]:
    if p < 1:
        raise PreconditionError("p must be positive")
    check_gate(g.num_edges, search_gate(FLOW_ORACLE_GATE) if gate is None else gate, "search_orientation")
    tau = canonical_orientation(g)
    order = bfs_edge_order(g)
    sols = _run(g, order, [tau[e] for e in order], [[1, -1]] * len(order), {}, 2 * p + 1, limit)
    out = []
    for sol in sols:
        flip = dict(zip(order, sol))
        out.append({eid: (tau[eid][0] * flip[eid], tau[eid][1] * flip[eid]) for eid in g.edges})
    return out


def _component_count(vertices, edges, removed: set[int]) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = len(parent)
    for eid, e in edges:
        if eid in removed:
            continue
        a, b = find(e.u), find(e.w)
        if a != b:
            parent[a] = b
            comps -= 1
    return comps


def min_odd_cut(g: SignedGraph, limit: int = CUT_VERTEX_GATE) -> tuple[int | float, frozenset[int]]:
    """Smallest odd cut E(X, V-X) whose removal adds components, with a shore X.

    Plain enumeration of shores; deliberately shares nothing with
    :func:`sgflow.sgraph.odd_edge_connectivity`.
    """
    check_gate(g.num_vertices, limit, "min_odd_cut")
    verts = g.sorted_vertices()
    edges = list(g.edges.items())
    base = _component_count(verts, edges, set())
    best: int | float = math.inf
    witness: frozenset[int] = frozenset()
    n = len(verts)
    for mask in range(1, 1 << max(n - 1, 0)):
        shore = {verts[i] for i in range(n - 1) if (mask >> i) & 1}
        cut = {eid for eid, e in edges if (e.u in shore) != (e.w in shore)}
        if len(cut) % 2 == 0 or len(cut) >= best:
            continue
        if _component_count(verts, edges, cut) > base:
            best, witness = len(cut), frozenset(shore)
    return best, witness


def brute_f_factor(g: SignedGraph, fdem: Mapping[int, int], gate: int | None = None) -> FactorSubgraph | None:
    """Edge-subset enumeration with degree pruning; loops count twice."""
    check_gate(g.num_edges, search_gate(FLOW_ORACLE_GATE) if gate is None else gate, "brute_f_factor")
    order = sorted(g.edges)
    target = {v: int(fdem.get(v, 0)) for v in g.vertices}
    if any(target[v] < 0 for v in target):
        return None
    sols = _run(g, order, [(1, 1)] * len(order), [[0, 1]] * len(order), target, 0, 1)
    if not sols:
        return None
    chosen = frozenset(eid for eid, x in zip(order, sols[0]) if x)
    return FactorSubgraph.from_edges(g, chosen)
