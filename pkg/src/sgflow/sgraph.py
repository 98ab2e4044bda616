"""Signed multigraphs with half-edge identity, structural queries and rewrites.

A :class:`SignedGraph` is treated as an immutable value.  Every rewrite
(``switch``, ``split_off``, ``suppress``, ``contract`` ...) returns a fresh graph
together with a record; records can be replayed forward with :func:`apply`
and inverted with :func:`undo`.

Half-edges are addressed as ``(edge_id, end)`` where ``end`` is 0 for the
first endpoint ``u`` and 1 for the second endpoint ``w``.  Rewrites that move
a half-edge keep its ``(edge_id, end)`` name, so orientations keyed by
half-edge survive splitting and contraction unchanged.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from types import MappingProxyType
from typing import NamedTuple, Union

import numpy as np

from . import _kernels
from ._accel import CUT_VERTEX_GATE, NEGATIVENESS_VERTEX_GATE, check_gate
from .errors import PreconditionError

Half = tuple[int, int]


class Edge(NamedTuple):
    u: int
    w: int
    sign: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.w

    def end_vertex(self, end: int) -> int:
        return self.u if end == 0 else self.w


def _sign(s) -> int:
    if s in (1, "+", "+1"):
        return 1
    if s in (-1, "-", "-1", "−"):
        return -1
    raise PreconditionError(f"bad sign {s!r}")


class SignedGraph:
    """Signed multigraph; loops and parallel edges allowed."""

    __slots__ = ("_vertices", "_edges", "_next_vertex", "_next_edge", "_halves")

    def __init__(
        self,
        vertices: Iterable[int],
        edges: Mapping[int, Edge],
        next_vertex: int | None = None,
        next_edge: int | None = None,
    ):
        verts = frozenset(vertices)
        es = {int(k): Edge(int(e[0]), int(e[1]), int(e[2])) for k, e in sorted(edges.items())}
        for eid, e in es.items():
            if e.u not in verts or e.w not in verts:
                raise PreconditionError(f"edge {eid} has an endpoint outside the vertex set")
            if e.sign not in (1, -1):
                raise PreconditionError(f"edge {eid} has sign {e.sign}")
        self._vertices = verts
        self._edges = MappingProxyType(es)
        self._next_vertex = max(next_vertex or 0, max(verts, default=-1) + 1)
        self._next_edge = max(next_edge or 0, max(es, default=0) + 1)
        self._halves: dict[int, tuple[Half, ...]] | None = None

    # -- basic queries ------------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def edges(self) -> Mapping[int, Edge]:
        return self._edges

    @property
    def next_vertex(self) -> int:
        return self._next_vertex

    @property
    def next_edge(self) -> int:
        return self._next_edge

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def sorted_vertices(self) -> list[int]:
        return sorted(self._vertices)

    def edge(self, eid: int) -> Edge:
        return self._edges[eid]

    def sign(self, eid: int) -> int:
        return self._edges[eid].sign

    def half_vertex(self, h: Half) -> int:
        return self._edges[h[0]].end_vertex(h[1])

    def _half_index(self) -> dict[int, tuple[Half, ...]]:
        if self._halves is None:
            idx: dict[int, list[Half]] = {v: [] for v in self._vertices}
            for eid, e in self._edges.items():
                idx[e.u].append((eid, 0))
                idx[e.w].append((eid, 1))
            self._halves = {v: tuple(sorted(hs)) for v, hs in idx.items()}
        return self._halves

    def halves(self, v: int) -> tuple[Half, ...]:
        """Half-edges at ``v`` in canonical (edge id, end) order."""
        try:
            return self._half_index()[v]
        except KeyError:
            raise PreconditionError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.halves(v))

    def incident_edges(self, v: int) -> list[int]:
        return sorted({h[0] for h in self.halves(v)})

    def negative_edges(self) -> list[int]:
        return [eid for eid, e in self._edges.items() if e.sign < 0]

    def loops(self) -> list[int]:
        return [eid for eid, e in self._edges.items() if e.is_loop]

    def other_end(self, eid: int, v: int) -> int:
        e = self._edges[eid]
        return e.w if e.u == v else e.u

    def __contains__(self, v: object) -> bool:
        return v in self._vertices

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._edges) == dict(other._edges)

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.items())))

    def __repr__(self) -> str:
        return f"SignedGraph(|V|={self.num_vertices}, |E|={self.num_edges}, neg={len(self.negative_edges())})"

    # -- derived graphs -------------------------------------------------------

    def replace(self, vertices=None, edges=None) -> SignedGraph:
        return SignedGraph(
            self._vertices if vertices is None else vertices,
            self._edges if edges is None else edges,
            self._next_vertex,
            self._next_edge,
        )

    def edge_subgraph(self, eids: Iterable[int], keep_vertices: bool = True) -> SignedGraph:
        keep = set(eids)
        es = {k: e for k, e in self._edges.items() if k in keep}
        if keep_vertices:
            verts = self._vertices
        else:
            verts = {x for e in es.values() for x in (e.u, e.w)}
        return self.replace(vertices=verts, edges=es)

    def induced(self, vertices: Iterable[int]) -> SignedGraph:
        vs = frozenset(vertices)
        es = {k: e for k, e in self._edges.items() if e.u in vs and e.w in vs}
        return self.replace(vertices=vs, edges=es)

    def components(self) -> list[list[int]]:
        """Connected components of the underlying graph, each sorted, ordered by min vertex."""
        parent = {v: v for v in self._vertices}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self._edges.values():
            a, b = find(e.u), find(e.w)
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for v in sorted(self._vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values(), key=lambda c: c[0])

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def dense_arrays(self, include_loops: bool = False):
        """(index map, n, eu, ew, eids) with vertices relabelled 0..n-1."""
        order = self.sorted_vertices()
        index = {v: i for i, v in enumerate(order)}
        eids = [k for k, e in self._edges.items() if include_loops or not e.is_loop]
        eu = np.array([index[self._edges[k].u] for k in eids], dtype=np.int64)
        ew = np.array([index[self._edges[k].w] for k in eids], dtype=np.int64)
        return index, len(order), eu, ew, eids


def build(vertex_count: int, edge_list: Sequence[Sequence]) -> SignedGraph:
    """Graph on vertices ``0..vertex_count-1`` with edges numbered 1..m in list order.

    >>> g = build(1, [(0, 0, "-")])
    >>> g.degree(0), g.sign(1)
    (2, -1)
    """
    if vertex_count < 0:
        raise PreconditionError("vertex_count must be non-negative")
    edges = {}
    for i, item in enumerate(edge_list, start=1):
        u, w, s = item
        if not (0 <= u < vertex_count and 0 <= w < vertex_count):
            raise PreconditionError(f"edge {i} endpoint out of range: {(u, w)}")
        edges[i] = Edge(int(u), int(w), _sign(s))
    return SignedGraph(range(vertex_count), edges)


# ---------------------------------------------------------------------------
# rewrite records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Switch:
    vertex: int


@dataclass(frozen=True)
class SplitOff:
    vertex: int
    halves: tuple[Half, ...]
    new_vertex: int


@dataclass(frozen=True)
class Suppress:
    """Vertex ``vertex`` with half-edges ``first``/``second`` replaced by ``new_edge``.

    The new edge's end 0 sits where the far end of ``first`` was, end 1 where
    the far end of ``second`` was.
    """

    vertex: int
    first: Half
    second: Half
    first_edge: Edge
    second_edge: Edge
    new_edge: int


@dataclass(frozen=True)
class Contract:
    edge: int
    removed_edge: Edge
    kept: int
    merged: int
    moved: tuple[Half, ...]


@dataclass(frozen=True)
class AddEdge:
    edge: int
    data: Edge


@dataclass(frozen=True)
class DeleteEdge:
    edge: int
    data: Edge


@dataclass(frozen=True)
class StripLoop:
    edge: int
    data: Edge


@dataclass(frozen=True)
class MergeVertices:
    """Vertices ``sources`` identified into ``target``; ``moved[i]`` are the halves that left ``sources[i]``."""

    target: int
    sources: tuple[int, ...]
    moved: tuple[tuple[Half, ...], ...]


Record = Union[Switch, SplitOff, Suppress, Contract, AddEdge, DeleteEdge, StripLoop, MergeVertices]


class RewriteTrace:
    """Ordered log of rewrites; ``replay`` reproduces the rewritten graph."""

    def __init__(self, records: Iterable[Record] = ()):
        self.records: list[Record] = list(records)

    def append(self, rec: Record) -> None:
        self.records.append(rec)

    def extend(self, recs: Iterable[Record]) -> None:
        self.records.extend(recs)

    def __iter__(self) -> Iterator[Record]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, i):
        return self.records[i]

    def replay(self, g: SignedGraph) -> SignedGraph:
        for rec in self.records:
            g = apply(g, rec)
        return g

    def unwind(self, g: SignedGraph) -> SignedGraph:
        for rec in reversed(self.records):
            g = undo(g, rec)
        return g


def _move_halves(edges: dict[int, Edge], halves: Iterable[Half], target: int) -> None:
    for eid, end in halves:
        e = edges[eid]
        edges[eid] = e._replace(u=target) if end == 0 else e._replace(w=target)


def apply(g: SignedGraph, rec: Record) -> SignedGraph:
    """Apply one record to ``g`` (ids are taken from the record)."""
    edges = dict(g.edges)
    verts = set(g.vertices)
    nv, ne = g.next_vertex, g.next_edge
    if isinstance(rec, Switch):
        for eid in g.incident_edges(rec.vertex):
            e = edges[eid]
            if not e.is_loop:
                edges[eid] = e._replace(sign=-e.sign)
    elif isinstance(rec, SplitOff):
        verts.add(rec.new_vertex)
        _move_halves(edges, rec.halves, rec.new_vertex)
        nv = max(nv, rec.new_vertex + 1)
    elif isinstance(rec, Suppress):
        a = rec.first_edge.end_vertex(1 - rec.first[1])
        b = rec.second_edge.end_vertex(1 - rec.second[1])
        del edges[rec.first[0]], edges[rec.second[0]]
        edges[rec.new_edge] = Edge(a, b, rec.first_edge.sign * rec.second_edge.sign)
        verts.discard(rec.vertex)
        ne = max(ne, rec.new_edge + 1)
    elif isinstance(rec, Contract):
        del edges[rec.edge]
        _move_halves(edges, rec.moved, rec.kept)
        verts.discard(rec.merged)
    elif isinstance(rec, AddEdge):
        edges[rec.edge] = rec.data
        ne = max(ne, rec.edge + 1)
    elif isinstance(rec, (DeleteEdge, StripLoop)):
        del edges[rec.edge]
    elif isinstance(rec, MergeVertices):
        for src, moved in zip(rec.sources, rec.moved):
            _move_halves(edges, moved, rec.target)
            verts.discard(src)
    else:  # pragma: no cover
        raise TypeError(f"unknown record {rec!r}")
    return SignedGraph(verts, edges, nv, ne)


def undo(g: SignedGraph, rec: Record) -> SignedGraph:
    """Invert :func:`apply` for one record."""
    edges = dict(g.edges)
    verts = set(g.vertices)
    if isinstance(rec, Switch):
        return apply(g, rec)
    if isinstance(rec, SplitOff):
        _move_halves(edges, rec.halves, rec.vertex)
        verts.discard(rec.new_vertex)
    elif isinstance(rec, Suppress):
        del edges[rec.new_edge]
        edges[rec.first[0]] = rec.first_edge
        edges[rec.second[0]] = rec.second_edge
        verts.add(rec.vertex)
    elif isinstance(rec, Contract):
        verts.add(rec.merged)
        _move_halves(edges, rec.moved, rec.merged)
        edges[rec.edge] = rec.removed_edge
    elif isinstance(rec, AddEdge):
        del edges[rec.edge]
    elif isinstance(rec, (DeleteEdge, StripLoop)):
        edges[rec.edge] = rec.data
    elif isinstance(rec, MergeVertices):
        for src, moved in zip(rec.sources, rec.moved):
            verts.add(src)
            _move_halves(edges, moved, src)
    else:  # pragma: no cover
        raise TypeError(f"unknown record {rec!r}")
    return SignedGraph(verts, edges, g.next_vertex, g.next_edge)


# ---------------------------------------------------------------------------
# rewrites
# ---------------------------------------------------------------------------


def _require_vertex(g: SignedGraph, v: int) -> None:
    if v not in g.vertices:
        raise PreconditionError(f"unknown vertex {v}")


def switch(g: SignedGraph, v: int) -> tuple[SignedGraph, Switch]:
    """Negate the sign of every non-loop edge at ``v``."""
    _require_vertex(g, v)
    rec = Switch(v)
    return apply(g, rec), rec


def switch_set(g: SignedGraph, vertices: Iterable[int]) -> SignedGraph:
    for v in vertices:
        g, _ = switch(g, v)
    return g


def split_off(g: SignedGraph, v: int, halves: Iterable[Half]) -> tuple[SignedGraph, SplitOff]:
    """Re-anchor the given half-edges at ``v`` to a new vertex."""
    _require_vertex(g, v)
    hs = tuple(sorted(set(halves)))
    at_v = set(g.halves(v))
    for h in hs:
        if h not in at_v:
            raise PreconditionError(f"half-edge {h} is not incident with vertex {v}")
    # a single half of a loop may move on its own; the loop becomes an edge v--v*
    rec = SplitOff(v, hs, g.next_vertex)
    return apply(g, rec), rec


def suppress(g: SignedGraph, w: int, new_edge: int | None = None) -> tuple[SignedGraph, Suppress]:
    """Replace the two edges at a degree-2 vertex by one edge with the product sign."""
    _require_vertex(g, w)
    hs = g.halves(w)
    if len(hs) != 2:
        raise PreconditionError(f"vertex {w} has degree {len(hs)}, not 2")
    h1, h2 = hs
    if h1[0] == h2[0]:
        raise PreconditionError(f"vertex {w} carries a loop")
    rec = Suppress(w, h1, h2, g.edge(h1[0]), g.edge(h2[0]), g.next_edge if new_edge is None else new_edge)
    return apply(g, rec), rec


def contract(g: SignedGraph, eid: int) -> tuple[SignedGraph, Contract]:
    """Identify the ends of a positive non-loop edge (the first endpoint survives)."""
    e = g.edge(eid)
    if e.is_loop:
        raise PreconditionError(f"edge {eid} is a loop")
    if e.sign < 0:
        raise PreconditionError(f"edge {eid} is negative; switch first")
    moved = tuple(h for h in g.halves(e.w) if h[0] != eid)
    rec = Contract(eid, e, e.u, e.w, moved)
    return apply(g, rec), rec


def add_edge(g: SignedGraph, u: int, w: int, sign: int) -> tuple[SignedGraph, AddEdge]:
    _require_vertex(g, u)
    _require_vertex(g, w)
    rec = AddEdge(g.next_edge, Edge(u, w, _sign(sign)))
    return apply(g, rec), rec


def delete_edge(g: SignedGraph, eid: int) -> tuple[SignedGraph, DeleteEdge]:
    rec = DeleteEdge(eid, g.edge(eid))
    return apply(g, rec), rec


def strip_loop(g: SignedGraph, eid: int) -> tuple[SignedGraph, StripLoop]:
    e = g.edge(eid)
    if not e.is_loop:
        raise PreconditionError(f"edge {eid} is not a loop")
    rec = StripLoop(eid, e)
    return apply(g, rec), rec


def merge_vertices(g: SignedGraph, target: int, sources: Sequence[int]) -> tuple[SignedGraph, MergeVertices]:
    _require_vertex(g, target)
    for s in sources:
        _require_vertex(g, s)
    rec = MergeVertices(target, tuple(sources), tuple(g.halves(s) for s in sources))
    return apply(g, rec), rec


# ---------------------------------------------------------------------------
# structure
# ---------------------------------------------------------------------------


def negativeness(g: SignedGraph, limit: int = NEGATIVENESS_VERTEX_GATE) -> int:
    """Fewest negative edges over the switching class (exhaustive over vertex subsets)."""
    check_gate(g.num_vertices, limit, "negativeness")
    index, n, eu, ew, eids = g.dense_arrays()
    neg = np.array([1 if g.sign(k) < 0 else 0 for k in eids], dtype=np.int64)
    loop_neg = sum(1 for k in g.loops() if g.sign(k) < 0)
    if n == 0:
        return loop_neg
    best, _ = _kernels.min_switch_negatives(n, eu, ew, neg)
    return int(best) + loop_neg


@dataclass(frozen=True)
class BlockStructure:
    bridges: frozenset[int]
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]

    def blocks_at(self, g: SignedGraph, v: int) -> list[int]:
        """Indices of the blocks containing ``v``."""
        return [i for i, b in enumerate(self.blocks) if any(v in (g.edge(k).u, g.edge(k).w) for k in b)]


def bridges_and_blocks(g: SignedGraph) -> BlockStructure:
    """Bridges, biconnected blocks (as edge-id sets) and cut vertices.

    Loops are ignored: they are never bridges and belong to no block.
    Parallel edges land in the same block and are never bridges.
    """
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for eid, e in g.edges.items():
        if not e.is_loop:
            adj[e.u].append((e.w, eid))
            adj[e.w].append((e.u, eid))
    for v in adj:
        adj[v].sort(key=lambda t: t[1])
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: set[int] = set()
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    counter = 0
    for root in sorted(g.vertices):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        estack: list[int] = []
        stack: list[tuple[int, int, Iterator]] = [(root, -1, iter(adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == pe:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    estack.append(eid)
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append(eid)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if not stack:
                break
            parent = stack[-1][0]
            low[parent] = min(low[parent], low[v])
            if low[v] > disc[parent]:
                bridges.add(pe)
            if low[v] >= disc[parent]:
                block = []
                while True:
                    x = estack.pop()
                    block.append(x)
                    if x == pe:
                        break
                blocks.append(frozenset(block))
                if parent == root:
                    root_children += 1
                else:
                    cuts.add(parent)
        if root_children >= 2:
            cuts.add(root)
    blocks.sort(key=min)
    return BlockStructure(frozenset(bridges), tuple(blocks), frozenset(cuts))


def bridges(g: SignedGraph) -> frozenset[int]:
    return bridges_and_blocks(g).bridges


def is_bridgeless(g: SignedGraph) -> bool:
    return not bridges_and_blocks(g).bridges


def odd_edge_connectivity(g: SignedGraph, limit: int = CUT_VERTEX_GATE) -> int | float:
    """Size of a smallest odd edge cut, or ``math.inf`` when every cut is even."""
    return min_odd_cut_witness(g, limit)[0]


def min_odd_cut_witness(g: SignedGraph, limit: int = CUT_VERTEX_GATE) -> tuple[int | float, frozenset[int]]:
    """Smallest odd cut size and one shore realising it (``math.inf`` and empty if none)."""
    check_gate(g.num_vertices, limit, "odd_edge_connectivity")
    if not _has_odd_degree(g):
        return math.inf, frozenset()
    index, n, eu, ew, _ = g.dense_arrays()
    best, mask = _kernels.odd_cut_scan(n, eu, ew)
    if best < 0:
        return math.inf, frozenset()
    order = g.sorted_vertices()
    shore = frozenset(order[i] for i in range(n) if (int(mask) >> i) & 1)
    return int(best), shore


def _has_odd_degree(g: SignedGraph) -> bool:
    # a cut's parity is the degree-sum parity of its shore
    return any(g.degree(v) % 2 for v in g.vertices)


def is_odd_connected(g: SignedGraph, lam: int, limit: int = CUT_VERTEX_GATE) -> bool:
    """True when every odd edge cut has size >= ``lam``."""
    return odd_edge_connectivity(g, limit) >= lam


def cut_size(g: SignedGraph, shore: Iterable[int]) -> int:
    s = set(shore)
    return sum(1 for e in g.edges.values() if (e.u in s) != (e.w in s))


def euler_circuits(g: SignedGraph, eids: Iterable[int] | None = None) -> list[list[tuple[int, int, int]]]:
    """Closed trails covering the chosen edges, one per connected component.

    Each trail is a list of ``(edge_id, tail_end, head_end)`` steps, so the
    traversal leaves through half ``(edge_id, tail_end)``.  Every vertex must
    have even degree in the chosen edge set.  Deterministic: smallest vertex
    starts, smallest unused edge is taken first.
    """
    chosen = sorted(g.edges if eids is None else set(eids))
    inc: dict[int, list[Half]] = {}
    for eid in chosen:
        e = g.edge(eid)
        inc.setdefault(e.u, []).append((eid, 0))
        inc.setdefault(e.w, []).append((eid, 1))
    for v, hs in inc.items():
        if len(hs) % 2:
            raise PreconditionError(f"vertex {v} has odd degree in the edge set")
        hs.sort(reverse=True)
    used: set[int] = set()
    trails = []
    for start in sorted(inc):
        if all(h[0] in used for h in inc[start]):
            continue
        # Hierholzer, iterative; steps are collected in reverse
        stack: list[tuple[int, tuple[int, int, int] | None]] = [(start, None)]
        out: list[tuple[int, int, int]] = []
        while stack:
            v, step = stack[-1]
            hs = inc[v]
            while hs and hs[-1][0] in used:
                hs.pop()
            if hs:
                eid, end = hs.pop()
                used.add(eid)
                far = g.edge(eid).end_vertex(1 - end)
                stack.append((far, (eid, end, 1 - end)))
            else:
                stack.pop()
                if step is not None:
                    out.append(step)
        out.reverse()
        trails.append(out)
    return trails
