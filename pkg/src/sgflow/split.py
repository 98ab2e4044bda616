"""Vertex splitting that keeps the graph bridgeless or odd-λ-edge-connected."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

from ._accel import CUT_VERTEX_GATE
from .errors import PreconditionError, TheoremViolation
from .sgraph import (
    Half,
    RewriteTrace,
    SignedGraph,
    SplitOff,
    bridges_and_blocks,
    is_bridgeless,
    merge_vertices,
    odd_edge_connectivity,
    split_off,
)

Pair = tuple[Half, Half]


@dataclass(frozen=True)
class PairSet:
    """Unordered pairs of distinct half-edges at one vertex (never both halves of a loop)."""

    vertex: int
    pairs: frozenset[frozenset[Half]]

    @classmethod
    def of(cls, g: SignedGraph, v: int, pairs: Iterable[tuple[Half, Half]]) -> PairSet:
        at_v = set(g.halves(v))
        out = set()
        for a, b in pairs:
            if a not in at_v or b not in at_v:
                raise PreconditionError(f"pair {(a, b)} is not at vertex {v}")
            if a == b or a[0] == b[0]:
                continue
            out.add(frozenset((a, b)))
        return cls(v, frozenset(out))

    @classmethod
    def complete(cls, g: SignedGraph, v: int) -> PairSet:
        return cls.of(g, v, combinations(g.halves(v), 2))

    @classmethod
    def cyclic(cls, g: SignedGraph, v: int) -> PairSet:
        """Consecutive pairs around the canonical cyclic order of the half-edges at ``v``."""
        hs = g.halves(v)
        d = len(hs)
        return cls.of(g, v, ((hs[i], hs[(i + 1) % d]) for i in range(d)) if d >= 2 else ())

    def ordered(self) -> list[Pair]:
        return sorted(tuple(sorted(p)) for p in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


def sequentially_connected(s: PairSet, d: int) -> bool:
    """True when the pairs link all ``d`` half-edges at the vertex into one chain-connected set."""
    if d <= 1:
        return True
    parent: dict[Half, Half] = {}

    def find(x: Half) -> Half:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in s.pairs:
        for h in p:
            parent.setdefault(h, h)
    if len(parent) != d:
        return False
    for p in s.pairs:
        a, b = (find(h) for h in p)
        if a != b:
            parent[a] = b
    return len({find(h) for h in parent}) == 1


def bridgeless_splits(g: SignedGraph, v: int) -> Iterator[tuple[SignedGraph, Pair, SplitOff]]:
    """Every bridgeless G(v; {a, b}) in canonical pair order.

    At a cut vertex only pairs from different blocks are offered; the
    splitting lemma guarantees the first such pair already works.
    """
    info = bridges_and_blocks(g)
    if info.bridges:
        raise PreconditionError(f"graph has bridges {sorted(info.bridges)}")
    if g.degree(v) < 4:
        raise PreconditionError(f"vertex {v} has degree {g.degree(v)} < 4")
    candidates = PairSet.complete(g, v).ordered()
    if v in info.cut_vertices:
        block_of = {}
        for i, blk in enumerate(info.blocks):
            for eid in blk:
                block_of[eid] = i
        candidates = [
            (a, b)
            for a, b in candidates
            if a[0] in block_of and b[0] in block_of and block_of[a[0]] != block_of[b[0]]
        ]
    for pair in candidates:
        g1, rec = split_off(g, v, pair)
        if is_bridgeless(g1):
            yield g1, pair, rec


def fleischner_split(g: SignedGraph, v: int) -> tuple[SignedGraph, Pair, SplitOff]:
    """Split two edge-ends off ``v`` (degree >= 4) keeping the graph bridgeless."""
    for found in bridgeless_splits(g, v):
        return found
    raise TheoremViolation(f"no bridgeless split at vertex {v}")


def odd_preserving_split(
    g: SignedGraph, v: int, s: PairSet, lam: int, limit: int = CUT_VERTEX_GATE
) -> tuple[SignedGraph, Pair, SplitOff]:
    """Split a pair of ``s`` off ``v`` so that every odd cut keeps size >= ``lam``.

    Pairs are tried in canonical order and each candidate is re-checked by
    full cut enumeration.
    """
    if lam % 2 == 0:
        raise PreconditionError("lambda_o must be odd")
    if s.vertex != v:
        raise PreconditionError("pair set belongs to another vertex")
    d = g.degree(v)
    if d == lam:
        raise PreconditionError(f"vertex {v} has degree {d} == lambda_o")
    if d < 2:
        raise PreconditionError(f"vertex {v} has degree {d} < 2")
    if not sequentially_connected(s, d):
        raise PreconditionError("pair set is not sequentially connected")
    if odd_edge_connectivity(g, limit) < lam:
        raise PreconditionError(f"graph is not odd-{lam}-edge-connected")
    for pair in s.ordered():
        g1, rec = split_off(g, v, pair)
        if odd_edge_connectivity(g1, limit) >= lam:
            return g1, pair, rec
    raise TheoremViolation(f"every pair at vertex {v} creates an odd cut below {lam}")


def batch_split(
    g: SignedGraph, v: int, a: int, lam: int, limit: int = CUT_VERTEX_GATE
) -> tuple[SignedGraph, int, RewriteTrace]:
    """Move ``a`` edge-ends from ``v`` to one new vertex, odd-``lam``-connectivity kept.

    Runs ``a/2`` odd-preserving pair splits with the complete pair set and
    then identifies the resulting degree-2 vertices.
    """
    d = g.degree(v)
    if a % 2 or a < 2:
        raise PreconditionError("a must be a positive even integer")
    if d <= lam:
        raise PreconditionError(f"vertex {v} needs degree > {lam}, has {d}")
    if a > d - lam:
        raise PreconditionError(f"a={a} exceeds d(v) - lambda_o = {d - lam}")
    trace = RewriteTrace()
    stars = []
    for _ in range(a // 2):
        g, _, rec = odd_preserving_split(g, v, PairSet.complete(g, v), lam, limit)
        trace.append(rec)
        stars.append(rec.new_vertex)
    if len(stars) > 1:
        g, rec = merge_vertices(g, stars[0], stars[1:])
        trace.append(rec)
    return g, stars[0], trace
