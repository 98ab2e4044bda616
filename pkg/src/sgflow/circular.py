"""Integer circular (2 + 1/p)-flows from modulo (2p+1)-orientations.

Mixed vertices are split one in/out pair at a time (keeping odd
connectivity) and the new degree-2 vertex is suppressed.  Once every
vertex is all-out or all-in, a (p, mu)-factor F gives the flow:
``p`` off F and ``-(p+1)`` on F.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from ._accel import CUT_VERTEX_GATE
from .errors import PreconditionError, TheoremViolation
from .factor import FactorSubgraph, p_mu_factor
from .flow import FlowAssignment, Orientation, circular_integer, is_modulo_orientation, verify
from .sgraph import RewriteTrace, SignedGraph, StripLoop, Suppress, odd_edge_connectivity, strip_loop, suppress
from .split import PairSet, odd_preserving_split


def _directions(tau: Mapping[int, tuple[int, int]], g: SignedGraph, v: int):
    out = [h for h in g.halves(v) if tau[h[0]][h[1]] > 0]
    inn = [h for h in g.halves(v) if tau[h[0]][h[1]] < 0]
    return out, inn


def is_mixed(g: SignedGraph, tau: Mapping[int, tuple[int, int]], v: int) -> bool:
    out, inn = _directions(tau, g, v)
    return bool(out) and bool(inn)


def mixed_vertex_pairs(g: SignedGraph, tau: Mapping[int, tuple[int, int]], v: int) -> PairSet:
    """All (outgoing, incoming) half-edge pairs at a mixed vertex ``v``."""
    out, inn = _directions(tau, g, v)
    if not out or not inn:
        raise PreconditionError(f"vertex {v} is not mixed")
    return PairSet.of(g, v, ((a, b) for a in out for b in inn))


@dataclass
class CircularResult:
    """Flow on the input graph plus the intermediate objects that certify it."""

    flow: FlowAssignment
    trace: RewriteTrace
    uniform_graph: SignedGraph
    uniform_tau: Orientation
    factor: FactorSubgraph
    mu: dict[int, int] = field(default_factory=dict)


def integer_circular_from_orientation(
    g: SignedGraph, tau: Mapping[int, tuple[int, int]], p: int, limit: int = CUT_VERTEX_GATE
) -> FlowAssignment:
    """Integer flow with p <= |f| <= p+1 on an odd-(2p+1)-edge-connected graph."""
    return circular_pipeline(g, tau, p, limit).flow


def circular_pipeline(
    g: SignedGraph, tau: Mapping[int, tuple[int, int]], p: int, limit: int = CUT_VERTEX_GATE
) -> CircularResult:
    if p < 1:
        raise PreconditionError("p must be positive")
    k = 2 * p + 1
    tau = {eid: tuple(t) for eid, t in tau.items()}
    neg_loops = [eid for eid in g.loops() if g.sign(eid) < 0]
    if neg_loops:
        raise PreconditionError(f"negative loops {neg_loops} are not supported")
    if not is_modulo_orientation(g, tau, p):
        raise PreconditionError(f"orientation is not a modulo {k}-orientation")
    if odd_edge_connectivity(g, limit) < k:
        raise PreconditionError(f"graph is not odd-{k}-edge-connected")

    trace = RewriteTrace()
    h = g
    t = {eid: tau[eid] for eid in g.edges}

    def strip_positive_loops(h, t):
        for eid in h.loops():
            if h.sign(eid) > 0:
                h, rec = strip_loop(h, eid)
                trace.append(rec)
                del t[eid]
        return h

    h = strip_positive_loops(h, t)
    while True:
        mixed = [v for v in h.sorted_vertices() if is_mixed(h, t, v)]
        if not mixed:
            break
        v = mixed[0]
        if h.degree(v) == k:
            raise TheoremViolation(f"mixed vertex {v} has degree {k}")
        h, _, rec = odd_preserving_split(h, v, mixed_vertex_pairs(h, t, v), k, limit)
        trace.append(rec)
        h, sup = suppress(h, rec.new_vertex)
        trace.append(sup)
        (e1, end1), (e2, end2) = sup.first, sup.second
        t[sup.new_edge] = (t[e1][1 - end1], t[e2][1 - end2])
        del t[e1], t[e2]
        h = strip_positive_loops(h, t)
        if not is_modulo_orientation(h, t, p):
            raise TheoremViolation("orientation stopped being modulo after a rewrite")
        if odd_edge_connectivity(h, limit) < k:
            raise TheoremViolation("a rewrite dropped the odd edge connectivity")

    mu = {}
    for v in h.vertices:
        if h.degree(v) % k:
            raise TheoremViolation(f"uniform vertex {v} has degree {h.degree(v)}")
        mu[v] = h.degree(v) // k
    fac = p_mu_factor(h, p, mu, limit)
    value = {eid: (-(p + 1) if eid in fac.edges else p) for eid in h.edges}

    # lift back through the rewrites, last first
    for rec in reversed(trace.records):
        if isinstance(rec, Suppress):
            x = value.pop(rec.new_edge)
            value[rec.first[0]] = x
            value[rec.second[0]] = x
        elif isinstance(rec, StripLoop):
            value[rec.edge] = p
    flow = FlowAssignment(dict(tau), {eid: value[eid] for eid in g.edges})
    rep = verify(g, flow, circular_integer(k, p))
    if not rep:
        raise TheoremViolation(f"circular pipeline produced an invalid flow: {rep.as_dict()}")
    return CircularResult(flow, trace, h, t, fac, mu)
