"""Turning modulo flows into integer flows on signed graphs.

All converters take a graph and a :class:`FlowAssignment`, never mutate
either, and return a fresh assignment expressed against the input
orientation.  Each result is verified before it is returned; a failed
check raises :class:`TheoremViolation` rather than handing back a bad
flow.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from ._accel import SEARCH_GATE, check_gate, search_gate
from .errors import PreconditionError, TheoremViolation
from .flow import (
    FlowAssignment,
    Orientation,
    check_orientation,
    flip_at,
    integer,
    modulo,
    sym_residue,
    verify,
)
from .sgraph import (
    SignedGraph,
    add_edge,
    bridges,
    contract,
    euler_circuits,
    is_bridgeless,
    strip_loop,
    suppress,
    switch,
)
from .split import bridgeless_splits

# ---------------------------------------------------------------------------
# modulo 2 -> integer 2
# ---------------------------------------------------------------------------


def _require_modulo(g: SignedGraph, f1: FlowAssignment, k: int) -> None:
    check_orientation(g, f1.tau)
    rep = verify(g, f1, modulo(k))
    if rep.missing:
        raise PreconditionError(f"flow has no value on edges {rep.missing}")
    if rep.bad_vertices:
        raise PreconditionError(f"not a modulo {k}-flow: boundary residues {rep.residues} at {rep.bad_vertices}")


def _mod_support(f: FlowAssignment, k: int) -> set[int]:
    return {eid for eid, x in f.value.items() if x % k}


def _euler_lift(g: SignedGraph, supp: set[int], tau: Mapping[int, tuple[int, int]]) -> dict[int, int]:
    """Values +-1 on ``supp`` (relative to ``tau``) forming an integer flow, 0 elsewhere.

    Walks a closed trail per support component carrying a state s: a
    positive step gets (s, -s), a negative step gets (s, s) and flips s.
    """
    out = {eid: 0 for eid in g.edges}
    for trail in euler_circuits(g, supp):
        s = 1
        for eid, tail, head in trail:
            t = [0, 0]
            t[tail] = s
            if g.sign(eid) > 0:
                t[head] = -s
            else:
                t[head] = s
                s = -s
            out[eid] = 1 if tuple(t) == tuple(tau[eid]) else -1
        if s != 1:
            raise TheoremViolation("trail closed with an odd number of negative edges")
    return out


def _negatives_per_component(g: SignedGraph, supp: set[int]) -> list[tuple[list[int], int]]:
    sub = g.edge_subgraph(supp, keep_vertices=False)
    out = []
    for comp in sub.components():
        cs = set(comp)
        neg = sum(1 for eid in supp if g.sign(eid) < 0 and g.edge(eid).u in cs)
        out.append((comp, neg))
    return out


def int2_from_mod2(g: SignedGraph, f1: FlowAssignment) -> FlowAssignment:
    """Integer 2-flow with the same support as a modulo 2-flow.

    Needs an even number of negative edges in every component of the
    support.
    """
    _require_modulo(g, f1, 2)
    supp = _mod_support(f1, 2)
    for comp, neg in _negatives_per_component(g, supp):
        if neg % 2:
            raise PreconditionError(f"support component on vertices {comp} has {neg} negative edges")
    out = FlowAssignment(dict(f1.tau), _euler_lift(g, supp, f1.tau))
    _certify(g, out, integer(2), supp, "int2_from_mod2")
    return out


def _certify(g, out, spec, core: set[int], who: str, core_values=(1, -1)) -> None:
    rep = verify(g, out, spec)
    if not rep:
        raise TheoremViolation(f"{who} produced an invalid flow: {rep.as_dict()}")
    for eid in core:
        if out.value[eid] not in core_values:
            raise TheoremViolation(f"{who}: edge {eid} of the support got {out.value[eid]}")


# ---------------------------------------------------------------------------
# modulo 2 -> integer 3
# ---------------------------------------------------------------------------


def _component_of(g: SignedGraph, v: int) -> set[int]:
    for comp in g.components():
        if v in comp:
            return set(comp)
    raise PreconditionError(f"unknown vertex {v}")  # pragma: no cover


def _int3_rec(g: SignedGraph, supp: set[int], tau: dict[int, tuple[int, int]]) -> dict[int, int]:
    rest = sorted(set(g.edges) - supp)
    if not rest:
        return _euler_lift(g, supp, tau)
    e_star = rest[0]
    if e_star not in bridges(g):
        g1 = g.edge_subgraph(set(g.edges) - {e_star})
        out = _int3_rec(g1, supp, tau)
        out[e_star] = 0
        return out

    e = g.edge(e_star)
    g_cut = g.edge_subgraph(set(g.edges) - {e_star})
    side1 = _component_of(g_cut, e.u)
    side2 = set(g.vertices) - side1
    q1, q2 = g_cut.induced(side1), g_cut.induced(side2)
    s1 = {eid for eid in supp if eid in q1.edges}
    s2 = supp - s1
    neg1 = sum(1 for eid in s1 if g.sign(eid) < 0)
    out: dict[int, int] = {}
    if neg1 % 2 == 0:
        out.update(_int3_rec(q1, s1, tau))
        out.update(_int3_rec(q2, s2, tau))
        out[e_star] = 0
        return out

    # odd/odd: a negative loop at each end of the bridge evens out the parity
    x1, x2 = e.u, e.w
    h1, add1 = add_edge(q1, x1, x1, -1)
    q2 = SignedGraph(q2.vertices, q2.edges, q2.next_vertex, max(q2.next_edge, add1.edge + 1))
    h2, add2 = add_edge(q2, x2, x2, -1)
    t1 = dict(tau)
    t1[add1.edge] = (1, 1)
    t2 = dict(tau)
    t2[add2.edge] = (1, 1)
    g1 = _int3_rec(h1, s1 | {add1.edge}, t1)
    g2 = _int3_rec(h2, s2 | {add2.edge}, t2)
    b1 = sum(g1[eid] * t1[eid][end] for eid, end in q1.halves(x1) if eid != add1.edge)
    b2 = sum(g2[eid] * t2[eid][end] for eid, end in q2.halves(x2) if eid != add2.edge)
    sigma = e.sign
    if b2 != -sigma * b1:
        g1 = {eid: -x for eid, x in g1.items()}
        b1 = -b1
    del g1[add1.edge], g2[add2.edge]
    out.update(g1)
    out.update(g2)
    out[e_star] = -b1 * tau[e_star][0]
    if abs(out[e_star]) != 2:
        raise TheoremViolation(f"bridge {e_star} got value {out[e_star]}, expected +-2")
    return out


def int3_from_mod2(g: SignedGraph, f1: FlowAssignment) -> FlowAssignment:
    """Integer 3-flow whose +-1 edges are exactly the support of a modulo 2-flow.

    ``g`` must be connected and the support must hold an even number of
    negative edges in total.  Bridges outside the support receive +-2 or 0.
    """
    if not g.is_connected():
        raise PreconditionError(f"graph is disconnected: components {g.components()}")
    _require_modulo(g, f1, 2)
    supp = _mod_support(f1, 2)
    neg = sum(1 for eid in supp if g.sign(eid) < 0)
    if neg % 2:
        raise PreconditionError(f"support contains {neg} negative edges (odd)")
    values = _int3_rec(g, set(supp), dict(f1.tau))
    out = FlowAssignment(dict(f1.tau), {eid: values[eid] for eid in g.edges})
    _certify(g, out, integer(3), supp, "int3_from_mod2")
    for eid in set(g.edges) - supp:
        if out.value[eid] not in (0, 2, -2):
            raise TheoremViolation(f"int3_from_mod2: edge {eid} outside the support got {out.value[eid]}")
    return out


# ---------------------------------------------------------------------------
# bounded lift search
# ---------------------------------------------------------------------------


def _lift_search(
    g: SignedGraph, tau: Mapping[int, tuple[int, int]], candidates: Mapping[int, Sequence[int]]
) -> dict[int, int] | None:
    """First assignment from per-edge ``candidates`` with zero boundary everywhere.

    Edges are taken vertex by vertex so vertices close early; a partial
    boundary that the remaining edges cannot cancel prunes the branch.
    """
    order: list[int] = []
    seen: set[int] = set()
    for v in g.sorted_vertices():
        for eid, _ in g.halves(v):
            if eid not in seen:
                seen.add(eid)
                order.append(eid)
    m = len(order)
    verts = g.sorted_vertices()
    idx = {v: i for i, v in enumerate(verts)}
    # per edge: [(vertex index, coefficient)], loops merge into one term
    terms: list[list[tuple[int, int]]] = []
    for eid in order:
        e = g.edge(eid)
        t0, t1 = tau[eid]
        if e.is_loop:
            terms.append([(idx[e.u], t0 + t1)])
        else:
            terms.append([(idx[e.u], t0), (idx[e.w], t1)])
    big = [max((abs(x) for x in candidates[eid]), default=0) for eid in order]
    # remaining[i][v]: largest |contribution| still available at v from edges i..m-1
    remaining = [[0] * len(verts) for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        remaining[i] = list(remaining[i + 1])
        for v, c in terms[i]:
            remaining[i][v] += abs(c) * big[i]
    partial = [0] * len(verts)
    chosen = [0] * m
    cands = [list(candidates[eid]) for eid in order]
    if any(not c for c in cands):
        return None
    pos = [0] * m
    i = 0
    while True:
        if i == m:
            if all(x == 0 for x in partial):
                return {eid: chosen[j] for j, eid in enumerate(order)}
            i -= 1
            if i < 0:
                return None
            for v, c in terms[i]:
                partial[v] -= c * chosen[i]
            pos[i] += 1
            continue
        if pos[i] >= len(cands[i]):
            pos[i] = 0
            i -= 1
            if i < 0:
                return None
            for v, c in terms[i]:
                partial[v] -= c * chosen[i]
            pos[i] += 1
            continue
        x = cands[i][pos[i]]
        ok = True
        for v, c in terms[i]:
            partial[v] += c * x
        for v, _ in terms[i]:
            if abs(partial[v]) > remaining[i + 1][v]:
                ok = False
                break
        if ok:
            chosen[i] = x
            i += 1
        else:
            for v, c in terms[i]:
                partial[v] -= c * x
            pos[i] += 1


# ---------------------------------------------------------------------------
# modulo 3 -> integer 3
# ---------------------------------------------------------------------------


def int3_from_mod3(g: SignedGraph, f1: FlowAssignment, gate: int | None = None) -> FlowAssignment:
    """Integer 3-flow with the support of a modulo 3-flow whose support is bridgeless.

    Each support edge is lifted to one of its two representatives r, r - 3
    (r in {1, 2}).  Should no congruent lift exist, any +-1/+-2 labelling
    of the support is searched before giving up.
    """
    _require_modulo(g, f1, 3)
    supp = _mod_support(f1, 3)
    check_gate(len(supp), search_gate(SEARCH_GATE) if gate is None else gate, "int3_from_mod3")
    sub = g.edge_subgraph(supp)
    if not is_bridgeless(sub):
        raise PreconditionError(f"support has bridges {sorted(bridges(sub))}")
    cands: dict[int, list[int]] = {}
    for eid in sub.edges:
        r = f1.value[eid] % 3
        cands[eid] = [1, -2] if r == 1 else [-1, 2]
    found = _lift_search(sub, f1.tau, cands)
    if found is None:
        found = _lift_search(sub, f1.tau, {eid: [1, -1, 2, -2] for eid in sub.edges})
    if found is None:
        raise TheoremViolation("no integer 3-flow on a bridgeless support")
    value = {eid: found.get(eid, 0) for eid in g.edges}
    out = FlowAssignment(dict(f1.tau), value)
    _certify(g, out, integer(3), supp, "int3_from_mod3", core_values=(1, -1, 2, -2))
    return out


# ---------------------------------------------------------------------------
# modulo 3 -> integer 4
# ---------------------------------------------------------------------------


@dataclass
class Int4Stats:
    """Counters from one run of :func:`int4_from_mod3` (potential checks included)."""

    calls: int = 0
    splits: int = 0
    suppressions: int = 0
    added_edges: int = 0
    contractions: int = 0
    restarts: int = 0
    switches: int = 0
    potential_checks: int = 0


def potential(g: SignedGraph, values: Mapping[int, int]) -> tuple[int, int]:
    """(|edges with value = 0 mod 3|, sum over vertices of |d(v) - 3|)."""
    return (
        sum(1 for eid in g.edges if values[eid] % 3 == 0),
        sum(abs(g.degree(v) - 3) for v in g.vertices),
    )


def _boundary_of(g: SignedGraph, tau, values, v: int, skip: int | None = None) -> int:
    return sum(values[eid] * tau[eid][end] for eid, end in g.halves(v) if eid != skip)


class _Int4:
    def __init__(self, gate: int | None):
        self.gate = gate
        self.stats = Int4Stats()

    def check(self, child, parent) -> None:
        self.stats.potential_checks += 1
        if not child < parent:
            raise TheoremViolation(f"potential did not decrease: {parent} -> {child}")

    def run(self, g: SignedGraph, tau: Orientation, f1: dict[int, int]) -> dict[int, int]:
        self.stats.calls += 1
        f1 = {eid: sym_residue(x, 3) for eid, x in f1.items()}
        restored: dict[int, int] = {}
        for eid in g.loops():
            if f1[eid] == 0:
                restored[eid] = 0
            elif g.sign(eid) > 0:
                # halves of a positive loop cancel, any nonzero value works
                restored[eid] = f1[eid]
            else:
                continue
            g, _ = strip_loop(g, eid)
        tau = {eid: tau[eid] for eid in g.edges}
        f1 = {eid: f1[eid] for eid in g.edges}
        out = self._solve(g, tau, f1)
        out.update(restored)
        return out

    def _solve(self, g, tau, f1) -> dict[int, int]:
        supp = {eid for eid, x in f1.items() if x % 3}
        if not supp:
            return {eid: 0 for eid in g.edges}
        if len(supp) == g.num_edges:
            return self._full_support(g, tau, f1)
        comps = [c for c in g.components() if any(g.halves(v) for v in c)]
        if len(comps) == 1:
            return self._solve_connected(g, tau, f1, supp)
        # the reduction works on one connected piece at a time
        out: dict[int, int] = {}
        for comp in comps:
            sub = g.induced(comp)
            out.update(self._solve(sub, {e: tau[e] for e in sub.edges}, {e: f1[e] for e in sub.edges}))
        return out

    def _solve_connected(self, g, tau, f1, supp) -> dict[int, int]:
        here = potential(g, f1)
        high = [v for v in g.sorted_vertices() if g.degree(v) >= 4]
        if high:
            return self._split(g, tau, f1, high[0], here)
        mixed = None
        for x in g.sorted_vertices():
            ids = {eid for eid, _ in g.halves(x)}
            if ids & supp and ids - supp:
                mixed = x
                break
        if mixed is None:  # pragma: no cover - a connected graph meeting both sides has one
            raise TheoremViolation("connected graph without a vertex meeting support and complement")
        return self._contract(g, tau, f1, mixed, here)

    def _full_support(self, g, tau, f1):
        res = int3_from_mod3(g, FlowAssignment(dict(tau), dict(f1)), gate=self.gate)
        return dict(res.value)

    def _split(self, g, tau, f1, v, here):
        for g1, _, rec in bridgeless_splits(g, v):
            vs = rec.new_vertex
            g2, tau2, g1vals, lifts, suppressed = self._reduce_split(g1, tau, f1, v, vs)
            child = potential(g2, g1vals)
            # a vertex left holding only a loop would make the added edge a bridge
            if child < here and is_bridgeless(g2):
                break
        else:
            raise TheoremViolation(f"no bridgeless split at {v} lowers the potential")
        self.stats.splits += 1
        if suppressed:
            self.stats.suppressions += suppressed
        else:
            self.stats.added_edges += 1
        self.check(child, here)
        g2vals = self.run(g2, tau2, g1vals)
        for lift in reversed(lifts):
            lift(g2vals)
        return {eid: g2vals[eid] for eid in g.edges}

    def _reduce_split(self, g1, tau, f1, v, vs):
        """Suppress or bridge the two halves of a split; returns the reduced instance and lifts."""
        tau = dict(tau)
        vals = dict(f1)
        lifts = []
        b = sym_residue(_boundary_of(g1, tau, vals, vs), 3)
        g2 = g1
        if b == 0:
            for w in (vs, v):
                hs = g2.halves(w)
                if len(hs) != 2 or hs[0][0] == hs[1][0]:
                    continue
                g2, rec = suppress(g2, w)
                (e1, end1), (e2, end2) = rec.first, rec.second
                new = rec.new_edge
                t_first = tau[e1][end1]
                t_second = tau[e2][end2]
                t0 = tau[e1][1 - end1]
                tau[new] = (t0, -g2.sign(new) * t0)
                vals[new] = vals[e1]
                for eid in (e1, e2):
                    del tau[eid], vals[eid]

                def lift(out, e1=e1, e2=e2, new=new, ts=t_first * t_second):
                    x = out.pop(new)
                    out[e1] = x
                    out[e2] = -x * ts

                lifts.append(lift)
        else:
            g2, rec = add_edge(g1, v, vs, 1)
            new = rec.edge
            tau[new] = (1, -1)
            vals[new] = sym_residue(_boundary_of(g1, tau, vals, vs), 3)

            def lift(out, new=new):
                out.pop(new)

            lifts.append(lift)
        return g2, tau, vals, lifts, sum(1 for _ in lifts) if b == 0 else 0

    def _contract(self, g, tau, f1, x, here):
        supp = {eid for eid, val in f1.items() if val % 3}
        e_star = min(eid for eid, _ in g.halves(x) if eid not in supp)
        gs, taus = g, dict(tau)
        if g.sign(e_star) < 0:
            gs, _ = switch(g, x)
            taus = flip_at(g, taus, x)
            self.stats.switches += 1
        end_x = 0 if gs.edge(e_star).u == x else 1
        gc, _ = contract(gs, e_star)
        fc = {eid: val for eid, val in f1.items() if eid != e_star}
        tc = {eid: t for eid, t in taus.items() if eid != e_star}
        self.stats.contractions += 1
        self.check(potential(gc, fc), here)
        f2c = self.run(gc, tc, fc)
        d = _boundary_of(gs, taus, {**f2c, e_star: 0}, x, skip=e_star)
        t_x = taus[e_star][end_x]
        if d % 3:
            h1 = {eid: sym_residue(val, 3) for eid, val in f2c.items()}
            h1[e_star] = sym_residue(-d * t_x, 3)
            self.stats.restarts += 1
            self.check(potential(gs, h1), here)
            return self.run(gs, taus, h1)
        if abs(d) not in (0, 3):
            raise TheoremViolation(f"boundary {d} at {x} is not in {{0, +-3}}")
        out = dict(f2c)
        out[e_star] = -d * t_x
        return out


def int4_from_mod3(g: SignedGraph, f1: FlowAssignment, gate: int | None = None) -> FlowAssignment:
    """Integer 4-flow on a bridgeless graph, +-1 or +-2 on the support of a modulo 3-flow.

    Returns the flow; see :func:`int4_from_mod3_stats` for the run counters.
    """
    return int4_from_mod3_stats(g, f1, gate)[0]


def int4_from_mod3_stats(
    g: SignedGraph, f1: FlowAssignment, gate: int | None = None
) -> tuple[FlowAssignment, Int4Stats]:
    bad = bridges(g)
    if bad:
        raise PreconditionError(f"graph has bridges {sorted(bad)}")
    _require_modulo(g, f1, 3)
    supp = _mod_support(f1, 3)
    solver = _Int4(gate)
    values = solver.run(g, dict(f1.tau), dict(f1.value))
    out = FlowAssignment(dict(f1.tau), {eid: values[eid] for eid in g.edges})
    _certify(g, out, integer(4), supp, "int4_from_mod3", core_values=(1, -1, 2, -2))
    return out, solver.stats


# ---------------------------------------------------------------------------
# modulo k -> integer 2k
# ---------------------------------------------------------------------------


def double_flow_search(g: SignedGraph, f1: FlowAssignment, k: int, gate: int | None = None) -> FlowAssignment:
    """Integer 2k-flow nonzero on the support of a modulo k-flow.

    Lifts congruent to ``f1`` are searched first, then any values at all.
    An input that already is an integer k-flow comes back unchanged.  For
    even k a flow may not exist (a lone negative loop valued k/2 is a
    modulo k-flow), which surfaces as :class:`TheoremViolation`.
    """
    if k < 2:
        raise PreconditionError("k must be at least 2")
    check_gate(g.num_edges, search_gate(SEARCH_GATE) if gate is None else gate, "double_flow_search")
    _require_modulo(g, f1, k)
    if verify(g, f1, integer(k)):
        return f1.copy()
    supp = _mod_support(f1, k)
    cands = {}
    for eid in g.edges:
        r = f1.value[eid] % k
        lifts = [x for x in range(-(2 * k - 1), 2 * k) if x % k == r and (x != 0 or eid not in supp)]
        cands[eid] = sorted(lifts, key=lambda x: (abs(x), -x))
    found = _lift_search(g, f1.tau, cands)
    if found is None:
        span = sorted(range(-(2 * k - 1), 2 * k), key=lambda x: (abs(x), -x))
        found = _lift_search(g, f1.tau, {eid: [x for x in span if x or eid not in supp] for eid in g.edges})
    if found is None:
        raise TheoremViolation(f"no integer {2 * k}-flow is nonzero on the support of the modulo {k}-flow")
    out = FlowAssignment(dict(f1.tau), found)
    if not verify(g, out, integer(2 * k)) or any(out.value[e] == 0 for e in supp):
        raise TheoremViolation("double_flow_search produced an invalid flow")
    return out
