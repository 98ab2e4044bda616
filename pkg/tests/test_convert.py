from __future__ import annotations

import random

import pytest

import support
from sgflow import oracle
from sgflow.convert import (
    double_flow_search,
    int2_from_mod2,
    int3_from_mod2,
    int3_from_mod3,
    int4_from_mod3,
    int4_from_mod3_stats,
    potential,
)
from sgflow.errors import GateExceeded, PreconditionError, TheoremViolation
from sgflow.flow import FlowAssignment, canonical_orientation, integer, modulo, verify
from sgflow.generate import fig1, two_triangles_bridge
from sgflow.sgraph import build, is_bridgeless


def ones(g, eids=None):
    eids = set(g.edges) if eids is None else set(eids)
    return FlowAssignment(canonical_orientation(g), {e: (1 if e in eids else 0) for e in g.edges})


def supp(fa):
    return {e for e, x in fa.value.items() if x}


# ------------------------------------------------------------------ mod 2 -> int 2


def test_int2_two_negative_loops():
    g = build(1, [(0, 0, "-"), (0, 0, "-")])
    out = int2_from_mod2(g, ones(g))
    assert verify(g, out, integer(2, True))
    # one loop pushes out, the other in
    assert sorted(out.tau[e][0] * out.value[e] for e in g.edges) == [-1, 1]


def test_int2_positive_digon():
    g = build(2, [(0, 1, "+"), (0, 1, "+")])
    out = int2_from_mod2(g, ones(g))
    assert verify(g, out, integer(2, True))


def test_int2_triangle_two_negative():
    g = build(3, [(0, 1, "-"), (1, 2, "-"), (2, 0, "+")])
    out = int2_from_mod2(g, ones(g))
    assert verify(g, out, integer(2, True))


def test_int2_rejects_odd_negative_component():
    g = build(3, [(0, 1, "-"), (1, 2, "+"), (2, 0, "+")])
    with pytest.raises(PreconditionError):
        int2_from_mod2(g, ones(g))


def test_int2_rejects_non_flow():
    g = build(2, [(0, 1, "+")])
    with pytest.raises(PreconditionError):
        int2_from_mod2(g, ones(g))


def test_int2_keeps_support_on_pieces():
    # two disjoint digons plus a chord left out of the support
    g = build(4, [(0, 1, "+"), (0, 1, "-"), (2, 3, "-"), (2, 3, "-"), (1, 2, "+")])
    f1 = ones(g, [1, 2, 3, 4])
    with pytest.raises(PreconditionError):
        int2_from_mod2(g, f1)
    g2 = build(4, [(0, 1, "+"), (0, 1, "+"), (2, 3, "-"), (2, 3, "-"), (1, 2, "+")])
    out = int2_from_mod2(g2, ones(g2, [1, 2, 3, 4]))
    assert verify(g2, out, integer(2)) and supp(out) == {1, 2, 3, 4}


# ------------------------------------------------------------------ mod 2 -> int 3


def test_int3_from_mod2_full_support_matches_int2():
    g = build(3, [(0, 1, "-"), (1, 2, "-"), (2, 0, "+")])
    a = int3_from_mod2(g, ones(g))
    b = int2_from_mod2(g, ones(g))
    assert verify(g, a, integer(3)) and a.value == b.value


def test_int3_from_mod2_two_triangles_bridge():
    g = two_triangles_bridge()
    f1 = ones(g, [1, 2, 3, 4, 5, 6])
    out = int3_from_mod2(g, f1)
    assert verify(g, out, integer(3))
    assert abs(out.value[7]) == 2
    assert all(abs(out.value[e]) == 1 for e in range(1, 7))


def test_int3_from_mod2_non_bridge_outside_support_is_zero():
    g = build(3, [(0, 1, "+"), (1, 2, "+"), (2, 0, "+"), (0, 1, "+")])
    out = int3_from_mod2(g, ones(g, [1, 2, 3]))
    assert out.value[4] == 0 and verify(g, out, integer(3))


def test_int3_from_mod2_rejects_disconnected_and_odd():
    g = build(4, [(0, 1, "+"), (0, 1, "+"), (2, 3, "+"), (2, 3, "+")])
    with pytest.raises(PreconditionError):
        int3_from_mod2(g, ones(g))
    h = build(1, [(0, 0, "-")])
    with pytest.raises(PreconditionError):
        int3_from_mod2(h, ones(h))


def test_int3_from_mod2_odd_negatives_per_component_but_even_total():
    # each triangle alone is unbalanced; together the support is fine
    g = two_triangles_bridge()
    out = int3_from_mod2(g, ones(g, range(1, 7)))
    assert {e for e, x in out.value.items() if abs(x) == 1} == set(range(1, 7))


def test_int3_from_mod2_negative_loop_gadgets():
    g = build(3, [(0, 0, "-"), (0, 1, "+"), (1, 2, "+"), (2, 2, "-")])
    out = int3_from_mod2(g, ones(g, [1, 4]))
    assert verify(g, out, integer(3))
    assert abs(out.value[1]) == abs(out.value[4]) == 1
    assert abs(out.value[2]) == abs(out.value[3]) == 2


# ------------------------------------------------------------------ mod 3 -> int 3


def test_int3_from_mod3_cycle():
    g = build(3, [(0, 1, "+"), (1, 2, "+"), (2, 0, "+")])
    out = int3_from_mod3(g, ones(g))
    assert out.value == {1: 1, 2: 1, 3: 1}


def test_int3_from_mod3_residue_two_cycle():
    g = build(3, [(0, 1, "+"), (1, 2, "+"), (2, 0, "+")])
    f1 = FlowAssignment(canonical_orientation(g), {1: 2, 2: 2, 3: 2})
    out = int3_from_mod3(g, f1)
    assert out.value == {1: -1, 2: -1, 3: -1}


def test_int3_from_mod3_is_congruent_on_random_bridgeless_supports():
    rng = random.Random(9)
    done = 0
    while done < 300:
        n = rng.randint(1, 6)
        g = support.random_signed(rng, n, rng.randint(max(n - 1, 1), 11), 0.4)
        flows = oracle.iter_flows(g, modulo(3), allowed={e: [0, 1, -1] for e in g.edges}, limit=64)
        flows = [f for f in flows if supp(f) and is_bridgeless(g.edge_subgraph(supp(f)))]
        if not flows:
            continue
        f1 = flows[rng.randrange(len(flows))]
        out = int3_from_mod3(g, f1)
        done += 1
        assert verify(g, out, integer(3))
        assert supp(out) == supp(f1)
        assert all((out.value[e] - f1.value[e]) % 3 == 0 for e in g.edges)


def test_int3_from_mod3_rejects_bridged_support():
    g = fig1()
    fa = oracle.search_flow(g, modulo(3, True), allowed={e: [1, -1] for e in g.edges})
    with pytest.raises(PreconditionError, match="bridges"):
        int3_from_mod3(g, fa)


def test_int3_from_mod3_gate():
    g = build(2, [(0, 1, "+")] * 26)
    f1 = FlowAssignment(
        {e: ((1, -1) if e % 2 else (-1, 1)) for e in g.edges},
        {e: 1 for e in g.edges},
    )
    with pytest.raises(GateExceeded):
        int3_from_mod3(g, f1)


# ------------------------------------------------------------------ mod 3 -> int 4


def test_int4_zero_flow():
    g = build(3, [(0, 1, "+"), (1, 2, "+"), (2, 0, "-"), (0, 1, "+")])
    out = int4_from_mod3(g, FlowAssignment(canonical_orientation(g), {e: 0 for e in g.edges}))
    assert set(out.value.values()) == {0}


def test_int4_k4_triangle_support():
    g = build(4, [(0, 1, "+"), (1, 2, "+"), (2, 0, "+"), (0, 3, "+"), (1, 3, "+"), (2, 3, "+")])
    out, stats = int4_from_mod3_stats(g, ones(g, [1, 2, 3]))
    assert verify(g, out, integer(4))
    assert all(abs(out.value[e]) in (1, 2) for e in (1, 2, 3))
    assert all(abs(out.value[e]) in (0, 3) for e in (4, 5, 6))
    assert stats.potential_checks >= 1


def test_int4_rejects_bridges():
    g = fig1()
    fa = oracle.search_flow(g, modulo(3, True), allowed={e: [1, -1] for e in g.edges})
    with pytest.raises(PreconditionError, match="bridges"):
        int4_from_mod3(g, fa)


def test_fig1_has_no_integer_4_flow_at_all():
    """Each spoke is a bridge; an integer flow forces even values there, and three +-2 cannot cancel."""
    g = fig1()
    assert oracle.search_flow(g, integer(4, True)) is None
    for spoke in (13, 14, 15):
        vals = {f.value[spoke] for f in oracle.iter_flows(g, integer(4), limit=10**5)}
        assert vals <= {0, 2, -2}


def test_potential_counts():
    g = build(2, [(0, 1, "+")] * 4)
    assert potential(g, {1: 1, 2: 0, 3: 3, 4: -1}) == (2, 2)


def test_int4_on_all_small_bridgeless_signed_graphs():
    inst = 0
    for g0 in support.atlas(5, 8):
        if g0.num_edges == 0 or not is_bridgeless(g0):
            continue
        for g in support.switching_representatives(g0):
            for f1 in oracle.iter_flows(g, modulo(3), allowed={e: [0, 1, -1] for e in g.edges}, limit=200):
                out = int4_from_mod3(g, f1)
                inst += 1
                assert verify(g, out, integer(4))
                assert all(abs(out.value[e]) in (1, 2) for e in supp(f1))
                assert all(abs(x) <= 3 for x in out.value.values())
    assert inst > 1000


def test_int4_on_random_loopy_multigraphs():
    rng = random.Random(17)
    done = 0
    while done < 400:
        n = rng.randint(1, 6)
        g = support.random_signed(rng, n, rng.randint(max(n - 1, 1), 11), 0.4, loops=True)
        if not is_bridgeless(g):
            continue
        flows = oracle.iter_flows(g, modulo(3), allowed={e: [0, 1, -1] for e in g.edges}, limit=64)
        f1 = flows[rng.randrange(len(flows))]
        out = int4_from_mod3(g, f1)
        done += 1
        assert verify(g, out, integer(4))
        assert all(abs(out.value[e]) in (1, 2) for e in supp(f1))


# ------------------------------------------------------------------ mod k -> int 2k


def test_double_flow_returns_integer_input_unchanged():
    g = build(3, [(0, 1, "+"), (1, 2, "+"), (2, 0, "+")])
    f1 = ones(g)
    out = double_flow_search(g, f1, 3)
    assert out.value == f1.value


def test_double_flow_two_negative_loops():
    g = build(1, [(0, 0, "-"), (0, 0, "-")])
    f1 = FlowAssignment({1: (1, 1), 2: (1, 1)}, {1: 1, 2: 2})
    out = double_flow_search(g, f1, 3)
    assert verify(g, out, integer(6))
    assert all(x != 0 and (x - f1.value[e]) % 3 == 0 for e, x in out.value.items())


def test_double_flow_rejects_non_modulo_input():
    g = build(1, [(0, 0, "-")])
    with pytest.raises(PreconditionError):
        double_flow_search(g, FlowAssignment({1: (1, 1)}, {1: 1}), 3)


def test_double_flow_lone_negative_loop_has_no_even_lift():
    """A negative loop valued k/2 is a modulo k-flow for even k, but no integer flow is nonzero on it."""
    g = build(1, [(0, 0, "-")])
    for k in (2, 4):
        f1 = FlowAssignment({1: (1, 1)}, {1: k // 2})
        assert verify(g, f1, modulo(k))
        assert oracle.search_flow(g, integer(2 * k, True)) is None
        with pytest.raises(TheoremViolation):
            double_flow_search(g, f1, k)


def _no_supporting_flow(g, f1, k):
    s = {e for e, x in f1.value.items() if x % k}
    allowed = {e: [x for x in range(-(2 * k - 1), 2 * k) if x or e not in s] for e in g.edges}
    return oracle.search_flow(g, integer(2 * k), allowed=allowed) is None


def test_double_flow_random():
    rng = random.Random(21)
    missing = {}
    for k in (2, 3, 4, 5):
        done = missing[k] = 0
        while done < 60:
            n = rng.randint(1, 5)
            g = support.random_signed(rng, n, rng.randint(max(n - 1, 1), 8), 0.4)
            flows = oracle.iter_flows(g, modulo(k), limit=32)
            if not flows:
                continue
            f1 = flows[rng.randrange(len(flows))]
            done += 1
            try:
                out = double_flow_search(g, f1, k)
            except TheoremViolation:
                # only allowed when the oracle agrees nothing exists
                assert _no_supporting_flow(g, f1, k)
                missing[k] += 1
                continue
            assert verify(g, out, integer(2 * k))
            assert {e for e, x in f1.value.items() if x % k} <= supp(out)
    assert missing[3] == missing[5] == 0


def test_converters_do_not_mutate_inputs():
    g = two_triangles_bridge()
    f1 = ones(g, range(1, 7))
    before = (dict(f1.tau), dict(f1.value))
    int3_from_mod2(g, f1)
    assert (f1.tau, f1.value) == before
