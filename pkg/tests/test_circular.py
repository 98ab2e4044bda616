from __future__ import annotations

import random

import pytest

import support
from sgflow import oracle
from sgflow.circular import circular_pipeline, integer_circular_from_orientation, is_mixed, mixed_vertex_pairs
from sgflow.errors import PreconditionError
from sgflow.flow import canonical_orientation, circular_integer, is_modulo_orientation, verify
from sgflow.generate import complete_bipartite
from sgflow.sgraph import StripLoop, build, odd_edge_connectivity


def test_k33_values():
    g = complete_bipartite(3, 3)
    res = circular_pipeline(g, canonical_orientation(g), 1)
    assert set(res.flow.value.values()) == {1, -2}
    assert len(res.trace) == 0
    assert verify(g, res.flow, circular_integer(3, 1))


def test_k55_values():
    g = complete_bipartite(5, 5)
    fa = integer_circular_from_orientation(g, canonical_orientation(g), 2)
    assert set(fa.value.values()) == {2, -3}
    assert verify(g, fa, circular_integer(5, 2))


def test_mixed_vertex_pairs_counts():
    g = build(3, [(0, 1, "+"), (0, 1, "+"), (0, 2, "+")])
    tau = {1: (1, -1), 2: (1, -1), 3: (-1, 1)}
    assert is_mixed(g, tau, 0)
    assert len(mixed_vertex_pairs(g, tau, 0)) == 2
    h = build(3, [(0, 1, "+"), (0, 2, "+")])
    assert len(mixed_vertex_pairs(h, {1: (1, -1), 2: (-1, 1)}, 0)) == 1
    with pytest.raises(PreconditionError):
        mixed_vertex_pairs(h, {1: (1, -1), 2: (1, -1)}, 0)


def test_parallel_pencil_with_mixed_ends():
    g = build(2, [(0, 1, "+")] * 5)
    tau = {1: (1, -1), 2: (1, -1), 3: (1, -1), 4: (1, -1), 5: (-1, 1)}
    assert is_modulo_orientation(g, tau, 1)
    res = circular_pipeline(g, tau, 1)
    assert len(res.trace) > 0
    assert all(not is_mixed(res.uniform_graph, res.uniform_tau, v) for v in res.uniform_graph.vertices)
    assert all(abs(x) in (1, 2) for x in res.flow.value.values())


def test_positive_loop_restored_with_p():
    g = complete_bipartite(3, 3)
    g = build(6, [(e.u, e.w, "+") for e in g.edges.values()] + [(0, 0, "+")])
    tau = canonical_orientation(g)
    loop = g.loops()[0]
    res = circular_pipeline(g, tau, 1)
    assert res.flow.value[loop] == 1
    assert any(isinstance(r, StripLoop) for r in res.trace)
    assert verify(g, res.flow, circular_integer(3, 1))


def test_rejects_negative_loops():
    g = build(1, [(0, 0, "-")] * 3)
    with pytest.raises(PreconditionError):
        circular_pipeline(g, {e: (1, 1) for e in g.edges}, 1)


def test_rejects_non_modulo_orientation():
    g = build(2, [(0, 1, "+")] * 3)
    with pytest.raises(PreconditionError):
        circular_pipeline(g, {1: (1, -1), 2: (1, -1), 3: (-1, 1)}, 1)


def test_rejects_low_odd_connectivity():
    g = build(2, [(0, 1, "+")] * 3)
    tau = {e: (1, -1) for e in g.edges}
    assert is_modulo_orientation(g, tau, 1)
    with pytest.raises(PreconditionError):
        circular_pipeline(g, tau, 2)
    with pytest.raises(PreconditionError):
        circular_pipeline(g, tau, 0)


def test_random_pipeline_runs():
    rng = random.Random(8)
    done = 0
    while done < 60:
        p = rng.choice((1, 2))
        n = rng.randint(2, 5)
        g = support.random_signed(rng, n, rng.randint(n, 12), 0.3, loops=False)
        if odd_edge_connectivity(g) < 2 * p + 1:
            continue
        tau = oracle.search_orientation(g, p)
        if tau is None:
            continue
        res = circular_pipeline(g, tau, p)
        done += 1
        assert verify(g, res.flow, circular_integer(2 * p + 1, p))
        assert res.flow.tau == tau
        assert all(not is_mixed(res.uniform_graph, res.uniform_tau, v) for v in res.uniform_graph.vertices)
        for v, mu in res.mu.items():
            assert res.factor.degree.get(v, 0) == p * mu
