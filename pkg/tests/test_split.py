from __future__ import annotations

import itertools
import math
import random

import pytest

import support
from sgflow import oracle
from sgflow.errors import PreconditionError, TheoremViolation
from sgflow.generate import bowtie
from sgflow.sgraph import build, is_bridgeless, odd_edge_connectivity
from sgflow.split import (
    PairSet,
    batch_split,
    bridgeless_splits,
    fleischner_split,
    odd_preserving_split,
    sequentially_connected,
)


def edge_signs(g):
    return sorted((eid, e.sign) for eid, e in g.edges.items())


# ------------------------------------------------------------------ PairSet


def test_pairset_drops_same_loop_pairs():
    g = build(2, [(0, 0, "-"), (0, 1, "+"), (0, 1, "+")])
    s = PairSet.complete(g, 0)
    assert frozenset({(1, 0), (1, 1)}) not in s.pairs
    assert len(s) == 5


def test_pairset_rejects_foreign_halves():
    g = build(3, [(0, 1, "+"), (1, 2, "+")])
    with pytest.raises(PreconditionError):
        PairSet.of(g, 0, [((1, 0), (2, 1))])


def test_sequentially_connected_examples():
    g = build(2, [(0, 1, "+")] * 5)
    assert sequentially_connected(PairSet.cyclic(g, 0), 5)
    hs = g.halves(0)
    assert sequentially_connected(PairSet.of(g, 0, [(a, b) for a in hs[:2] for b in hs[2:]]), 5)
    assert not sequentially_connected(PairSet(0, frozenset()), 5)
    assert not sequentially_connected(PairSet.of(g, 0, [(hs[0], hs[1]), (hs[2], hs[3])]), 5)


# ------------------------------------------------------------------ Fleischner


def test_fleischner_bowtie_takes_one_edge_per_triangle():
    g = bowtie()
    g1, pair, _ = fleischner_split(g, 0)
    blocks = {1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1}
    assert blocks[pair[0][0]] != blocks[pair[1][0]]
    assert is_bridgeless(g1) and g1.is_connected()
    assert all(g1.degree(v) == 2 for v in g1.vertices)


def test_fleischner_four_parallel_edges():
    g = build(2, [(0, 1, "+")] * 4)
    g1, _, rec = fleischner_split(g, 1)
    assert is_bridgeless(g1) and g1.degree(rec.new_vertex) == 2


def test_fleischner_wheel_hub():
    g = build(5, [(0, i, "+") for i in range(1, 5)] + [(i, i % 4 + 1, "+") for i in range(1, 5)])
    g1, _, _ = fleischner_split(g, 0)
    assert is_bridgeless(g1)


def test_fleischner_preconditions():
    with pytest.raises(PreconditionError):
        fleischner_split(build(3, [(0, 1, "+"), (1, 2, "+"), (2, 0, "+")]), 0)
    with pytest.raises(PreconditionError):
        fleischner_split(build(3, [(0, 1, "+"), (0, 1, "+"), (0, 1, "+"), (0, 2, "+")]), 0)


def test_fleischner_exhaustive_small():
    """Every bridgeless graph and every vertex of degree >= 4 has a bridgeless split."""
    count = 0
    for g in support.small_multigraphs(4, 7, loops=True, connected=True):
        if not is_bridgeless(g):
            continue
        for v in g.sorted_vertices():
            if g.degree(v) >= 4:
                g1, pair, rec = fleischner_split(g, v)
                count += 1
                assert is_bridgeless(g1)
                assert edge_signs(g1) == edge_signs(g)
                assert g1.degree(rec.new_vertex) == 2
    assert count > 500


def test_bridgeless_splits_only_yield_bridgeless():
    g = build(3, [(0, 1, "+"), (0, 1, "+"), (0, 2, "+"), (0, 2, "+"), (1, 2, "+")])
    out = list(bridgeless_splits(g, 0))
    assert out and all(is_bridgeless(g1) for g1, _, _ in out)


# ------------------------------------------------------------------ odd-preserving split


def test_odd_preserving_k4_not_applicable():
    g = build(4, [(a, b, "+") for a, b in itertools.combinations(range(4), 2)])
    with pytest.raises(PreconditionError):
        odd_preserving_split(g, 0, PairSet.cyclic(g, 0), 3)


def test_odd_preserving_k5_keeps_infinite():
    g = build(5, [(a, b, "+") for a, b in itertools.combinations(range(5), 2)])
    assert odd_edge_connectivity(g) == math.inf
    for v in range(5):
        for lam in (1, 3, 5, 7):
            g1, _, _ = odd_preserving_split(g, v, PairSet.cyclic(g, v), lam)
            assert odd_edge_connectivity(g1) >= lam


def test_odd_preserving_five_parallel():
    g = build(2, [(0, 1, "+")] * 5)
    g1, _, _ = odd_preserving_split(g, 0, PairSet.complete(g, 0), 3)
    assert odd_edge_connectivity(g1) == 3
    assert oracle.min_odd_cut(g1)[0] == 3


def test_odd_preserving_preconditions():
    g = build(2, [(0, 1, "+")] * 5)
    with pytest.raises(PreconditionError):
        odd_preserving_split(g, 0, PairSet.complete(g, 0), 4)
    with pytest.raises(PreconditionError):
        odd_preserving_split(g, 0, PairSet.complete(g, 0), 5)
    with pytest.raises(PreconditionError):
        odd_preserving_split(g, 0, PairSet(0, frozenset()), 3)
    with pytest.raises(PreconditionError):
        odd_preserving_split(g, 0, PairSet.complete(g, 1), 3)
    weak = build(3, [(0, 1, "+"), (1, 2, "+"), (1, 2, "+"), (1, 2, "+")])
    with pytest.raises(PreconditionError):
        odd_preserving_split(weak, 1, PairSet.complete(weak, 1), 3)


def test_odd_preserving_rechecked_by_cut_oracle():
    rng = random.Random(6)
    done = 0
    while done < 300:
        n = rng.randint(2, 6)
        g = support.random_signed(rng, n, rng.randint(n, 14), 0.3, loops=True)
        oec = odd_edge_connectivity(g)
        lam = rng.choice([x for x in (1, 3, 5) if oec == math.inf or x <= oec] or [1])
        v = rng.choice(g.sorted_vertices())
        d = g.degree(v)
        s = PairSet.complete(g, v)
        if d < 2 or d == lam or not sequentially_connected(s, d):
            continue
        try:
            g1, pair, rec = odd_preserving_split(g, v, s, lam)
        except TheoremViolation:
            pytest.fail("odd-preserving split exhausted its pairs")
        done += 1
        assert oracle.min_odd_cut(g1)[0] >= lam
        assert edge_signs(g1) == edge_signs(g)
        assert set(pair) <= set(g.halves(v))


# ------------------------------------------------------------------ batch split


def test_batch_split_degree_nine():
    g = build(4, [(0, 1, "+")] * 3 + [(0, 2, "+")] * 3 + [(0, 3, "+")] * 3 + [(1, 2, "+"), (2, 3, "+"), (3, 1, "+")])
    assert g.degree(0) == 9
    assert odd_edge_connectivity(g) >= 3
    g1, vs, trace = batch_split(g, 0, 6, 3)
    assert g1.degree(0) == 3 and g1.degree(vs) == 6
    assert odd_edge_connectivity(g1) >= 3
    assert trace.replay(g) == g1


def test_batch_split_a2_is_one_split():
    g = build(2, [(0, 1, "+")] * 5)
    g1, vs, trace = batch_split(g, 0, 2, 3)
    g2, _, rec = odd_preserving_split(g, 0, PairSet.complete(g, 0), 3)
    assert len(trace) == 1 and g1 == g2 and vs == rec.new_vertex


def test_batch_split_leaves_lambda():
    g = build(2, [(0, 1, "+")] * 7)
    g1, vs, _ = batch_split(g, 0, 4, 3)
    assert g1.degree(0) == 3 and g1.degree(vs) == 4


def test_batch_split_preconditions():
    g = build(2, [(0, 1, "+")] * 5)
    with pytest.raises(PreconditionError):
        batch_split(g, 0, 3, 3)
    with pytest.raises(PreconditionError):
        batch_split(g, 0, 4, 3)
    with pytest.raises(PreconditionError):
        batch_split(g, 0, 2, 5)
