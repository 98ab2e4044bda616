"""Named instance families; every generator is a pure function of (params, seed)."""

from __future__ import annotations

import random
from collections.abc import Callable

from .errors import PreconditionError
from .sgraph import SignedGraph, build, is_bridgeless


def fig1() -> SignedGraph:
    """Three cubic gadgets hung on a centre vertex 0 by positive spokes.

    Gadget i has b = 1+3i, a = 2+3i, c = 3+3i with positive b-a, b-c and
    two parallel negative a-c edges.
    """
    edges = []
    for i in range(3):
        b, a, c = 1 + 3 * i, 2 + 3 * i, 3 + 3 * i
        edges += [(b, a, "+"), (b, c, "+"), (a, c, "-"), (a, c, "-")]
    edges += [(1 + 3 * i, 0, "+") for i in range(3)]
    return build(10, edges)


def negloops(n: int) -> SignedGraph:
    return build(1, [(0, 0, "-")] * n)


def complete_bipartite(a: int, b: int) -> SignedGraph:
    return build(a + b, [(i, a + j, "+") for i in range(a) for j in range(b)])


def bowtie() -> SignedGraph:
    """Two triangles sharing vertex 0."""
    return build(5, [(0, 1, "+"), (1, 2, "+"), (2, 0, "+"), (0, 3, "+"), (3, 4, "+"), (4, 0, "+")])


def two_triangles_bridge() -> SignedGraph:
    """Triangles 0-1-2 and 3-4-5, one negative edge each, joined by the positive edge 2-3."""
    return build(
        6,
        [(0, 1, "-"), (1, 2, "+"), (2, 0, "+"), (3, 4, "-"), (4, 5, "+"), (5, 3, "+"), (2, 3, "+")],
    )


def _signs(rng: random.Random, pairs, negprob: float):
    return [(u, w, "-" if rng.random() < negprob else "+") for u, w in pairs]


def random_connected(n: int, m: int, negprob: float, rng: random.Random) -> SignedGraph:
    """Random spanning tree plus random extra edges (parallel edges allowed, no loops)."""
    if n < 1 or m < n - 1:
        raise PreconditionError("need n >= 1 and m >= n - 1")
    if n == 1 and m > 0:
        raise PreconditionError("a single vertex cannot carry loop-free edges")
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[rng.randrange(i)]) for i in range(1, n)]
    while len(pairs) < m:
        u, w = rng.sample(range(n), 2)
        pairs.append((u, w))
    rng.shuffle(pairs)
    return build(n, _signs(rng, pairs, negprob))


def random_eulerian(n: int, cycles: int, negprob: float, rng: random.Random) -> SignedGraph:
    """Connected union of a Hamiltonian cycle and random extra cycles."""
    if n < 3 or cycles < 1:
        raise PreconditionError("need n >= 3 and at least one cycle")
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[(i + 1) % n]) for i in range(n)]
    for _ in range(cycles - 1):
        c = rng.sample(range(n), rng.randint(2, n))
        pairs += [(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]
    return build(n, _signs(rng, pairs, negprob))


def random_bridgeless_cubic(n: int, negprob: float, rng: random.Random, tries: int = 1000) -> SignedGraph:
    """Connected bridgeless loopless cubic multigraph from the pairing model."""
    if n < 2 or n % 2:
        raise PreconditionError("cubic graphs need an even number of vertices")
    for _ in range(tries):
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        pairs = list(zip(stubs[::2], stubs[1::2]))
        if any(u == w for u, w in pairs):
            continue
        g = build(n, _signs(rng, pairs, negprob))
        if g.is_connected() and is_bridgeless(g):
            return g
    raise PreconditionError(f"no bridgeless cubic graph found in {tries} tries")


def _floats(text: str, count: int, defaults: tuple) -> list:
    parts = [x for x in text.split(",") if x] if text else []
    if len(parts) > count:
        raise PreconditionError(f"expected at most {count} parameters, got {len(parts)}")
    out = list(defaults)
    for i, x in enumerate(parts):
        try:
            out[i] = type(defaults[i])(x)
        except ValueError:
            raise PreconditionError(f"bad parameter {x!r}") from None
    return out


def _fixed(fn: Callable[[], SignedGraph]):
    def make(params: str, rng: random.Random) -> SignedGraph:
        if params:
            raise PreconditionError("family takes no parameters")
        return fn()

    return make


def _negloops(params, rng):
    (n,) = _floats(params, 1, (2,))
    if n < 0:
        raise PreconditionError("negloops needs n >= 0")
    return negloops(n)


def _random(params, rng):
    n, m, q = _floats(params, 3, (6, 9, 0.3))
    return random_connected(n, m, q, rng)


def _random_eulerian(params, rng):
    n, c, q = _floats(params, 3, (6, 2, 0.3))
    return random_eulerian(n, c, q, rng)


def _random_cubic(params, rng):
    n, q = _floats(params, 2, (8, 0.3))
    return random_bridgeless_cubic(n, q, rng)


FAMILIES: dict[str, Callable[[str, random.Random], SignedGraph]] = {
    "fig1": _fixed(fig1),
    "negloops": _negloops,
    "k33": _fixed(lambda: complete_bipartite(3, 3)),
    "k55": _fixed(lambda: complete_bipartite(5, 5)),
    "bowtie": _fixed(bowtie),
    "two-triangles-bridge": _fixed(two_triangles_bridge),
    "random": _random,
    "random-eulerian": _random_eulerian,
    "random-bridgeless-cubic": _random_cubic,
}


def generate(family: str, seed: int = 0) -> SignedGraph:
    """``family`` is ``name`` or ``name:params`` (comma separated), e.g. ``random:6,9,0.3``."""
    name, _, params = family.partition(":")
    if name not in FAMILIES:
        raise PreconditionError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    return FAMILIES[name](params, random.Random(seed))
