"""Plain-text graph (``sgf 1``) and flow (``flw 1``) files.

Graph file::

    sgf 1
    v 3
    e 1 0 1 +
    e 2 1 2 -

Flow file: ``o <edge> <+|-> <+|->`` gives tau at the first and second
endpoint, ``f <edge> <int>`` the value.  ``#`` starts a comment.  The
canonical form lists edges by ascending id, all ``o`` lines before all
``f`` lines, and ends with a newline.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError, PreconditionError
from .flow import FlowAssignment
from .sgraph import Edge, SignedGraph

_SIGN = {"+": 1, "-": -1}


def _lines(text: str):
    for no, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", no) from None


def _sign(tok: str, no: int) -> int:
    if tok not in _SIGN:
        raise ParseError(f"expected '+' or '-', got {tok!r}", no)
    return _SIGN[tok]


def parse_graph(text: str) -> SignedGraph:
    it = _lines(text)
    first = next(it, None)
    if first is None or first[1] != ["sgf", "1"]:
        raise ParseError("missing header 'sgf 1'", first[0] if first else 1)
    n = None
    edges: dict[int, Edge] = {}
    for no, toks in it:
        if toks[0] == "v":
            if n is not None:
                raise ParseError("duplicate 'v' line", no)
            if len(toks) != 2:
                raise ParseError("expected 'v <n>'", no)
            n = _int(toks[1], no, "vertex count")
            if n < 0:
                raise ParseError("vertex count must be non-negative", no)
        elif toks[0] == "e":
            if n is None:
                raise ParseError("'e' line before 'v' line", no)
            if len(toks) != 5:
                raise ParseError("expected 'e <id> <u> <w> <+|->'", no)
            eid = _int(toks[1], no, "edge id")
            u = _int(toks[2], no, "endpoint")
            w = _int(toks[3], no, "endpoint")
            s = _sign(toks[4], no)
            if eid < 1:
                raise ParseError(f"edge id must be positive, got {eid}", no)
            if eid in edges:
                raise ParseError(f"duplicate edge id {eid}", no)
            if not (0 <= u < n and 0 <= w < n):
                raise ParseError(f"endpoint out of range 0..{n - 1}", no)
            edges[eid] = Edge(u, w, s)
        else:
            raise ParseError(f"unknown record {toks[0]!r}", no)
    if n is None:
        raise ParseError("missing 'v' line", 1)
    return SignedGraph(range(n), edges)


def serialize_graph(g: SignedGraph) -> str:
    n = g.num_vertices
    if g.vertices != frozenset(range(n)):
        raise PreconditionError("graph files need vertices 0..n-1")
    out = ["sgf 1", f"v {n}"]
    for eid, e in sorted(g.edges.items()):
        out.append(f"e {eid} {e.u} {e.w} {'+' if e.sign > 0 else '-'}")
    return "\n".join(out) + "\n"


def parse_flow(text: str, g: SignedGraph) -> FlowAssignment:
    """Flow file against its graph; orientations must obey the sign law."""
    it = _lines(text)
    first = next(it, None)
    if first is None or first[1] != ["flw", "1"]:
        raise ParseError("missing header 'flw 1'", first[0] if first else 1)
    tau: dict[int, tuple[int, int]] = {}
    value: dict[int, int] = {}
    for no, toks in it:
        kind = toks[0]
        if kind not in ("o", "f"):
            raise ParseError(f"unknown record {kind!r}", no)
        if len(toks) < 2:
            raise ParseError(f"'{kind}' line needs an edge id", no)
        eid = _int(toks[1], no, "edge id")
        if eid not in g.edges:
            raise ParseError(f"edge {eid} is not in the graph", no)
        if kind == "o":
            if len(toks) != 4:
                raise ParseError("expected 'o <id> <+|-> <+|->'", no)
            if eid in tau:
                raise ParseError(f"duplicate orientation for edge {eid}", no)
            t = (_sign(toks[2], no), _sign(toks[3], no))
            if t[0] * t[1] != -g.sign(eid):
                raise ParseError(f"orientation {toks[2]} {toks[3]} breaks the sign law on edge {eid}", no)
            tau[eid] = t
        else:
            if len(toks) != 3:
                raise ParseError("expected 'f <id> <int>'", no)
            if eid in value:
                raise ParseError(f"duplicate value for edge {eid}", no)
            value[eid] = _int(toks[2], no, "flow value")
    return FlowAssignment(tau, value)


def serialize_flow(fa: FlowAssignment) -> str:
    out = ["flw 1"]
    for eid in sorted(fa.tau):
        t0, t1 = fa.tau[eid]
        out.append(f"o {eid} {'+' if t0 > 0 else '-'} {'+' if t1 > 0 else '-'}")
    for eid in sorted(fa.value):
        out.append(f"f {eid} {fa.value[eid]}")
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> SignedGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def read_flow(path: str | Path, g: SignedGraph) -> FlowAssignment:
    return parse_flow(Path(path).read_text(encoding="utf-8"), g)


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="\n")
