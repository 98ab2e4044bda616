"""Command line: ``sgflow verify | convert | analyze | gen | oracle``.

Exit codes: 0 success, 1 verification failed / nothing found / precondition
unmet, 2 usage or parse error, 3 internal error (including a failed
self-check of a conversion).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import convert as conv
from . import oracle
from .circular import integer_circular_from_orientation
from .errors import GateExceeded, ParseError, PreconditionError, SgflowError, TheoremViolation
from .flow import FlowAssignment, FlowSpec, circular_integer, integer, verify
from .generate import generate
from .io import read_flow, read_graph, serialize_flow, serialize_graph, write_text
from .sgraph import bridges_and_blocks, negativeness, odd_edge_connectivity

OK, FAILED, USAGE, INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _spec(text: str, nowhere_zero: bool) -> FlowSpec:
    try:
        return FlowSpec.parse(text, nowhere_zero)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def _jsonable(x):
    return "inf" if x == math.inf else x


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_verify(args) -> int:
    g = read_graph(args.graph)
    fa = read_flow(args.flow, g)
    spec = _spec(args.kind, args.nowhere_zero)
    rep = verify(g, fa, spec)
    _emit(rep.as_dict())
    return OK if rep else FAILED


_CONVERT_TARGET = {
    "2to2": (conv.int2_from_mod2, lambda: integer(2)),
    "2to3": (conv.int3_from_mod2, lambda: integer(3)),
    "3to3": (conv.int3_from_mod3, lambda: integer(3)),
    "3to4": (conv.int4_from_mod3, lambda: integer(4)),
}


def cmd_convert(args) -> int:
    g = read_graph(args.graph)
    mode = args.mode
    if mode.startswith("circ:"):
        p = _positive(mode[5:], "p")
        src = args.orientation or args.flow
        if src is None:
            raise PreconditionError("circ mode needs --orientation")
        fa = read_flow(src, g)
        out = integer_circular_from_orientation(g, fa.tau, p)
        spec = circular_integer(2 * p + 1, p)
    else:
        if args.flow is None:
            raise PreconditionError(f"mode {mode} needs --flow")
        fa = read_flow(args.flow, g)
        if mode.startswith("double:"):
            k = _positive(mode[7:], "k")
            out = conv.double_flow_search(g, fa, k)
            spec = integer(2 * k)
        elif mode in _CONVERT_TARGET:
            fn, target = _CONVERT_TARGET[mode]
            out = fn(g, fa)
            spec = target()
        else:
            raise ParseError(f"unknown mode {mode!r}")
    rep = verify(g, out, spec)
    if not rep:
        print(f"internal error: output fails self-check {rep.as_dict()}", file=sys.stderr)
        return INTERNAL
    text = serialize_flow(out)
    if args.output:
        write_text(args.output, text)
    else:
        sys.stdout.write(text)
    print(f"converted: {spec}", file=sys.stderr)
    return OK


def _positive(text: str, what: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}") from None
    if x < 1:
        raise ParseError(f"{what} must be positive")
    return x


def analyze_report(g, with_negativeness: bool = False) -> dict:
    """The analyze JSON object; keys are stable."""
    info = bridges_and_blocks(g)
    rep = {
        "vertices": g.num_vertices,
        "edges": g.num_edges,
        "negative_edges": len(g.negative_edges()),
        "components": g.components(),
        "bridges": sorted(info.bridges),
        "blocks": [sorted(b) for b in info.blocks],
        "cut_vertices": sorted(info.cut_vertices),
        "odd_edge_connectivity": _jsonable(odd_edge_connectivity(g)),
    }
    if with_negativeness:
        rep["negativeness"] = negativeness(g)
    return rep


def cmd_analyze(args) -> int:
    g = read_graph(args.graph)
    _emit(analyze_report(g, args.negativeness))
    return OK


def cmd_gen(args) -> int:
    try:
        g = generate(args.family, args.seed)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None
    if args.output:
        write_text(args.output, serialize_graph(g))
    else:
        sys.stdout.write(serialize_graph(g))
    if args.flow_out:
        spec = _spec(args.flow_kind, True)
        # prefer a unit flow: after reversing edges it is the all-ones flow
        fa = oracle.search_flow(g, spec, allowed={eid: [1, -1] for eid in g.edges})
        if fa is None:
            fa = oracle.search_flow(g, spec)
        if fa is None:
            print("exhausted: no nowhere-zero flow of that kind", file=sys.stderr)
            return FAILED
        write_text(args.flow_out, serialize_flow(positive_form(fa)))
    return OK


def positive_form(fa: FlowAssignment) -> FlowAssignment:
    """Same flow with every negative value turned positive by reversing its edge."""
    out = fa.copy()
    for eid, x in fa.value.items():
        if x < 0:
            t0, t1 = fa.tau[eid]
            out.tau[eid] = (-t0, -t1)
            out.value[eid] = -x
    return out


def cmd_oracle(args) -> int:
    g = read_graph(args.graph)
    if args.task == "min-odd-cut":
        size, shore = oracle.min_odd_cut(g)
        _emit({"size": _jsonable(size), "shore": sorted(shore)})
        return OK
    if args.task == "find-flow":
        if not args.kind:
            raise ParseError("find-flow needs --kind")
        spec = _spec(args.kind, args.nowhere_zero)
        fa = oracle.search_flow(g, spec)
    else:
        if args.p is None:
            raise ParseError("find-orientation needs --p")
        tau = oracle.search_orientation(g, args.p)
        fa = None if tau is None else FlowAssignment(tau, {eid: args.p for eid in g.edges})
    if fa is None:
        print("exhausted")
        return FAILED
    text = serialize_flow(fa)
    if args.output:
        write_text(args.output, text)
        print("found")
    else:
        sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="sgflow", description="Flows on signed graphs: verify, convert, analyze, generate.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check a flow file against a flow kind")
    p.add_argument("--graph", required=True)
    p.add_argument("--flow", required=True)
    p.add_argument("--kind", required=True, help="mod:K, int:K, circ:K/D or cmod:K/D")
    p.add_argument("--nowhere-zero", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("convert", help="turn a modulo flow or orientation into an integer flow")
    p.add_argument("--mode", required=True, help="2to2, 2to3, 3to3, 3to4, circ:P or double:K")
    p.add_argument("--graph", required=True)
    p.add_argument("--flow")
    p.add_argument("--orientation")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("analyze", help="structural JSON report")
    p.add_argument("--graph", required=True)
    p.add_argument("--negativeness", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("--family", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.add_argument("--flow-out", help="also write an oracle-found nowhere-zero flow")
    p.add_argument("--flow-kind", default="mod:3")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="exhaustive searches")
    p.add_argument("task", choices=["find-flow", "find-orientation", "min-odd-cut"])
    p.add_argument("--graph", required=True)
    p.add_argument("--kind")
    p.add_argument("--nowhere-zero", action="store_true")
    p.add_argument("--p", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except TheoremViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL
    except (PreconditionError, GateExceeded) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return FAILED
    except SgflowError as exc:  # pragma: no cover
        print(f"internal error: {exc}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
