"""Bidirected orientations, flow assignments, boundaries and verification.

Convention: ``tau[e] = (t0, t1)`` gives the direction of the half-edge at the
edge's first and second endpoint, ``+1`` meaning *away from* that endpoint.
Compatibility requires ``t0 * t1 == -sign(e)``, so a positive edge u->w is
``(+1, -1)`` and contributes ``+f`` to the boundary at u and ``-f`` at w.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import PreconditionError
from .sgraph import Half, SignedGraph

Orientation = dict[int, tuple[int, int]]


def canonical_orientation(g: SignedGraph) -> Orientation:
    """First half out; the second half follows from the sign."""
    return {eid: (1, -e.sign) for eid, e in g.edges.items()}


def tau_of(tau: Mapping[int, tuple[int, int]], h: Half) -> int:
    return tau[h[0]][h[1]]


def orientation_errors(g: SignedGraph, tau: Mapping[int, tuple[int, int]]) -> list[int]:
    """Edges whose orientation is missing or breaks ``t0*t1 == -sign``."""
    bad = []
    for eid, e in g.edges.items():
        t = tau.get(eid)
        if t is None or t[0] not in (1, -1) or t[1] not in (1, -1) or t[0] * t[1] != -e.sign:
            bad.append(eid)
    return bad


def check_orientation(g: SignedGraph, tau: Mapping[int, tuple[int, int]]) -> None:
    bad = orientation_errors(g, tau)
    if bad:
        raise PreconditionError(f"orientation incompatible with signature on edges {bad}")


@dataclass
class FlowAssignment:
    """Orientation plus an integer value on every edge."""

    tau: Orientation
    value: dict[int, int]

    def copy(self) -> FlowAssignment:
        return FlowAssignment(dict(self.tau), dict(self.value))

    def restricted(self, eids: Iterable[int]) -> FlowAssignment:
        keep = set(eids)
        return FlowAssignment(
            {k: t for k, t in self.tau.items() if k in keep},
            {k: x for k, x in self.value.items() if k in keep},
        )

    def reoriented(self, tau: Mapping[int, tuple[int, int]]) -> FlowAssignment:
        """Same flow expressed against ``tau`` (values negate where the pair flips)."""
        value = {}
        for eid, x in self.value.items():
            value[eid] = x if tau[eid] == self.tau[eid] else -x
        return FlowAssignment(dict(tau), value)


@dataclass(frozen=True)
class FlowSpec:
    """What a flow must satisfy.

    ``kind`` is one of ``"mod"``, ``"int"``, ``"circ-int"``, ``"circ-mod"``;
    circular kinds use ``d <= |f| <= k - d`` and are nowhere-zero by range.
    """

    kind: str
    k: int
    d: int = 1
    nowhere_zero: bool = False

    def __post_init__(self):
        if self.kind not in ("mod", "int", "circ-int", "circ-mod"):
            raise PreconditionError(f"unknown flow kind {self.kind!r}")
        if self.k < 2 or self.d < 1:
            raise PreconditionError("need k >= 2 and d >= 1")
        if self.circular and 2 * self.d > self.k:
            raise PreconditionError("circular flows need 2d <= k")

    @property
    def circular(self) -> bool:
        return self.kind.startswith("circ")

    @property
    def modular(self) -> bool:
        return self.kind in ("mod", "circ-mod")

    def value_range(self) -> tuple[int, int]:
        """Inclusive range of admissible ``|f(e)|``."""
        if self.circular:
            return self.d, self.k - self.d
        return (1 if self.nowhere_zero else 0), self.k - 1

    def admissible_values(self) -> list[int]:
        """Admissible values ascending by absolute value, positive first."""
        lo, hi = self.value_range()
        out = [0] if lo == 0 else []
        for a in range(max(lo, 1), hi + 1):
            out += [a, -a]
        return out

    def __str__(self) -> str:
        if self.circular:
            s = f"{'circ' if self.kind == 'circ-int' else 'cmod'}:{self.k}/{self.d}"
        else:
            s = f"{self.kind}:{self.k}"
        return s + (" NZ" if self.nowhere_zero else "")

    @classmethod
    def parse(cls, text: str, nowhere_zero: bool = False) -> FlowSpec:
        """``mod:K``, ``int:K``, ``circ:K/D`` (integer circular) or ``cmod:K/D``."""
        try:
            head, _, rest = text.partition(":")
            if head in ("mod", "int"):
                return cls(head, int(rest), 1, nowhere_zero)
            if head in ("circ", "cmod"):
                k, _, d = rest.partition("/")
                return cls("circ-int" if head == "circ" else "circ-mod", int(k), int(d), nowhere_zero)
        except ValueError as exc:
            raise PreconditionError(f"bad flow kind {text!r}") from exc
        raise PreconditionError(f"bad flow kind {text!r}")


def modulo(k: int, nowhere_zero: bool = False) -> FlowSpec:
    return FlowSpec("mod", k, 1, nowhere_zero)


def integer(k: int, nowhere_zero: bool = False) -> FlowSpec:
    return FlowSpec("int", k, 1, nowhere_zero)


def circular_integer(k: int, d: int) -> FlowSpec:
    return FlowSpec("circ-int", k, d)


def circular_modulo(k: int, d: int) -> FlowSpec:
    return FlowSpec("circ-mod", k, d)


def sym_residue(x: int, k: int) -> int:
    """Residue of ``x`` mod ``k`` in ``-(k//2) .. ceil(k/2)-1``."""
    h = k // 2
    return (x + h) % k - h


def boundary(g: SignedGraph, fa: FlowAssignment, v: int) -> int:
    """Signed sum of ``f(e) * tau(h)`` over the half-edges at ``v``."""
    total = 0
    for eid, end in g.halves(v):
        try:
            total += fa.value[eid] * fa.tau[eid][end]
        except KeyError:
            raise PreconditionError(f"edge {eid} has no value or orientation") from None
    return total


def boundaries(g: SignedGraph, fa: FlowAssignment) -> dict[int, int]:
    return {v: boundary(g, fa, v) for v in g.sorted_vertices()}


def support(fa: FlowAssignment) -> frozenset[int]:
    return frozenset(eid for eid, x in fa.value.items() if x != 0)


@dataclass
class VerifyReport:
    ok: bool
    spec: FlowSpec
    residues: dict[int, int] = field(default_factory=dict)
    bad_vertices: list[int] = field(default_factory=list)
    bad_values: list[int] = field(default_factory=list)
    bad_orientation: list[int] = field(default_factory=list)
    missing: list[int] = field(default_factory=list)

    @property
    def offending_edges(self) -> list[int]:
        return sorted(set(self.bad_values) | set(self.bad_orientation) | set(self.missing))

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "kind": str(self.spec),
            "residues": {str(v): r for v, r in self.residues.items()},
            "bad_vertices": self.bad_vertices,
            "offending_edges": self.offending_edges,
        }


def verify(g: SignedGraph, fa: FlowAssignment, spec: FlowSpec) -> VerifyReport:
    """Check boundary and range conditions; failures are reported, never raised."""
    rep = VerifyReport(ok=True, spec=spec)
    rep.missing = sorted(eid for eid in g.edges if eid not in fa.value or eid not in fa.tau)
    rep.bad_orientation = [eid for eid in orientation_errors(g, fa.tau) if eid not in rep.missing]
    lo, hi = spec.value_range()
    for eid in g.edges:
        if eid in rep.missing:
            continue
        a = abs(fa.value[eid])
        if a > hi or a < lo:
            rep.bad_values.append(eid)
    if rep.missing:
        rep.ok = False
        return rep
    for v in g.sorted_vertices():
        b = boundary(g, fa, v)
        r = sym_residue(b, spec.k) if spec.modular else b
        rep.residues[v] = r
        if r != 0:
            rep.bad_vertices.append(v)
    rep.ok = not (rep.bad_vertices or rep.bad_values or rep.bad_orientation)
    return rep


def is_modulo_orientation(g: SignedGraph, tau: Mapping[int, tuple[int, int]], p: int) -> bool:
    """Half-edge directions sum to 0 mod 2p+1 at every vertex."""
    if orientation_errors(g, tau):
        return False
    k = 2 * p + 1
    return all(sum(tau_of(tau, h) for h in g.halves(v)) % k == 0 for v in g.vertices)


def orientation_to_circular_flow(g: SignedGraph, tau: Mapping[int, tuple[int, int]], p: int) -> FlowAssignment:
    """Constant value ``p`` on a modulo (2p+1)-orientation: a modulo circular (2p+1)/p-flow."""
    if p < 1:
        raise PreconditionError("p must be positive")
    if not is_modulo_orientation(g, tau, p):
        raise PreconditionError(f"not a modulo {2 * p + 1}-orientation")
    return FlowAssignment({eid: tuple(tau[eid]) for eid in g.edges}, {eid: p for eid in g.edges})


def circular_flow_to_orientation(g: SignedGraph, fa: FlowAssignment, p: int) -> Orientation:
    """Scale by -2 (the inverse of p mod 2p+1) and flip edges whose residue is -1."""
    k = 2 * p + 1
    if not verify(g, fa, circular_modulo(k, p)):
        raise PreconditionError(f"input is not a modulo circular {k}/{p}-flow")
    out: Orientation = {}
    for eid in g.edges:
        r = sym_residue(-2 * fa.value[eid], k)
        t0, t1 = fa.tau[eid]
        if r == 1:
            out[eid] = (t0, t1)
        elif r == -1:
            out[eid] = (-t0, -t1)
        else:  # pragma: no cover - ruled out by the range check above
            raise PreconditionError(f"edge {eid} scales to residue {r}")
    return out


def flip_at(g: SignedGraph, tau: Mapping[int, tuple[int, int]], v: int) -> Orientation:
    """Negate every half-edge direction at ``v`` (the companion of a switch)."""
    out = {k: tuple(t) for k, t in tau.items()}
    for eid, end in g.halves(v):
        t = list(out[eid])
        t[end] = -t[end]
        out[eid] = tuple(t)
    return out
