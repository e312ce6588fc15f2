"""Open-graph diagrams for the Y, ZX and real-stabiliser ZX calculi."""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .angle import Angle, as_angle

__all__ = [
    "Y", "ZX", "ZXR", "CALCULI", "BOTTOM", "TOP",
    "ZSpider", "XSpider", "YBox", "HBox", "HNode", "PiDot", "Boundary", "NodeKind",
    "Diagram", "Builder", "DiagramError",
    "generator", "identity", "swap", "cup", "cap", "empty", "spider", "box",
    "tensor", "compose", "flip_vertical", "colour_swap", "expand_hnode",
    "graph_state", "validate", "natural_key",
]

Y, ZX, ZXR = "Y", "ZX", "ZX_r"
CALCULI = (Y, ZX, ZXR)
BOTTOM, TOP = 0, 1

_ZERO = Angle()
_PI = Angle.pi(1)


class DiagramError(ValueError):
    """Raised on an ill-typed construction or composition."""


@dataclass(frozen=True)
class ZSpider:
    phase: Angle = _ZERO
    colour = "Z"

    def __str__(self) -> str:
        return f"Z({self.phase})" if self.phase else "Z"


@dataclass(frozen=True)
class XSpider:
    phase: Angle = _ZERO
    colour = "X"

    def __str__(self) -> str:
        return f"X({self.phase})" if self.phase else "X"


@dataclass(frozen=True)
class YBox:
    """Real rotation box; port ``BOTTOM`` is the input side when upright."""

    angle: Angle = _ZERO
    flipped: bool = False

    def __str__(self) -> str:
        return f"Y{'flip' if self.flipped else ''}({self.angle})"


@dataclass(frozen=True)
class HBox:
    def __str__(self) -> str:
        return "H"


@dataclass(frozen=True)
class HNode:
    arity: int

    def __str__(self) -> str:
        return f"HN{self.arity}"


@dataclass(frozen=True)
class PiDot:
    """A pi-phased spider written as a notation in Y-diagrams."""

    colour: str = "Z"

    def __str__(self) -> str:
        return f"Pi{self.colour}"


@dataclass(frozen=True)
class Boundary:
    side: str  # "in" or "out"

    def __str__(self) -> str:
        return self.side


NodeKind = Union[ZSpider, XSpider, YBox, HBox, HNode, PiDot, Boundary]
End = tuple  # (node-id, port)

_NAT = re.compile(r"(\d+)")


def natural_key(s: str) -> tuple:
    return tuple(int(t) if t.isdigit() else t for t in _NAT.split(s))


def spider_kind(colour: str, phase: Angle | str | int = 0) -> ZSpider | XSpider:
    ph = as_angle(phase)
    return ZSpider(ph) if colour == "Z" else XSpider(ph)


def is_spider(k: object) -> bool:
    return isinstance(k, (ZSpider, XSpider))


class Diagram:
    """An immutable open graph with ordered input and output boundaries.

    ``edges`` maps an edge id to a pair of ends ``(node, port)``. Ports only
    matter on :class:`YBox` nodes, where ``BOTTOM``/``TOP`` tell the sides apart.
    """

    __slots__ = ("_nodes", "_edges", "_inputs", "_outputs", "calculus", "_inc")

    def __init__(
        self,
        nodes: Mapping[str, NodeKind],
        edges: Mapping[str, tuple[End, End]],
        inputs: Sequence[str],
        outputs: Sequence[str],
        calculus: str = Y,
    ) -> None:
        if calculus not in CALCULI:
            raise DiagramError(f"unknown calculus {calculus!r}")
        self._nodes = dict(nodes)
        self._edges = {e: (tuple(a), tuple(b)) for e, (a, b) in edges.items()}
        self._inputs = tuple(inputs)
        self._outputs = tuple(outputs)
        self.calculus = calculus
        inc: dict[str, list[tuple[str, int]]] = {n: [] for n in self._nodes}
        for e in sorted(self._edges, key=natural_key):
            a, b = self._edges[e]
            for side, (n, _p) in enumerate((a, b)):
                if n not in inc:
                    raise DiagramError(f"edge {e} references unknown node {n}")
                inc[n].append((e, side))
        self._inc = inc

    # read access ---------------------------------------------------------
    @property
    def nodes(self) -> Mapping[str, NodeKind]:
        return dict(self._nodes)

    @property
    def edges(self) -> Mapping[str, tuple[End, End]]:
        return dict(self._edges)

    @property
    def inputs(self) -> tuple[str, ...]:
        return self._inputs

    @property
    def outputs(self) -> tuple[str, ...]:
        return self._outputs

    @property
    def arity(self) -> tuple[int, int]:
        return len(self._inputs), len(self._outputs)

    def kind(self, n: str) -> NodeKind:
        return self._nodes[n]

    def interior(self) -> list[str]:
        return sorted(
            (n for n, k in self._nodes.items() if not isinstance(k, Boundary)),
            key=natural_key,
        )

    def incident(self, n: str) -> list[tuple[str, int]]:
        """``(edge, side)`` pairs at node ``n``; a self-loop appears twice."""
        return list(self._inc[n])

    def degree(self, n: str) -> int:
        return len(self._inc[n])

    def end(self, e: str, side: int) -> End:
        return self._edges[e][side]

    def other(self, e: str, side: int) -> End:
        return self._edges[e][1 - side]

    def port_edge(self, n: str, port: int) -> tuple[str, int]:
        for e, s in self._inc[n]:
            if self._edges[e][s][1] == port:
                return e, s
        raise KeyError((n, port))

    def neighbours(self, n: str) -> list[End]:
        return [self.other(e, s) for e, s in self._inc[n]]

    def boundary_end(self, b: str) -> End:
        (e, s), = self._inc[b]
        return self.other(e, s)

    def count(self, pred) -> int:
        return sum(1 for k in self._nodes.values() if pred(k))

    def __len__(self) -> int:
        return len(self.interior())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return (
            self.calculus == other.calculus
            and self._nodes == other._nodes
            and self._inputs == other._inputs
            and self._outputs == other._outputs
            and {e: _norm_edge(v) for e, v in self._edges.items()}
            == {e: _norm_edge(v) for e, v in other._edges.items()}
        )

    def __hash__(self) -> int:
        return hash((self.calculus, self._inputs, self._outputs, len(self._nodes), len(self._edges)))

    def __repr__(self) -> str:
        n, m = self.arity
        return f"<Diagram {self.calculus} {n}->{m}, {len(self)} nodes, {len(self._edges)} edges>"

    # editing (returns copies) ------------------------------------------------
    def builder(self) -> Builder:
        b = Builder(self.calculus)
        b.nodes = dict(self._nodes)
        b.edges = dict(self._edges)
        b.inputs = list(self._inputs)
        b.outputs = list(self._outputs)
        return b

    def with_calculus(self, calculus: str) -> Diagram:
        return Diagram(self._nodes, self._edges, self._inputs, self._outputs, calculus)

    def relabel(self, prefix: str) -> Diagram:
        """Prefix every node and edge id."""
        nm = {n: prefix + n for n in self._nodes}
        return Diagram(
            {nm[n]: k for n, k in self._nodes.items()},
            {prefix + e: ((nm[a[0]], a[1]), (nm[b[0]], b[1])) for e, (a, b) in self._edges.items()},
            [nm[i] for i in self._inputs],
            [nm[o] for o in self._outputs],
            self.calculus,
        )

    def canonical_ids(self) -> Diagram:
        """Rename nodes to ``i*``, ``o*``, ``n*`` and edges to ``e*`` in a stable order."""
        nm: dict[str, str] = {}
        for j, i in enumerate(self._inputs):
            nm[i] = f"i{j}"
        for j, o in enumerate(self._outputs):
            nm[o] = f"o{j}"
        for j, n in enumerate(self.interior()):
            nm[n] = f"n{j}"
        for n in sorted(self._nodes, key=natural_key):
            nm.setdefault(n, f"x{len(nm)}")
        em = {e: f"e{j}" for j, e in enumerate(sorted(self._edges, key=natural_key))}
        return Diagram(
            {nm[n]: k for n, k in self._nodes.items()},
            {em[e]: ((nm[a[0]], a[1]), (nm[b[0]], b[1])) for e, (a, b) in self._edges.items()},
            [nm[i] for i in self._inputs],
            [nm[o] for o in self._outputs],
            self.calculus,
        )


def _norm_edge(v: tuple[End, End]) -> tuple[End, End]:
    a, b = v
    return (a, b) if a <= b else (b, a)


class Builder:
    """Mutable helper for assembling a :class:`Diagram`."""

    def __init__(self, calculus: str = Y) -> None:
        self.calculus = calculus
        self.nodes: dict[str, NodeKind] = {}
        self.edges: dict[str, tuple[End, End]] = {}
        self.inputs: list[str] = []
        self.outputs: list[str] = []
        self._ctr = itertools.count()

    def fresh(self, prefix: str = "n") -> str:
        while True:
            cand = f"{prefix}{next(self._ctr)}"
            if cand not in self.nodes and cand not in self.edges:
                return cand

    def add(self, kind: NodeKind, nid: str | None = None) -> str:
        nid = nid or self.fresh("n")
        if nid in self.nodes:
            raise DiagramError(f"duplicate node id {nid}")
        self.nodes[nid] = kind
        return nid

    def input(self, nid: str | None = None) -> str:
        nid = self.add(Boundary("in"), nid or self.fresh("i"))
        self.inputs.append(nid)
        return nid

    def output(self, nid: str | None = None) -> str:
        nid = self.add(Boundary("out"), nid or self.fresh("o"))
        self.outputs.append(nid)
        return nid

    def _end(self, x: str | End, default: int) -> End:
        if isinstance(x, tuple):
            return x
        return (x, default if isinstance(self.nodes.get(x), YBox) else 0)

    def wire(self, u: str | End, v: str | End, eid: str | None = None) -> str:
        """Connect ``u`` to ``v``; a bare box id means its top at ``u`` and bottom at ``v``."""
        a, b = self._end(u, TOP), self._end(v, BOTTOM)
        eid = eid or self.fresh("e")
        self.edges[eid] = (a, b)
        return eid

    def chain(self, *xs: str | End) -> None:
        for u, v in zip(xs, xs[1:]):
            self.wire(u, v)

    def remove_node(self, n: str) -> None:
        del self.nodes[n]
        for e in [e for e, (a, b) in self.edges.items() if a[0] == n or b[0] == n]:
            del self.edges[e]

    def ends_of(self, n: str) -> list[tuple[str, int]]:
        out = []
        for e in sorted(self.edges, key=natural_key):
            a, b = self.edges[e]
            if a[0] == n:
                out.append((e, 0))
            if b[0] == n:
                out.append((e, 1))
        return out

    def embed(self, d: Diagram, rename: bool = False) -> tuple[list[str], list[str], dict[str, str]]:
        """Copy ``d`` in, renaming ids on clash (or always, with ``rename``).

        Returns the new ids of ``d``'s inputs and outputs and the node map.
        """
        nm: dict[str, str] = {}
        for n in sorted(d._nodes, key=natural_key):
            k = d._nodes[n]
            if rename or n in self.nodes or n in nm.values():
                nm[n] = self.fresh("b" if isinstance(k, Boundary) else "n")
            else:
                nm[n] = n
            self.nodes[nm[n]] = k
        for e in sorted(d._edges, key=natural_key):
            a, b = d._edges[e]
            eid = self.fresh("e") if (rename or e in self.edges) else e
            self.edges[eid] = ((nm[a[0]], a[1]), (nm[b[0]], b[1]))
        return [nm[i] for i in d._inputs], [nm[o] for o in d._outputs], nm

    def fuse_boundaries(self, b1: str, b2: str) -> None:
        """Remove boundary nodes ``b1``, ``b2`` and join what they were attached to."""
        (e1, s1), = self.ends_of(b1)
        (e2, s2), = self.ends_of(b2)
        x = self.edges[e1][1 - s1]
        y = self.edges[e2][1 - s2]
        if e1 == e2:
            # the two boundaries were directly joined: a closed loop
            del self.edges[e1]
            del self.nodes[b1], self.nodes[b2]
            loop = self.add(ZSpider())
            self.wire(loop, loop)
            return
        del self.edges[e1], self.edges[e2]
        del self.nodes[b1], self.nodes[b2]
        self.edges[self.fresh("e")] = (x, y)

    def splice(self, b: str, end: End) -> None:
        """Remove boundary ``b``, reattaching its wire to ``end``."""
        (e, s), = self.ends_of(b)
        other = self.edges[e][1 - s]
        del self.edges[e]
        del self.nodes[b]
        self.edges[self.fresh("e")] = (other, end)

    def build(self, check: bool = True) -> Diagram:
        d = Diagram(self.nodes, self.edges, self.inputs, self.outputs, self.calculus)
        if check:
            errs = validate(d)
            if errs is not True:
                raise DiagramError("; ".join(errs))
        return d


# ---------------------------------------------------------------------------
# generators


def generator(kind: NodeKind | str, n: int, m: int, calculus: str | None = None) -> Diagram:
    """A single generator with ``n`` inputs and ``m`` outputs.

    ``kind`` may also be one of the wiring names ``"empty"``, ``"id"``,
    ``"swap"``, ``"cup"`` (0->2) and ``"cap"`` (2->0).
    """
    if isinstance(kind, str):
        want = {"empty": (0, 0), "id": (1, 1), "swap": (2, 2), "cup": (0, 2), "cap": (2, 0)}
        if kind not in want:
            raise DiagramError(f"unknown wiring generator {kind!r}")
        if (n, m) != want[kind]:
            raise DiagramError(f"{kind} has arity {want[kind]}, got {(n, m)}")
        return _wiring(kind, calculus or Y)
    if calculus is None:
        calculus = Y
        if isinstance(kind, (ZSpider, XSpider)) and kind.phase:
            calculus = ZX
    b = Builder(calculus)
    if isinstance(kind, YBox):
        if (n, m) != (1, 1):
            raise DiagramError(f"a box is 1->1, got {n}->{m}")
        i = b.input()
        x = b.add(kind)
        o = b.output()
        b.wire(i, (x, BOTTOM))
        b.wire((x, TOP), o)
        return b.build()
    if isinstance(kind, HBox) and n + m != 2:
        raise DiagramError(f"a Hadamard box has two legs, got {n}->{m}")
    if isinstance(kind, HNode) and n + m != kind.arity:
        raise DiagramError(f"HNode({kind.arity}) needs {kind.arity} legs, got {n}+{m}")
    if isinstance(kind, Boundary):
        raise DiagramError("boundaries are not generators")
    ins = [b.input() for _ in range(n)]
    x = b.add(kind)
    outs = [b.output() for _ in range(m)]
    for i in ins:
        b.wire(i, x)
    for o in outs:
        b.wire(x, o)
    return b.build()


def _wiring(name: str, calculus: str) -> Diagram:
    b = Builder(calculus)
    if name == "id":
        b.wire(b.input(), b.output())
    elif name == "swap":
        i0, i1 = b.input(), b.input()
        o0, o1 = b.output(), b.output()
        b.wire(i0, o1)
        b.wire(i1, o0)
    elif name == "cup":
        b.wire(b.output(), b.output())
    elif name == "cap":
        b.wire(b.input(), b.input())
    return b.build()


def identity(n: int = 1, calculus: str = Y) -> Diagram:
    b = Builder(calculus)
    ins = [b.input() for _ in range(n)]
    for i in ins:
        b.wire(i, b.output())
    return b.build()


def empty(calculus: str = Y) -> Diagram:
    return Diagram({}, {}, [], [], calculus)


def swap(calculus: str = Y) -> Diagram:
    return _wiring("swap", calculus)


def cup(calculus: str = Y) -> Diagram:
    return _wiring("cup", calculus)


def cap(calculus: str = Y) -> Diagram:
    return _wiring("cap", calculus)


def spider(colour: str, n: int, m: int, phase: Angle | str | int = 0, calculus: str | None = None) -> Diagram:
    return generator(spider_kind(colour, phase), n, m, calculus)


def box(angle: Angle | str | int | float, flipped: bool = False) -> Diagram:
    return generator(YBox(as_angle(angle), flipped), 1, 1)


# ---------------------------------------------------------------------------
# compositions


def tensor(*ds: Diagram) -> Diagram:
    """Side-by-side placement; later diagrams' boundaries come after earlier ones."""
    if not ds:
        return empty()
    cal = ds[0].calculus
    b = Builder(cal)
    for d in ds:
        if d.calculus != cal:
            raise DiagramError(f"calculus mismatch: {cal} vs {d.calculus}")
        ins, outs, _ = b.embed(d)
        b.inputs += ins
        b.outputs += outs
    return b.build(check=False)


def compose(after: Diagram, before: Diagram) -> Diagram:
    """``after`` placed on top of ``before``: outputs of ``before`` feed inputs of ``after``."""
    if after.calculus != before.calculus:
        raise DiagramError(f"calculus mismatch: {after.calculus} vs {before.calculus}")
    if len(before.outputs) != len(after.inputs):
        raise DiagramError(
            f"cannot compose: {len(before.outputs)} outputs into {len(after.inputs)} inputs"
        )
    b = Builder(before.calculus)
    ins1, outs1, _ = b.embed(before)
    ins2, outs2, _ = b.embed(after)
    for o, i in zip(outs1, ins2):
        b.fuse_boundaries(o, i)
    b.inputs, b.outputs = ins1, outs2
    return b.build(check=False)


def seq(*ds: Diagram) -> Diagram:
    """Sequential composition in reading order: ``seq(a, b)`` runs ``a`` then ``b``."""
    out = ds[0]
    for d in ds[1:]:
        out = compose(d, out)
    return out


def flip_vertical(d: Diagram) -> Diagram:
    """Upside-down mirror image; its semantics is the transpose."""
    nodes: dict[str, NodeKind] = {}
    for n, k in d.nodes.items():
        if isinstance(k, Boundary):
            k = Boundary("out" if k.side == "in" else "in")
        elif isinstance(k, YBox):
            k = YBox(k.angle, not k.flipped)
        nodes[n] = k
    edges = {}
    for e, (a, b_) in d.edges.items():
        edges[e] = tuple(_swap_port(d, x) for x in (a, b_))
    return Diagram(nodes, edges, d.outputs, d.inputs, d.calculus)


def _swap_port(d: Diagram, end: End) -> End:
    n, p = end
    if isinstance(d.kind(n), YBox):
        return (n, 1 - p)
    return end


def colour_swap(d: Diagram) -> Diagram:
    """Exchange green and red, turning every box upside-down."""
    if d.count(lambda k: isinstance(k, HNode) and k.arity > 2):
        d = expand_hnode(d, only_hnodes=True)
    nodes: dict[str, NodeKind] = {}
    for n, k in d.nodes.items():
        if isinstance(k, ZSpider):
            k = XSpider(k.phase)
        elif isinstance(k, XSpider):
            k = ZSpider(k.phase)
        elif isinstance(k, YBox):
            k = YBox(k.angle, not k.flipped)
        elif isinstance(k, PiDot):
            k = PiDot("X" if k.colour == "Z" else "Z")
        nodes[n] = k
    return Diagram(nodes, d.edges, d.inputs, d.outputs, d.calculus)


# ---------------------------------------------------------------------------
# derived notations


def _pidot_gadget(b: Builder, colour: str) -> str:
    """Spider of ``colour`` carrying a pi-branch; returns the spider id."""
    other = "X" if colour == "Z" else "Z"
    s = b.add(spider_kind(colour))
    dot = b.add(spider_kind(other))
    bx = b.add(YBox(Angle.pi(Fraction(-1, 2)), colour == "X"))
    b.wire(dot, (bx, BOTTOM))
    b.wire((bx, TOP), s)
    return s


def _bicolor(b: Builder) -> None:
    g = b.add(ZSpider())
    r = b.add(XSpider())
    b.wire(g, r)


def _expand_node(b: Builder, n: str, kind: NodeKind) -> None:
    """Replace node ``n`` in ``b`` by its primitive gadget."""
    # park each leg on a temporary boundary so self-loops survive the removal
    temps = []
    for e, s in b.ends_of(n):
        t = b.fresh("t")
        b.nodes[t] = Boundary("in")
        a, c = b.edges[e]
        b.edges[e] = ((t, 0), c) if s == 0 else (a, (t, 0))
        temps.append(t)
    del b.nodes[n]
    if isinstance(kind, PiDot):
        s = _pidot_gadget(b, kind.colour)
        for t in temps:
            b.splice(t, (s, 0))
    elif isinstance(kind, HBox):
        s = _pidot_gadget(b, "Z")
        bx = b.add(YBox(Angle.pi(Fraction(1, 2))))
        b.wire(s, (bx, BOTTOM))
        b.splice(temps[0], (s, 0))
        b.splice(temps[1], (bx, TOP))
    elif isinstance(kind, HNode):
        k = kind.arity
        vs = [b.add(ZSpider()) for _ in range(k)]
        for v, t in zip(vs, temps):
            b.splice(t, (v, 0))
        for u, v in itertools.combinations(vs, 2):
            h = b.add(HBox())
            b.wire(u, h)
            b.wire(h, v)
            _expand_node(b, h, HBox())
        for _ in range((k - 2) * (k - 1) // 2):
            _bicolor(b)
    else:
        raise DiagramError(f"{kind} is not a derived notation")


def expand_hnode(d: Diagram, only_hnodes: bool = False) -> Diagram:
    """Replace HNode, HBox and pi-dot notations by primitive Y generators."""
    if d.calculus != Y:
        raise DiagramError("expand_hnode applies to Y-diagrams only")
    b = d.builder()
    kinds = (HNode,) if only_hnodes else (HNode, HBox, PiDot)
    for n in sorted(d.nodes, key=natural_key):
        k = d.kind(n)
        if isinstance(k, kinds):
            if only_hnodes and k.arity == 2:
                _replace_kind(b, n, HBox())
                continue
            _expand_node(b, n, k)
    return b.build(check=False)


def _replace_kind(b: Builder, n: str, kind: NodeKind) -> None:
    b.nodes[n] = kind


def graph_state(g) -> Diagram:
    """Graph state with one green spider per vertex and a Hadamard box per edge.

    ``g`` is any object with ``nodes`` and ``edges`` iterables (a networkx graph
    works), or a pair ``(vertices, edges)``.
    """
    if isinstance(g, tuple):
        verts, edges = g
    else:
        verts, edges = g.nodes, g.edges
    verts = list(verts)
    b = Builder(Y)
    ids = {v: b.add(ZSpider()) for v in verts}
    for v in verts:
        b.wire(ids[v], b.output())
    for u, v in edges:
        if u == v:
            raise DiagramError("graph states need simple graphs")
        h = b.add(HBox())
        b.wire(ids[u], h)
        b.wire(h, ids[v])
    return b.build()


# ---------------------------------------------------------------------------
# validation


def validate(d: Diagram) -> bool | list[str]:
    """``True`` when well formed, else the list of violations."""
    errs: list[str] = []
    seen = Counter(list(d.inputs) + list(d.outputs))
    for n, c in seen.items():
        if c > 1:
            errs.append(f"{n}: listed {c} times as a boundary")
    for i in d.inputs:
        if i not in d.nodes or d.kind(i) != Boundary("in"):
            errs.append(f"{i}: input is not an input boundary node")
    for o in d.outputs:
        if o not in d.nodes or d.kind(o) != Boundary("out"):
            errs.append(f"{o}: output is not an output boundary node")
    for n in sorted(d.nodes, key=natural_key):
        k = d.kind(n)
        deg = d.degree(n)
        ports = sorted(d.end(e, s)[1] for e, s in d.incident(n))
        if isinstance(k, Boundary):
            if deg != 1:
                errs.append(f"{n}: boundary has degree {deg}")
            if n not in seen:
                errs.append(f"{n}: boundary node not listed")
        elif isinstance(k, YBox):
            if deg != 2:
                errs.append(f"{n}: box has degree {deg}")
            elif ports != [BOTTOM, TOP]:
                errs.append(f"{n}: box ports {ports}")
            if d.calculus != Y:
                errs.append(f"{n}: box in a {d.calculus} diagram")
        elif isinstance(k, HBox):
            if deg != 2:
                errs.append(f"{n}: Hadamard box has degree {deg}")
        elif isinstance(k, HNode):
            if k.arity < 2:
                errs.append(f"{n}: HNode arity {k.arity} < 2")
            if deg != k.arity:
                errs.append(f"{n}: HNode({k.arity}) has degree {deg}")
            if d.calculus != Y:
                errs.append(f"{n}: HNode in a {d.calculus} diagram")
        elif isinstance(k, PiDot):
            if d.calculus != Y:
                errs.append(f"{n}: pi-dot notation in a {d.calculus} diagram")
        elif isinstance(k, (ZSpider, XSpider)):
            if d.calculus == Y and k.phase:
                errs.append(f"{n}: phased spider in a Y diagram")
            if d.calculus == ZXR and isinstance(k.phase, Angle) and not k.phase.is_multiple_of(1):
                errs.append(f"{n}: phase {k.phase} outside {{0, pi}}")
        else:
            errs.append(f"{n}: unknown node kind {k!r}")
        if not isinstance(k, YBox) and any(p != 0 for p in ports):
            errs.append(f"{n}: unexpected port numbers {ports}")
    return True if not errs else errs
