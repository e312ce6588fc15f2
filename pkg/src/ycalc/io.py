"""Line-oriented text format and JSON serialisation for diagrams.

Text grammar (one statement per line, ``;`` also separates statements)::

    calculus Y|ZX|ZX_r        # optional, defaults to Y
    meta <key> <value...>     # free metadata
    arity <n> <m>             # optional consistency check
    fragment pi/<k>|free      # optional: every angle is a multiple of pi/k
    input <id>
    output <id>
    <kind> <id> [param]       # gspider, rspider, ybox, yboxflip, hbox, hnode<k>, pidot-g, pidot-r
    wire <id>[:b|:t] <id>[:b|:t] [edge-id]

A bare box id in a ``wire`` means its top side when first and its bottom side
when second. Undeclared ids of the form ``in<k>``/``out<k>`` become boundaries.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Any

from .angle import Angle, fragment
from .diagram import (
    BOTTOM, CALCULI, TOP, Y, Boundary, Diagram, HBox, HNode, PiDot, XSpider, YBox, ZSpider,
    natural_key, validate,
)

__all__ = ["ParseError", "DiagramDoc", "parse", "parse_doc", "dumps", "to_json", "from_json", "load", "save", "diagram_fragment"]


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0) -> None:
        self.line, self.col = line, col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + msg)


@dataclass
class DiagramDoc:
    diagram: Diagram
    meta: dict[str, str] = field(default_factory=dict)


_KIND_RE = re.compile(r"^hnode(\d+)$")
_AUTO_IN = re.compile(r"^in(\d+)$")
_AUTO_OUT = re.compile(r"^out(\d+)$")


def _kind_from(word: str, param: str | None, where: tuple[int, int]):
    try:
        ang = Angle.parse(param) if param is not None else Angle()
    except ValueError as exc:
        raise ParseError(str(exc), *where) from None
    if word == "gspider":
        return ZSpider(ang)
    if word == "rspider":
        return XSpider(ang)
    if word in ("ybox", "yboxflip"):
        return YBox(ang, word == "yboxflip")
    if param is not None:
        raise ParseError(f"{word} takes no parameter", *where)
    if word == "hbox":
        return HBox()
    if word == "pidot-g":
        return PiDot("Z")
    if word == "pidot-r":
        return PiDot("X")
    m = _KIND_RE.match(word)
    if m:
        return HNode(int(m.group(1)))
    raise ParseError(f"unknown statement or kind {word!r}", *where)


def _kind_words(k) -> tuple[str, str | None]:
    if isinstance(k, ZSpider):
        return "gspider", (str(k.phase) if k.phase else None)
    if isinstance(k, XSpider):
        return "rspider", (str(k.phase) if k.phase else None)
    if isinstance(k, YBox):
        return ("yboxflip" if k.flipped else "ybox"), str(k.angle)
    if isinstance(k, HBox):
        return "hbox", None
    if isinstance(k, HNode):
        return f"hnode{k.arity}", None
    if isinstance(k, PiDot):
        return ("pidot-g" if k.colour == "Z" else "pidot-r"), None
    raise TypeError(k)


def _statements(text: str):
    for ln, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        col = 1
        for part in body.split(";"):
            stripped = part.strip()
            if stripped:
                yield ln, col + (len(part) - len(part.lstrip())), stripped.split()
            col += len(part) + 1


def parse_doc(text: str) -> DiagramDoc:
    calculus = Y
    meta: dict[str, str] = {}
    nodes: dict[str, Any] = {}
    inputs: list[str] = []
    outputs: list[str] = []
    wires: list[tuple[tuple[str, str | None], tuple[str, str | None], str | None, tuple[int, int]]] = []
    arity = None
    declared = None
    for ln, col, toks in _statements(text):
        where = (ln, col)
        head = toks[0]
        if head == "calculus":
            if len(toks) != 2 or toks[1] not in CALCULI:
                raise ParseError(f"calculus must be one of {CALCULI}", *where)
            calculus = toks[1]
        elif head == "meta":
            if len(toks) < 2:
                raise ParseError("meta needs a key", *where)
            meta[toks[1]] = " ".join(toks[2:])
        elif head == "arity":
            try:
                arity = (int(toks[1]), int(toks[2]))
            except (IndexError, ValueError):
                raise ParseError("arity needs two integers", *where) from None
        elif head == "fragment":
            if len(toks) != 2:
                raise ParseError("fragment takes one value", *where)
            if toks[1] == "free":
                declared = "free"
            else:
                try:
                    f = Angle.parse(toks[1])
                except ValueError:
                    f = None
                if f is None or f.is_free or f.numerator != 1:
                    raise ParseError("fragment must be pi/<k> or free", *where)
                declared = f.denominator
        elif head in ("input", "output"):
            if len(toks) != 2:
                raise ParseError(f"{head} takes one id", *where)
            nid = toks[1]
            if nid in nodes:
                raise ParseError(f"duplicate id {nid}", *where)
            nodes[nid] = Boundary("in" if head == "input" else "out")
            (inputs if head == "input" else outputs).append(nid)
        elif head == "wire":
            if len(toks) not in (3, 4):
                raise ParseError("wire takes two ends and an optional edge id", *where)
            ends = []
            for t in toks[1:3]:
                nid, _, port = t.partition(":")
                if port not in ("", "b", "t"):
                    raise ParseError(f"bad port {port!r}", *where)
                ends.append((nid, port or None))
            wires.append((ends[0], ends[1], toks[3] if len(toks) == 4 else None, where))
        else:
            if len(toks) not in (2, 3):
                raise ParseError(f"{head} takes an id and an optional parameter", *where)
            nid = toks[1]
            if nid in nodes:
                raise ParseError(f"duplicate id {nid}", *where)
            nodes[nid] = _kind_from(head, toks[2] if len(toks) == 3 else None, where)
    # implicit boundaries
    auto_in, auto_out = [], []
    for a, b, _e, where in wires:
        for nid, _p in (a, b):
            if nid in nodes:
                continue
            if _AUTO_IN.match(nid):
                nodes[nid] = Boundary("in")
                auto_in.append(nid)
            elif _AUTO_OUT.match(nid):
                nodes[nid] = Boundary("out")
                auto_out.append(nid)
            else:
                raise ParseError(f"undeclared id {nid}", *where)
    inputs += sorted(auto_in, key=natural_key)
    outputs += sorted(auto_out, key=natural_key)
    edges = {}
    for k, (a, b, eid, where) in enumerate(wires):
        ea = _end(nodes, a, TOP)
        eb = _end(nodes, b, BOTTOM)
        eid = eid or f"e{k}"
        if eid in edges:
            raise ParseError(f"duplicate edge id {eid}", *where)
        edges[eid] = (ea, eb)
    d = Diagram(nodes, edges, inputs, outputs, calculus)
    errs = validate(d)
    if errs is not True:
        raise ParseError("invalid diagram: " + "; ".join(errs))
    if arity is not None and arity != d.arity:
        raise ParseError(f"declared arity {arity} but found {d.arity}")
    if declared is not None and declared != "free":
        actual = diagram_fragment(d)
        if actual == "free" or declared % actual:
            raise ParseError(f"angles need fragment pi/{actual}, header declares pi/{declared}")
    return DiagramDoc(d, meta)


def diagram_fragment(d: Diagram) -> int | str:
    """Least ``k`` with every angle a multiple of ``pi/k``, or ``"free"``."""
    k = 1
    for kind in d.nodes.values():
        a = getattr(kind, "angle", None) if isinstance(kind, YBox) else getattr(kind, "phase", None)
        if a is None:
            continue
        f = fragment(a)
        if f == "free":
            return "free"
        k = k * f // math.gcd(k, f)
    return k


def _end(nodes: dict, ref: tuple[str, str | None], default: int) -> tuple[str, int]:
    nid, port = ref
    if not isinstance(nodes[nid], YBox):
        return (nid, 0)
    if port is None:
        return (nid, default)
    return (nid, TOP if port == "t" else BOTTOM)


def parse(text: str) -> Diagram:
    """Parse the text format into a validated diagram."""
    return parse_doc(text).diagram


def dumps(d: Diagram, meta: dict[str, str] | None = None) -> str:
    lines = [f"calculus {d.calculus}"]
    for k, v in (meta or {}).items():
        lines.append(f"meta {k} {v}".rstrip())
    frag = diagram_fragment(d)
    lines.append(f"fragment {'free' if frag == 'free' else f'pi/{frag}'}")
    lines.append(f"arity {d.arity[0]} {d.arity[1]}")
    lines += [f"input {i}" for i in d.inputs]
    lines += [f"output {o}" for o in d.outputs]
    for n in d.interior():
        word, param = _kind_words(d.kind(n))
        lines.append(f"{word} {n}" + (f" {param}" if param is not None else ""))
    for e in sorted(d.edges, key=natural_key):
        a, b = d.edges[e]
        lines.append(f"wire {_ref(d, a)} {_ref(d, b)} {e}")
    return "\n".join(lines) + "\n"


def _ref(d: Diagram, end: tuple[str, int]) -> str:
    n, p = end
    if isinstance(d.kind(n), YBox):
        return f"{n}:{'t' if p == TOP else 'b'}"
    return n


def to_json(d: Diagram, meta: dict[str, str] | None = None) -> dict:
    nodes = []
    for n in sorted(d.nodes, key=natural_key):
        k = d.kind(n)
        if isinstance(k, Boundary):
            nodes.append({"id": n, "kind": "input" if k.side == "in" else "output"})
            continue
        word, param = _kind_words(k)
        entry = {"id": n, "kind": word}
        if param is not None:
            entry["param"] = param
        nodes.append(entry)
    return {
        "calculus": d.calculus,
        "meta": dict(meta or {}),
        "inputs": list(d.inputs),
        "outputs": list(d.outputs),
        "nodes": nodes,
        "edges": [
            {"id": e, "ends": [list(a), list(b)]}
            for e, (a, b) in sorted(d.edges.items(), key=lambda kv: natural_key(kv[0]))
        ],
    }


def from_json(doc: dict) -> DiagramDoc:
    nodes = {}
    for entry in doc["nodes"]:
        word = entry["kind"]
        if word in ("input", "output"):
            nodes[entry["id"]] = Boundary("in" if word == "input" else "out")
        else:
            nodes[entry["id"]] = _kind_from(word, entry.get("param"), (0, 0))
    edges = {e["id"]: (tuple(e["ends"][0]), tuple(e["ends"][1])) for e in doc["edges"]}
    d = Diagram(nodes, edges, doc["inputs"], doc["outputs"], doc.get("calculus", Y))
    errs = validate(d)
    if errs is not True:
        raise ParseError("invalid diagram: " + "; ".join(errs))
    return DiagramDoc(d, dict(doc.get("meta", {})))


def load(path: str) -> DiagramDoc:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        try:
            return from_json(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"bad diagram JSON: {exc}") from None
    return parse_doc(text)


def save(path: str, d: Diagram, meta: dict[str, str] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if path.endswith(".json"):
            json.dump(to_json(d, meta), fh, indent=1, sort_keys=True)
            fh.write("\n")
        else:
            fh.write(dumps(d, meta))
