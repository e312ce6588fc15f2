"""Angle normalisation and a terminating simplification strategy."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .angle import Angle
from .diagram import (
    Y, ZX, ZXR, Diagram, XSpider, YBox, ZSpider, natural_key, validate,
)
from .rewrite import MatchSite, RewriteRule, apply, find_matches

__all__ = ["normalize_angles", "simplify", "simplify_rules", "TraceEntry"]


def normalize_angles(d: Diagram) -> Diagram:
    """Upright every box (negating its angle), reduce boxes mod 4pi and phases mod 2pi."""
    nodes = {}
    for n, k in d.nodes.items():
        if isinstance(k, YBox):
            a = -k.angle if k.flipped else k.angle
            k = YBox(a.reduce(4), False)
        elif isinstance(k, (ZSpider, XSpider)) and k.phase:
            k = type(k)(k.phase.reduce(2))
        nodes[n] = k
    return Diagram(nodes, d.edges, d.inputs, d.outputs, d.calculus)


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    nodes: tuple[str, ...]
    binding: tuple[tuple[str, str], ...] = ()

    def to_json(self) -> dict:
        return {"rule": self.rule, "nodes": list(self.nodes), "binding": dict(self.binding)}


def simplify_rules(calculus: str) -> list[RewriteRule]:
    """The size-reducing rule subset, in fuse-first priority order."""
    from .catalog import rule_by_name
    from .lemmas import lemma_by_name, spider_loop_rule

    p = {Y: "Y", ZXR: "ZXr", ZX: "ZX"}[calculus]
    names = [f"{p}.S1", f"{p}.S1[swap]"]
    rules = [rule_by_name(n) for n in names]
    rules += [spider_loop_rule(calculus, "Z"), spider_loop_rule(calculus, "X")]
    rules += [rule_by_name(f"{p}.S2"), rule_by_name(f"{p}.S2[swap]")]
    if calculus == Y:
        rules += [
            rule_by_name("Y.RS1"),
            lemma_by_name("Y.L4"),
            lemma_by_name("Y.L14"),
            lemma_by_name("Y.L19"),
            rule_by_name("Y.IV"),
        ]
    elif calculus == ZXR:
        rules.append(rule_by_name("ZXr.IV"))
    return rules


def _scalar_pairs(d: Diagram) -> list[tuple[str, str]]:
    """Isolated green/red pairs joined only to each other."""
    out = []
    for n in d.interior():
        k = d.kind(n)
        if not isinstance(k, ZSpider) or k.phase:
            continue
        nbrs = {m for m, _p in d.neighbours(n)}
        if len(nbrs) != 1:
            continue
        (m,) = nbrs
        km = d.kind(m)
        if isinstance(km, XSpider) and not km.phase and {x for x, _ in d.neighbours(m)} == {n}:
            out.append((n, m))
    return out


def _hopf_step(d: Diagram) -> tuple[Diagram, TraceEntry] | None:
    """Drop two parallel green/red edges, moving the factor 1/2 into a scalar pair."""
    pairs = _scalar_pairs(d)
    if not pairs:
        return None
    scalar_nodes = {x for pr in pairs for x in pr}
    groups: dict[tuple[str, str], list[str]] = {}
    for e in sorted(d.edges, key=natural_key):
        (a, _), (b, _) = d.edges[e]
        if a == b or a in scalar_nodes or b in scalar_nodes:
            continue
        ka, kb = d.kind(a), d.kind(b)
        if isinstance(ka, XSpider) and isinstance(kb, ZSpider):
            a, b = b, a
            ka, kb = kb, ka
        if isinstance(ka, ZSpider) and isinstance(kb, XSpider):
            groups.setdefault((a, b), []).append(e)
    for (g, r), es in sorted(groups.items(), key=lambda kv: (natural_key(kv[0][0]), natural_key(kv[0][1]))):
        if len(es) < 2:
            continue
        bd = d.builder()
        del bd.edges[es[0]], bd.edges[es[1]]
        sg, sr = pairs[0]
        bd.wire(sg, sr)
        bd.wire(sg, sr)
        return bd.build(check=False), TraceEntry("Y.L6" if d.calculus == Y else "ZX.L:hopf", (g, r))
    return None


def _count(d: Diagram) -> int:
    return len(d.interior())


def _entry(site: MatchSite) -> TraceEntry:
    return TraceEntry(site.rule.name, tuple(site.nodes), tuple((k, str(v)) for k, v in site.binding))


def simplify(
    d: Diagram, strategy: str = "fuse-first", max_steps: int = 1000
) -> tuple[Diagram, list[TraceEntry]]:
    """Rewrite with size-reducing rules until nothing applies or ``max_steps`` is hit."""
    if strategy not in ("fuse-first", "size-greedy"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rules = simplify_rules(d.calculus)
    trace: list[TraceEntry] = []
    norm = normalize_angles(d)
    if norm != d:
        trace.append(TraceEntry("normalize", ()))
        d = norm
    steps = 0
    while steps < max_steps:
        nxt = _step_fuse_first(d, rules) if strategy == "fuse-first" else _step_greedy(d, rules)
        if nxt is None:
            break
        new, entry = nxt
        trace.append(entry)
        steps += 1
        norm = normalize_angles(new)
        if norm != new:
            trace.append(TraceEntry("normalize", ()))
        d = norm
    return d, trace


def _step_fuse_first(d: Diagram, rules: list[RewriteRule]):
    for r in rules:
        for site in find_matches(d, r):
            new = apply(d, site)
            if _count(new) <= _count(d):
                return new, _entry(site)
    return _hopf_step(d)


def _step_greedy(d: Diagram, rules: list[RewriteRule]):
    best = None
    for r in rules:
        for site in find_matches(d, r):
            new = apply(d, site)
            if _count(new) > _count(d):
                continue
            key = (_count(new), len(new.edges))
            if best is None or key < best[0]:
                best = (key, new, _entry(site))
    if best is None:
        return _hopf_step(d)
    return best[1], best[2]
