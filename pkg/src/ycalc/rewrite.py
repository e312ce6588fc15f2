"""Rewrite rules: metavariables, matching, application and soundness checks."""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence

import numpy as np

from .angle import Angle, as_angle
from .diagram import (
    Y, ZX, ZXR, Boundary, Builder, Diagram, DiagramError, HBox, HNode, PiDot, XSpider, YBox, ZSpider,
    colour_swap, flip_vertical, natural_key, validate,
)
from .semantics import EXACT, FLOAT, FragmentError, interpret

__all__ = [
    "AngleVar", "RewriteRule", "MatchSite", "SoundnessReport", "RewriteError",
    "find_matches", "apply", "check_soundness", "rewrite_once",
]


class RewriteError(RuntimeError):
    """A match site no longer fits the diagram it is applied to."""


@dataclass(frozen=True)
class AngleVar:
    """Pattern angle ``sign*name + offset``."""

    name: str
    sign: int = 1
    offset: Angle = Angle()

    def __add__(self, other) -> AngleVar:
        return AngleVar(self.name, self.sign, self.offset + as_angle(other))

    __radd__ = __add__

    def __sub__(self, other) -> AngleVar:
        return self + (-as_angle(other))

    def __rsub__(self, other) -> AngleVar:
        return (-self) + other

    def __neg__(self) -> AngleVar:
        return AngleVar(self.name, -self.sign, -self.offset)

    def __bool__(self) -> bool:
        return True

    def solve(self, host: Angle) -> Angle:
        v = host - self.offset
        return v if self.sign > 0 else -v

    def evaluate(self, binding: Mapping[str, Angle]) -> Angle:
        v = binding[self.name]
        return (v if self.sign > 0 else -v) + self.offset

    def __str__(self) -> str:
        s = ("-" if self.sign < 0 else "") + self.name
        return s if not self.offset else f"{s}+{self.offset}"


def _angles_equal(a: Angle, b: Angle, period: int) -> bool:
    if not a.is_free and not b.is_free:
        return (a.fraction - b.fraction) % period == 0
    d = math.remainder(a.value - b.value, period * math.pi)
    return abs(d) < 1e-12


def _match_angle(p, h: Angle, binding: dict, period: int) -> bool:
    if isinstance(p, AngleVar):
        v = p.solve(h)
        if p.name in binding:
            return _angles_equal(binding[p.name], v, period)
        binding[p.name] = v if v.is_free else v.reduce(period)
        return True
    return _angles_equal(p, h, period)


def _match_kind(p, h, binding: dict) -> bool:
    if type(p) is not type(h):
        return False
    if isinstance(p, (ZSpider, XSpider)):
        return _match_angle(p.phase, h.phase, binding, 2)
    if isinstance(p, YBox):
        return p.flipped == h.flipped and _match_angle(p.angle, h.angle, binding, 4)
    if isinstance(p, PiDot):
        return p.colour == h.colour
    if isinstance(p, HNode):
        return p.arity == h.arity
    return True


# ---------------------------------------------------------------------------
# rules

TRANSFORMS = ("flip", "swap", "flip,swap")


def _transform(d: Diagram, how: str | None) -> Diagram:
    if not how:
        return d
    if "swap" in how:
        d = colour_swap(d)
    if "flip" in how:
        d = flip_vertical(d)
    return d


@dataclass(frozen=True)
class RewriteRule:
    """A named equation ``lhs = rhs`` between diagram families.

    ``lhs`` and ``rhs`` take keyword parameters: angles named in ``angles`` and
    structural integers named in ``ints`` (with their sampling domains).
    """

    name: str
    calculus: str
    lhs: Callable[..., Diagram]
    rhs: Callable[..., Diagram]
    angles: tuple[str, ...] = ()
    ints: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    fragment: Fraction | None = None
    provenance: str = "axiom"
    aliases: tuple[str, ...] = ()
    transform: str | None = None
    propose: Callable[[Diagram], Iterable[dict]] | None = None
    description: str = ""
    constraint: Callable[[dict], bool] | None = None
    exact_fragment: Fraction | None = None

    @property
    def base_name(self) -> str:
        return self.name.split("[")[0]

    def variant(self, how: str) -> RewriteRule:
        return replace(self, name=f"{self.name}[{how}]", transform=how)

    def variants(self) -> list[RewriteRule]:
        return [self.variant(t) for t in TRANSFORMS]

    def build(self, side: str, params: Mapping[str, Any]) -> Diagram:
        fn = self.lhs if side == "lhs" else self.rhs
        return _transform(fn(**params), self.transform)

    def instance(self, **params) -> tuple[Diagram, Diagram]:
        params = {k: (as_angle(v) if k in self.angles else v) for k, v in params.items()}
        return self.build("lhs", params), self.build("rhs", params)

    def pattern(self, ints: Mapping[str, int]) -> Diagram:
        params = dict(ints)
        for a in self.angles:
            params[a] = AngleVar(a)
        return self.build("lhs", params)

    def default_ints(self) -> dict[str, int]:
        return {k: v[0] for k, v in self.ints.items()}

    def sample(self, rng: random.Random, exact: bool = False) -> dict[str, Any]:
        for _ in range(1000):
            params: dict[str, Any] = {k: rng.choice(list(v)) for k, v in self.ints.items()}
            for a in self.angles:
                params[a] = self._sample_angle(rng, exact)
            if self.constraint is None or self.constraint(params):
                return params
        raise RuntimeError(f"could not sample admissible parameters for {self.name}")

    def _sample_angle(self, rng: random.Random, exact: bool) -> Angle:
        frag = self.fragment
        if exact:
            frag = self.exact_fragment or frag or Fraction(1, 2)
            if self.fragment is not None and frag > self.fragment:
                frag = self.fragment
        if frag is None:
            if rng.random() < 0.25:
                return Angle.pi(Fraction(rng.randint(-16, 16), rng.choice([1, 2, 3, 4, 6, 8])))
            return Angle.radians(rng.uniform(-4 * math.pi, 4 * math.pi))
        period = 4 if self.calculus == Y else 2
        steps = int(period / frag)
        return Angle.pi(frag * rng.randrange(-steps, 2 * steps))

    def finite_instances(self, exact: bool = False) -> list[dict] | None:
        """All instantiations when the domain is finite, else ``None``."""
        if self.angles and self.fragment is None:
            return None
        frag = self.fragment
        if self.angles:
            period = 4 if self.calculus == Y else 2
            vals = [Angle.pi(frag * k) for k in range(int(period / frag))]
        else:
            vals = []
        out = []
        keys = list(self.ints)
        for ints in itertools.product(*(self.ints[k] for k in keys)):
            for angs in itertools.product(vals, repeat=len(self.angles)):
                p = dict(zip(keys, ints))
                p.update(zip(self.angles, angs))
                if self.constraint is None or self.constraint(p):
                    out.append(p)
        return out

    def __str__(self) -> str:
        return self.name


# ---------------------------------------------------------------------------
# matching


@dataclass(frozen=True)
class MatchSite:
    """An embedding of a rule's left-hand side into a host diagram."""

    rule: RewriteRule
    ints: tuple[tuple[str, int], ...]
    embedding: tuple[tuple[str, str], ...]
    edges: tuple[tuple[str, str], ...]
    boundary: tuple[tuple[str, int], ...]
    binding: tuple[tuple[str, Angle], ...]

    @property
    def rule_name(self) -> str:
        return self.rule.name

    @property
    def nodes(self) -> list[str]:
        return [h for _p, h in self.embedding]

    def params(self) -> dict[str, Any]:
        p: dict[str, Any] = dict(self.ints)
        p.update(dict(self.binding))
        return p

    def to_json(self) -> dict:
        return {
            "rule": self.rule.name,
            "nodes": dict(self.embedding),
            "binding": {k: str(v) for k, v in self.binding},
            "ints": dict(self.ints),
        }


def _edge_sig(a: tuple, b: tuple) -> tuple:
    return (a, b) if a <= b else (b, a)


def _match_pattern(pat: Diagram, host: Diagram, rule: RewriteRule, ints: dict) -> list[MatchSite]:
    pin = pat.interior()
    if not pin:
        return []
    for e, (a, b) in pat.edges.items():
        if isinstance(pat.kind(a[0]), Boundary) and isinstance(pat.kind(b[0]), Boundary):
            return []
    # order pattern nodes so each one (after the first of a component) touches an earlier one
    order: list[str] = []
    seen: set[str] = set()
    for start in pin:
        if start in seen:
            continue
        stack = [start]
        while stack:
            u = stack.pop(0)
            if u in seen:
                continue
            seen.add(u)
            order.append(u)
            for v, _p in pat.neighbours(u):
                if v not in seen and not isinstance(pat.kind(v), Boundary):
                    stack.append(v)
    # pattern interior edge multiset per node pair
    pedges: dict[tuple[str, str], Counter] = defaultdict(Counter)
    for e, (a, b) in pat.edges.items():
        if isinstance(pat.kind(a[0]), Boundary) or isinstance(pat.kind(b[0]), Boundary):
            continue
        u, v = sorted((a[0], b[0]), key=order.index)
        ea, eb = (a, b) if a[0] == u else (b, a)
        pedges[(u, v)][(ea[1], eb[1]) if u != v else tuple(sorted((ea[1], eb[1])))] += 1
    hedges: dict[tuple[str, str], dict[tuple, list[str]]] = defaultdict(lambda: defaultdict(list))
    for e in sorted(host.edges, key=natural_key):
        a, b = host.edges[e]
        for j, (x, y) in enumerate(((a, b), (b, a))):
            if x[0] == y[0] and j:
                continue  # a self-loop is recorded once
            key = (x[1], y[1]) if x[0] != y[0] else tuple(sorted((x[1], y[1])))
            hedges[(x[0], y[0])][key].append(e)
    hcands = [n for n in host.interior()]
    results: list[MatchSite] = []
    seen_keys: set = set()

    def feasible(u: str, h: str, emb: dict) -> bool:
        for (a, b), cnt in pedges.items():
            if u not in (a, b):
                continue
            other = b if a == u else a
            if other != u and other not in emb:
                continue
            ha = emb.get(a, h) if a != u else h
            hb = emb.get(b, h) if b != u else h
            for key, c in cnt.items():
                if len(hedges.get((ha, hb), {}).get(key, ())) < c:
                    return False
        return True

    def rec(i: int, emb: dict, binding: dict) -> None:
        if i == len(order):
            site = _finish(emb, binding)
            if site is not None:
                k = (frozenset(emb.values()), tuple(sorted((n, str(v)) for n, v in binding.items())))
                if k not in seen_keys:
                    seen_keys.add(k)
                    results.append(site)
            return
        u = order[i]
        pk = pat.kind(u)
        used = set(emb.values())
        for h in hcands:
            if h in used or host.degree(h) != pat.degree(u):
                continue
            b2 = dict(binding)
            if not _match_kind(pk, host.kind(h), b2):
                continue
            if not feasible(u, h, emb):
                continue
            emb[u] = h
            rec(i + 1, emb, b2)
            del emb[u]

    def _finish(emb: dict, binding: dict) -> MatchSite | None:
        used_edges: dict[str, str] = {}
        taken: set[str] = set()
        for (a, b), cnt in sorted(pedges.items()):
            for key, c in sorted(cnt.items()):
                avail = [e for e in hedges[(emb[a], emb[b])][key] if e not in taken]
                if len(avail) < c:
                    return None
                for e in avail[:c]:
                    taken.add(e)
        # free ends at image nodes, in sorted order
        free: dict[tuple[str, int], list[tuple[str, int]]] = defaultdict(list)
        for u in order:
            h = emb[u]
            for e, s in host.incident(h):
                if e in taken:
                    continue
                free[(h, host.end(e, s)[1])].append((e, s))
        bnd = []
        for pb in list(pat.inputs) + list(pat.outputs):
            (pe, ps), = pat.incident(pb)
            pu, pp = pat.other(pe, ps)
            lst = free[(emb[pu], pp)]
            if not lst:
                return None
            bnd.append(lst.pop(0))
        if any(free.values()):
            return None
        return MatchSite(
            rule,
            tuple(sorted(ints.items())),
            tuple((u, emb[u]) for u in order),
            tuple(sorted((e, e) for e in taken)),
            tuple(bnd),
            tuple(sorted(binding.items())),
        )

    rec(0, {}, {})
    return results


def find_matches(d: Diagram, rule: RewriteRule, limit: int | None = None) -> list[MatchSite]:
    """Every embedding of ``rule``'s left-hand side into ``d``, sorted by node ids."""
    if rule.calculus != d.calculus:
        return []
    if rule.propose:
        proposals = list(rule.propose(d))
    else:
        keys = list(rule.ints)
        proposals = [dict(zip(keys, v)) for v in itertools.product(*(rule.ints[k] for k in keys))]
    out: list[MatchSite] = []
    seen: set = set()
    for ints in proposals:
        pat = rule.pattern(ints)
        for site in _match_pattern(pat, d, rule, ints):
            key = (frozenset(site.nodes), site.binding)
            if key in seen:
                continue
            seen.add(key)
            out.append(site)
    out.sort(key=lambda s: (sorted((natural_key(n) for n in s.nodes)), [str(v) for _k, v in s.binding]))
    return out[:limit] if limit else out


def apply(d: Diagram, site: MatchSite) -> Diagram:
    """Replace the matched left-hand side by the rule's right-hand side."""
    rule = site.rule
    params = site.params()
    pat = rule.pattern(dict(site.ints))
    binding: dict = {}
    for pu, h in site.embedding:
        if h not in d.nodes or not _match_kind(pat.kind(pu), d.kind(h), binding):
            raise RewriteError(f"stale match site for {rule.name}: node {h}")
        if d.degree(h) != pat.degree(pu):
            raise RewriteError(f"stale match site for {rule.name}: degree of {h}")
    if dict(site.binding) and any(str(binding[k]) != str(v) for k, v in site.binding if k in binding):
        raise RewriteError(f"stale match site for {rule.name}: angles changed")
    images = {h for _p, h in site.embedding}
    for e, _ in site.edges:
        if e not in d.edges:
            raise RewriteError(f"stale match site for {rule.name}: edge {e}")
    for e, s in site.boundary:
        if e not in d.edges or d.end(e, s)[0] not in images:
            raise RewriteError(f"stale match site for {rule.name}: edge {e}")
    rhs = rule.build("rhs", params)
    b = d.builder()
    tmp = []
    for e, s in site.boundary:
        t = b.add(Boundary("in"), b.fresh("t"))
        ends = list(b.edges[e])
        ends[s] = (t, 0)
        b.edges[e] = tuple(ends)
        tmp.append(t)
    for h in images:
        b.remove_node(h)
    ins, outs, _ = b.embed(rhs)
    for t, r in zip(tmp, ins + outs):
        b.fuse_boundaries(t, r)
    out = b.build(check=False)
    errs = validate(out)
    if errs is not True:
        raise RewriteError(f"{rule.name} produced an invalid diagram: {errs}")
    return out


def rewrite_once(d: Diagram, rule: RewriteRule) -> Diagram | None:
    sites = find_matches(d, rule, limit=1)
    return apply(d, sites[0]) if sites else None


# ---------------------------------------------------------------------------
# soundness


@dataclass
class SoundnessReport:
    rule: str
    samples: int
    max_deviation: float
    passed: bool
    exact_checked: int = 0
    exact_passed: bool = True
    worst_params: dict | None = None
    tol: float = 1e-9

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "samples": self.samples,
            "max_deviation": self.max_deviation,
            "pass": self.passed and self.exact_passed,
            "exact_checked": self.exact_checked,
            "exact_pass": self.exact_passed,
            "worst_params": {k: str(v) for k, v in (self.worst_params or {}).items()},
        }

    @property
    def ok(self) -> bool:
        return self.passed and self.exact_passed


def check_soundness(
    rule: RewriteRule,
    samples: int = 25,
    seed: int = 0,
    tol: float = 1e-9,
    exact: bool = True,
    evaluate: Callable[[Diagram], Any] | None = None,
) -> SoundnessReport:
    """Compare both sides on random (or, for finite domains, all) instantiations."""
    rng = random.Random(f"{seed}:{rule.name}")
    ev = evaluate or (lambda dd: interpret(dd))
    finite = rule.finite_instances()
    insts = finite if finite is not None else [rule.sample(rng) for _ in range(samples)]
    worst, worst_p = 0.0, None
    for p in insts:
        lhs, rhs = rule.instance(**p)
        dev = ev(lhs).deviation(ev(rhs))
        if dev > worst or worst_p is None:
            worst, worst_p = max(worst, dev), p
    rep = SoundnessReport(rule.name, len(insts), worst, worst <= tol, worst_params=worst_p, tol=tol)
    if exact and evaluate is None:
        ex = finite if finite is not None else [rule.sample(rng, exact=True) for _ in range(min(samples, 5))]
        for p in ex:
            lhs, rhs = rule.instance(**p)
            try:
                ok = interpret(lhs, EXACT).exact_equal(interpret(rhs, EXACT))
            except FragmentError:
                continue
            rep.exact_checked += 1
            if not ok:
                rep.exact_passed = False
                rep.worst_params = p
    return rep
