"""Derived equations of the Y and ZX calculi, stated as rewrite rules."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .angle import Angle
from .catalog import rsup_lhs, rsup_rhs
from .diagram import (
    Y, ZX, Builder, Diagram, HBox, HNode, XSpider, ZSpider, box, compose, empty, generator,
    identity, seq, tensor,
)
from .gadgets import (
    HALF_PI, PI, bend_first, bicolor, box_on_leg, flip_all_boxes, green, half, minus_one,
    pi_gate, pi_state, plug_last, red, sqrt2_pow, tensor_all, triangle, with_scalar,
    zx_bicolor, zx_phase_scalar,
)
from .rewrite import RewriteRule

__all__ = ["lemma_catalog", "lemma_by_name", "hadamard_rules", "HNODE_ARITIES"]


def _lemma(name: str, calculus: str, lhs, rhs, alias: str, **kw) -> RewriteRule:
    return RewriteRule(name, calculus, lhs, rhs, provenance="lemma", aliases=(alias,), **kw)


def _hopf(calculus: str):
    return (
        lambda: compose(red(2, 1, 0, calculus), green(1, 2, 0, calculus)),
        lambda: tensor(seq(green(1, 0, 0, calculus), red(0, 1, 0, calculus)), half(calculus)),
    )


def _bialgebra_rhs(n: int, m: int) -> Diagram:
    b = Builder(Y)
    ins = [b.input() for _ in range(n)]
    gs = [b.add(ZSpider()) for _ in range(n)]
    rs = [b.add(XSpider()) for _ in range(m)]
    outs = [b.output() for _ in range(m)]
    for i, g in zip(ins, gs):
        b.wire(i, g)
    for g in gs:
        for r in rs:
            b.wire(g, r)
    for r, o in zip(rs, outs):
        b.wire(r, o)
    return with_scalar(b.build(), (n - 1) * (m - 1))


def _t_effect(effect: Diagram) -> Diagram:
    """The pi/2 triangle with ``effect`` on its last leg and its first leg bent down."""
    return bend_first(plug_last(triangle(), effect))


def _k3_effect(effect: Diagram) -> Diagram:
    return bend_first(plug_last(generator(HNode(3), 0, 3), effect))


def _minus_sqrt2() -> Diagram:
    return tensor(minus_one(), bicolor())


@lru_cache(maxsize=None)
def _y_lemmas() -> tuple[RewriteRule, ...]:
    hl, hr = _hopf(Y)
    Zg, Xg = pi_gate("Z"), pi_gate("X")
    a = ("alpha",)
    return (
        _lemma("Y.L4", Y, lambda: box(0), lambda: identity(), "Y.L:box-zero"),
        _lemma("Y.L5", Y, lambda: green(0, 0), lambda: tensor(bicolor(), bicolor()), "Y.L:dot"),
        _lemma("Y.L6", Y, hl, hr, "Y.L:hopf"),
        _lemma(
            "Y.L7", Y,
            lambda n, m: seq(red(n, 1), green(1, m)), lambda n, m: _bialgebra_rhs(n, m),
            "Y.L:bialgebra", ints={"n": (1, 2, 3), "m": (1, 2, 3)},
        ),
        _lemma(
            "Y.L8", Y, lambda alpha: box(alpha, True), lambda alpha: box(-alpha),
            "Y.L:upside-down", angles=a,
        ),
        _lemma(
            "Y.L9", Y,
            lambda alpha, beta: seq(box(beta, True), box(alpha)),
            lambda alpha, beta: box(alpha - beta),
            "Y.L:mixed-fusion", angles=("alpha", "beta"),
        ),
        _lemma(
            "Y.L10", Y,
            lambda: seq(Xg, Zg), lambda: tensor(seq(Zg, Xg), minus_one()), "Y.L:pi-anticommute",
        ),
        _lemma(
            "Y.L11", Y,
            lambda: Xg, lambda: tensor(_t_effect(green(1, 0)), _minus_sqrt2()), "Y.L:triangle-pi",
        ),
        _lemma(
            "Y.L12", Y,
            lambda alpha: seq(box(alpha), Zg), lambda alpha: seq(Zg, box(-alpha)),
            "Y.L:pi-reverses-box", angles=a,
        ),
        _lemma("Y.L13", Y, lambda: seq(red(0, 1), Zg), lambda: red(0, 1), "Y.L:pi-on-red"),
        _lemma(
            "Y.L14", Y,
            lambda: compose(green(3, 1), tensor(identity(), pi_state("Z"), pi_state("Z"))),
            lambda: identity(), "Y.L:pi-involution",
        ),
        _lemma(
            "Y.L15", Y,
            lambda alpha: box(alpha),
            lambda alpha: tensor(seq(Xg, _t_effect(seq(box(alpha), green(1, 0)))), _minus_sqrt2()),
            "Y.L:exclusion", angles=a,
        ),
        _lemma(
            "Y.L16", Y,
            lambda: _self_loop_box(HALF_PI), lambda: tensor(identity(), sqrt2_pow(-1)),
            "Y.L:half-pi-loop",
        ),
        _lemma(
            "Y.L17", Y,
            lambda alpha: box(alpha),
            lambda alpha: tensor(
                seq(Zg, _t_effect(seq(box(HALF_PI), box(alpha), red(1, 0)))), bicolor()
            ),
            "Y.L:exclusion-2", angles=a,
        ),
        _lemma(
            "Y.L18", Y, lambda: box(Angle.pi(2)), lambda: tensor(identity(), minus_one()),
            "Y.L:box-2pi",
        ),
        _lemma(
            "Y.L19", Y, lambda: tensor(minus_one(), minus_one()), lambda: empty(), "Y.L:minus-squared",
        ),
        _lemma(
            "Y.L20", Y,
            lambda n, alpha: flip_all_boxes(rsup_lhs(n, alpha)),
            lambda n, alpha: flip_all_boxes(rsup_rhs(n, alpha)),
            "Y.L:rsup-upside-down", angles=a, ints={"n": (2, 3, 5)},
        ),
        _lemma(
            "Y.L21", Y,
            lambda: seq(Xg, green(1, 2)), lambda: seq(green(1, 2), tensor(Xg, Xg)),
            "Y.L:pi-copy",
        ),
        _lemma(
            "Y.L22", Y,
            lambda alpha: box(alpha),
            lambda alpha: seq(Zg, _k3_effect(seq(box(alpha), green(1, 0)))),
            "Y.L:exclusion-hada", angles=a,
        ),
        _lemma("Y.L23", Y, lambda: box(PI), lambda: seq(Zg, Xg), "Y.L:box-pi"),
        _lemma(
            "Y.L24", Y,
            lambda alpha: box_on_leg(generator(HNode(3), 0, 3), 0, alpha),
            lambda alpha: box_on_leg(generator(HNode(3), 0, 3), 1, alpha),
            "Y.L:box-around-hnode", angles=a,
        ),
        _lemma(
            "Y.L25", Y,
            lambda n: plug_last(generator(HNode(n + 1), 0, n + 1), red(1, 0)),
            lambda n: generator(HNode(n), 0, n),
            "Y.L:hada", ints={"n": (2, 3, 4)},
        ),
    )


def _hnode_pair(n: int, m: int) -> Diagram:
    """``HNode(n)`` and ``HNode(m)`` joined through one Hadamard box; other legs are outputs."""
    b = Builder(Y)
    u, v, h = b.add(HNode(n)), b.add(HNode(m)), b.add(HBox())
    b.wire(u, h)
    b.wire(h, v)
    for _ in range(n - 1):
        b.wire(u, b.output())
    for _ in range(m - 1):
        b.wire(v, b.output())
    return b.build()


HNODE_ARITIES = (2, 3, 4, 5)


def hadamard_rules() -> list[RewriteRule]:
    """Hadamard-node fusion and box rotation around a Hadamard node."""
    ar = HNODE_ARITIES
    return [
        RewriteRule(
            "Y.P:hnode-fusion", Y,
            lambda n, m: _hnode_pair(n, m),
            lambda n, m: generator(HNode(n + m - 2), 0, n + m - 2),
            ints={"n": ar, "m": ar}, provenance="proposition",
        ),
        RewriteRule(
            "Y.P:box-rotate", Y,
            lambda N, J, alpha: box_on_leg(generator(HNode(N), 0, N), 0, alpha),
            lambda N, J, alpha: box_on_leg(generator(HNode(N), 0, N), J, alpha),
            angles=("alpha",), ints={"N": ar, "J": (1, 2, 3, 4)},
            constraint=lambda p: p["J"] < p["N"], provenance="proposition",
        ),
    ]


def _spider_loop(colour: str, N: int, a=0, calculus: str = Y) -> Diagram:
    from .diagram import spider_kind

    b = Builder(calculus)
    s = b.add(spider_kind(colour, a))
    b.wire(s, s)
    for _ in range(N):
        b.wire(s, b.output())
    return b.build()


def spider_loop_rule(calculus: str, colour: str = "Z") -> RewriteRule:
    from .diagram import spider

    prefix = {Y: "Y", ZX: "ZX"}.get(calculus, "ZXr")
    tag = "" if colour == "Z" else "[swap]"
    if calculus == Y:
        return _lemma(
            f"{prefix}.L:spider-loop{tag}", calculus,
            lambda N: _spider_loop(colour, N), lambda N: spider(colour, 0, N),
            f"{prefix}.L:loop{tag}", ints={"N": (0, 1, 2, 3)}, propose=_loop_propose,
        )
    return _lemma(
        f"{prefix}.L:spider-loop{tag}", calculus,
        lambda N, a: _spider_loop(colour, N, a, calculus),
        lambda N, a: spider(colour, 0, N, a, calculus),
        f"{prefix}.L:loop{tag}", ints={"N": (0, 1, 2, 3)}, angles=("a",), propose=_loop_propose,
        fragment=Fraction(1) if calculus != ZX else None,
    )


def _loop_propose(d: Diagram) -> list[dict]:
    out = []
    for e, ((a, _), (b, _)) in sorted(d.edges.items()):
        if a == b and isinstance(d.kind(a), (ZSpider, XSpider)):
            p = {"N": d.degree(a) - 2}
            if p not in out:
                out.append(p)
    return out


def _self_loop_box(angle) -> Diagram:
    from .diagram import BOTTOM, TOP, YBox

    b = Builder(Y)
    s = b.add(ZSpider())
    x = b.add(YBox(angle))
    b.wire(b.input(), s)
    b.wire(s, (x, BOTTOM))
    b.wire((x, TOP), s)
    b.wire(s, b.output())
    return b.build()


@lru_cache(maxsize=None)
def _zx_lemmas() -> tuple[RewriteRule, ...]:
    hl, hr = _hopf(ZX)
    q = Angle.pi(Fraction(1, 4))
    return (
        _lemma(
            "ZX.L:global-phases", ZX,
            lambda alpha, beta: tensor(zx_phase_scalar(alpha), zx_phase_scalar(beta)),
            lambda alpha, beta: zx_phase_scalar(alpha + beta),
            "ZX.L:multiplying-global-phases", angles=("alpha", "beta"),
        ),
        _lemma(
            "ZX.L:eu-inverse", ZX,
            lambda: tensor(zx_bicolor(-q, Angle.pi(Fraction(3, 4))), zx_bicolor(q, Angle.pi(Fraction(5, 4)))),
            lambda: empty(ZX), "ZX.L:inverse-of-eu-scalar",
        ),
        _lemma(
            "ZX.L:bicolor-alpha-0", ZX,
            lambda alpha: zx_bicolor(alpha, 0), lambda alpha: bicolor(ZX),
            "ZX.L:bicolor", angles=("alpha",),
        ),
        _lemma("ZX.L:hopf", ZX, hl, hr, "ZX.L6"),
        _lemma(
            "ZX.L:k1", ZX,
            lambda a: tensor(seq(red(0, 1, a, ZX), green(1, 2, 0, ZX)), bicolor(ZX)),
            lambda a: tensor(red(0, 1, a, ZX), red(0, 1, a, ZX)),
            "ZX.L:zx-k1", angles=("a",), fragment=Fraction(1),
        ),
        _lemma(
            "ZX.L:k2", ZX,
            lambda alpha, n, m: seq(
                tensor_all([red(1, 1, PI, ZX) for _ in range(n)], ZX), green(n, m, alpha, ZX)
            ),
            lambda alpha, n, m: tensor(
                seq(green(n, m, -alpha, ZX), tensor_all([red(1, 1, PI, ZX) for _ in range(m)], ZX)),
                zx_phase_scalar(alpha),
            ),
            "ZX.L:zx-k2", angles=("alpha",), ints={"n": (0, 1, 2), "m": (0, 1, 2)},
        ),
        _lemma(
            "ZX.L:zero-absorbs", ZX,
            lambda alpha, beta: tensor(green(0, 0, PI, ZX), zx_bicolor(alpha, beta)),
            lambda alpha, beta: green(0, 0, PI, ZX),
            "ZX.L:absorbing", angles=("alpha", "beta"),
        ),
    )


def lemma_catalog() -> list[RewriteRule]:
    """Every derived lemma, Y first, then ZX."""
    return (
        list(_y_lemmas())
        + [spider_loop_rule(Y)]
        + hadamard_rules()
        + list(_zx_lemmas())
        + [spider_loop_rule(ZX)]
    )


def lemma_by_name(name: str) -> RewriteRule:
    for r in lemma_catalog():
        if name in (r.name, *r.aliases):
            return r
    raise KeyError(name)
