"""Axiom catalogs of the Y, real-stabiliser ZX and ZX calculi."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .angle import Angle
from .diagram import (
    BOTTOM, TOP, Y, ZX, ZXR, Builder, Diagram, HBox, XSpider, YBox, ZSpider,
    box, compose, cup, empty, identity, seq, spider_kind, swap, tensor,
)
from .gadgets import (
    PI, HALF_PI, bicolor, box_on_leg, branch_state, green, hbox, inv_sqrt2, loop, red,
    sqrt2_pow, tensor_all, triangle, with_scalar, zero, zx_bicolor, zx_phase_scalar,
)
from .rewrite import RewriteRule

__all__ = ["rule_catalog", "rule_by_name", "rsup_rule", "sup_rule", "base_rules", "RSUP_NS", "SUP_NS"]

RSUP_NS = (2, 3, 5, 7)
SUP_NS = (2, 3, 5, 7)
NEG_HALF_PI = Angle.pi(Fraction(-1, 2))


# --- shared structural builders ---------------------------------------------


def _fusion_lhs(colour: str, p: int, q: int, k: int, a=0, b=0, calculus: str = Y) -> Diagram:
    bd = Builder(calculus)
    ins = [bd.input() for _ in range(p)]
    u = bd.add(spider_kind(colour, a))
    v = bd.add(spider_kind(colour, b))
    outs = [bd.output() for _ in range(q)]
    for i in ins:
        bd.wire(i, u)
    for _ in range(k):
        bd.wire(u, v)
    for o in outs:
        bd.wire(v, o)
    return bd.build()


def _propose_fusion(d: Diagram) -> Iterable[dict]:
    seen = []
    for e, ((a, _), (b, _)) in sorted(d.edges.items()):
        if a == b:
            continue
        ka, kb = d.kind(a), d.kind(b)
        if type(ka) is not type(kb) or type(ka) not in (ZSpider, XSpider):
            continue
        k = sum(1 for (x, _), (y, _) in d.edges.values() if {x, y} == {a, b})
        for u, v in ((a, b), (b, a)):
            prop = {"p": d.degree(u) - k, "q": d.degree(v) - k, "k": k}
            if prop not in seen:
                seen.append(prop)
    return seen


def _propose_degree(key: str, lo: int = 0, shift: int = 0):
    def propose(d: Diagram) -> list[dict]:
        out = []
        for n in d.interior():
            if isinstance(d.kind(n), (ZSpider, XSpider)):
                deg = d.degree(n) - shift
                if deg >= lo and {key: deg} not in out:
                    out.append({key: deg})
        return out

    return propose


def _b1(calculus: str):
    lhs = lambda: tensor(seq(red(0, 1, 0, calculus), green(1, 2, 0, calculus)), bicolor(calculus))
    rhs = lambda: tensor(red(0, 1, 0, calculus), red(0, 1, 0, calculus))
    return lhs, rhs


def _b2(calculus: str):
    lhs = lambda: compose(green(1, 2, 0, calculus), red(2, 1, 0, calculus))

    def rhs():
        return with_scalar(
            seq(
                tensor(green(1, 2, 0, calculus), green(1, 2, 0, calculus)),
                tensor(identity(1, calculus), swap(calculus), identity(1, calculus)),
                tensor(red(2, 1, 0, calculus), red(2, 1, 0, calculus)),
            ),
            1,
        )

    return lhs, rhs


def _iv(calculus: str):
    return (lambda: tensor(bicolor(calculus), inv_sqrt2(calculus)), lambda: empty(calculus))


_INTS_FUSION = {"p": (0, 1, 2), "q": (0, 1, 2), "k": (1, 2, 3)}


def _common(calculus: str, prefix: str) -> list[RewriteRule]:
    b1l, b1r = _b1(calculus)
    b2l, b2r = _b2(calculus)
    return [
        RewriteRule(
            f"{prefix}.S2", calculus,
            lambda: green(1, 1, 0, calculus), lambda: identity(1, calculus),
            description="a two-legged phaseless spider is a plain wire",
        ),
        RewriteRule(
            f"{prefix}.S3", calculus,
            lambda: green(0, 2, 0, calculus), lambda: cup(calculus),
            description="a two-output phaseless spider is a cup",
        ),
        RewriteRule(
            f"{prefix}.B1", calculus, b1l, b1r,
            description="a red state copied by a green spider",
        ),
        RewriteRule(
            f"{prefix}.B2", calculus, b2l, b2r,
            description="bialgebra law",
        ),
    ]


# --- Y --------------------------------------------------------------------


def rsup_lhs(n: int, alpha) -> Diagram:
    branches = [branch_state(alpha + Angle.pi(Fraction(2 * k, n))) for k in range(n)]
    return compose(green(n, 1), tensor_all(branches))


def rsup_rhs(n: int, alpha) -> Diagram:
    gamma = alpha * n + Angle.pi(n - 1)
    if n % 2:
        return with_scalar(branch_state(gamma, flipped=n % 4 == 3), 1 - n)
    if (n // 2) % 2 == 0:
        state = green(0, 1)
    else:
        state = compose(green(2, 1), tensor(branch_state(HALF_PI), branch_state(NEG_HALF_PI)))
    return tensor(loop(gamma), sqrt2_pow(-n), state)


@lru_cache(maxsize=None)
def rsup_rule(n: int) -> RewriteRule:
    return RewriteRule(
        f"Y.RSUP_{n}", Y,
        lambda alpha: rsup_lhs(n, alpha), lambda alpha: rsup_rhs(n, alpha),
        angles=("alpha",),
        aliases=(f"Y.RS_{n}",),
        description=f"supplementarity for {n} boxes spaced by 2pi/{n}",
    )


def _rh_lhs(N: int) -> Diagram:
    d = green(0, N)
    for leg in range(N):
        d = box_on_leg(d, leg, NEG_HALF_PI)
    return d


@lru_cache(maxsize=None)
def _y_base() -> tuple[RewriteRule, ...]:
    rules = [
        RewriteRule(
            "Y.S1", Y,
            lambda p, q, k: _fusion_lhs("Z", p, q, k), lambda p, q, k: green(p, q),
            ints=_INTS_FUSION, propose=_propose_fusion,
            description="adjacent green spiders fuse",
        ),
        *_common(Y, "Y"),
        RewriteRule(
            "Y.IV", Y, *_iv(Y),
            description="sqrt2 and 1/sqrt2 cancel",
        ),
        RewriteRule(
            "Y.RS1", Y,
            lambda alpha, beta: seq(box(alpha), box(beta)),
            lambda alpha, beta: box(alpha + beta),
            angles=("alpha", "beta"),
            description="boxes in sequence add their angles",
        ),
        RewriteRule(
            "Y.RS2", Y,
            lambda alpha: box_on_leg(triangle(), 0, alpha),
            lambda alpha: box_on_leg(triangle(), 1, alpha),
            angles=("alpha",), aliases=("Y.RS3",),
            description="a box moves between legs of the pi/2 triangle",
        ),
        RewriteRule(
            "Y.RH", Y,
            lambda N: _rh_lhs(N), lambda N: red(0, N),
            ints={"N": (1, 2, 3, 4)}, propose=_propose_degree("N", 1),
            description="colour change through -pi/2 boxes on every leg",
        ),
        RewriteRule(
            "Y.RZO", Y,
            lambda alpha: tensor(zero(), loop(alpha)), lambda alpha: zero(),
            angles=("alpha",),
            description="the zero scalar absorbs a loop scalar",
        ),
    ]
    rules += [rsup_rule(n) for n in RSUP_NS]
    return tuple(rules)


# --- ZX_r -------------------------------------------------------------------


def _hl_lhs(a, N: int, calculus: str) -> Diagram:
    bd = Builder(calculus)
    s = bd.add(ZSpider(a))
    h = bd.add(HBox())
    bd.wire(s, h)
    bd.wire(h, s)
    for _ in range(N):
        bd.wire(s, bd.output())
    return bd.build()


def _h_lhs(a, n: int, m: int, calculus: str) -> Diagram:
    layer_in = tensor_all([hbox(calculus) for _ in range(n)], calculus)
    layer_out = tensor_all([hbox(calculus) for _ in range(m)], calculus)
    return seq(layer_in, green(n, m, a, calculus), layer_out)


@lru_cache(maxsize=None)
def _zxr_base() -> tuple[RewriteRule, ...]:
    c = ZXR
    pi_frag = Fraction(1)
    return (
        RewriteRule(
            "ZXr.S1", c,
            lambda p, q, k, a, b: _fusion_lhs("Z", p, q, k, a, b, c),
            lambda p, q, k, a, b: green(p, q, a + b, c),
            angles=("a", "b"), ints=_INTS_FUSION, fragment=pi_frag, propose=_propose_fusion,
            description="adjacent green spiders fuse, phases add",
        ),
        *_common(c, "ZXr"),
        RewriteRule("ZXr.IV", c, *_iv(c), description="sqrt2 and 1/sqrt2 cancel"),
        RewriteRule(
            "ZXr.HL", c,
            lambda a, N: _hl_lhs(a, N, c),
            lambda a, N: tensor(green(0, N, a + PI, c), inv_sqrt2(c)),
            angles=("a",), ints={"N": (0, 1, 2, 3)}, fragment=pi_frag,
            propose=_propose_degree("N", 0, 2),
            description="a Hadamard self-loop shifts the phase by pi",
        ),
        RewriteRule(
            "ZXr.H", c,
            lambda a, n, m: _h_lhs(a, n, m, c), lambda a, n, m: red(n, m, a, c),
            angles=("a",), ints={"n": (0, 1, 2), "m": (1, 2)}, fragment=pi_frag,
            description="Hadamard boxes on every leg change the colour",
        ),
        RewriteRule(
            "ZXr.ZO", c,
            lambda b: tensor(green(0, 0, PI, c), red(0, 0, b, c)),
            lambda b: green(0, 0, PI, c),
            angles=("b",), fragment=pi_frag,
            description="the zero scalar absorbs another scalar",
        ),
    )


# --- ZX ---------------------------------------------------------------------


def sup_lhs(n: int, alpha) -> Diagram:
    states = [green(0, 1, alpha + Angle.pi(Fraction(2 * k, n)), ZX) for k in range(n)]
    return compose(red(n, 1, 0, ZX), tensor_all(states, ZX))


def sup_rhs(n: int, alpha) -> Diagram:
    if n % 2:
        return with_scalar(green(0, 1, alpha * n, ZX), 1 - n)
    return tensor(red(0, 1, 0, ZX), green(0, 0, alpha * n + PI, ZX), sqrt2_pow(-n, ZX))


@lru_cache(maxsize=None)
def sup_rule(n: int) -> RewriteRule:
    return RewriteRule(
        f"ZX.SUP_{n}", ZX,
        lambda alpha: sup_lhs(n, alpha), lambda alpha: sup_rhs(n, alpha),
        angles=("alpha",),
        description=f"supplementarity for {n} phases spaced by 2pi/{n}",
    )


def _k2_rhs(alpha, m: int) -> Diagram:
    xs = tensor_all([red(1, 1, PI, ZX) for _ in range(m)], ZX)
    return tensor(seq(green(1, m, -alpha, ZX), xs), zx_phase_scalar(alpha))


@lru_cache(maxsize=None)
def _zx_base() -> tuple[RewriteRule, ...]:
    c = ZX
    q = Angle.pi(Fraction(1, 4))
    rules = [
        RewriteRule(
            "ZX.S1", c,
            lambda p, q, k, a, b: _fusion_lhs("Z", p, q, k, a, b, c),
            lambda p, q, k, a, b: green(p, q, a + b, c),
            angles=("a", "b"), ints=_INTS_FUSION, propose=_propose_fusion,
            description="adjacent green spiders fuse, phases add",
        ),
        *_common(c, "ZX"),
        RewriteRule(
            "ZX.E", c,
            lambda: zx_bicolor(q, -q), lambda: empty(c),
            description="a pi/4 bicolour pair is the empty diagram",
        ),
        RewriteRule(
            "ZX.EU", c,
            lambda: hbox(c),
            lambda: tensor(
                seq(green(1, 1, HALF_PI, c), red(1, 1, HALF_PI, c), green(1, 1, HALF_PI, c)),
                zx_bicolor(-q, Angle.pi(Fraction(3, 4))),
            ),
            description="Euler decomposition of the Hadamard box",
        ),
        RewriteRule(
            "ZX.H", c,
            lambda a, n, m: _h_lhs(a, n, m, c), lambda a, n, m: red(n, m, a, c),
            angles=("a",), ints={"n": (0, 1, 2), "m": (1, 2)},
            description="Hadamard boxes on every leg change the colour",
        ),
        RewriteRule(
            "ZX.K2", c,
            lambda alpha, m: seq(red(1, 1, PI, c), green(1, m, alpha, c)),
            lambda alpha, m: _k2_rhs(alpha, m),
            angles=("alpha",), ints={"m": (1, 2, 3)},
            description="a red pi passes through a green spider, negating its phase",
        ),
    ]
    rules += [sup_rule(n) for n in SUP_NS]
    return tuple(rules)


def base_rules(calculus: str) -> tuple[RewriteRule, ...]:
    return {Y: _y_base, ZXR: _zxr_base, ZX: _zx_base}[calculus]()


def rule_catalog(calculus: str = Y, variants: bool = True) -> list[RewriteRule]:
    """All axioms of ``calculus``, with flipped and colour-swapped variants."""
    out: list[RewriteRule] = []
    for r in base_rules(calculus):
        out.append(r)
        if variants:
            out.extend(r.variants())
    return out


def rule_by_name(name: str) -> RewriteRule:
    from .lemmas import lemma_catalog

    for cal in (Y, ZXR, ZX):
        for r in rule_catalog(cal):
            if name == r.name or name in r.aliases:
                return r
    for r in lemma_catalog():
        if name == r.name or name in r.aliases:
            return r
    base, _, rest = name.partition("[")
    if base.startswith("Y.RSUP_") and base[7:].isdigit():
        r = rsup_rule(int(base[7:]))
        return r.variant(rest.rstrip("]")) if rest else r
    if base.startswith("ZX.SUP_") and base[7:].isdigit():
        r = sup_rule(int(base[7:]))
        return r.variant(rest.rstrip("]")) if rest else r
    raise KeyError(name)
