"""Small reusable diagrams: scalars, pi-branches, the pi/2 triangle."""

from __future__ import annotations

from fractions import Fraction

from .angle import Angle, as_angle
from .diagram import (
    BOTTOM, TOP, Y, ZX, Builder, Diagram, HBox, XSpider, YBox, ZSpider,
    box, compose, empty, flip_vertical, generator, identity, seq, spider, spider_kind, tensor,
)

PI = Angle.pi(1)
HALF_PI = Angle.pi(Fraction(1, 2))


def green(n: int, m: int, phase=0, calculus: str = Y) -> Diagram:
    return spider("Z", n, m, phase, calculus)


def red(n: int, m: int, phase=0, calculus: str = Y) -> Diagram:
    return spider("X", n, m, phase, calculus)


def hbox(calculus: str = ZX) -> Diagram:
    return generator(HBox(), 1, 1, calculus)


def tensor_all(ds, calculus: str = Y) -> Diagram:
    ds = list(ds)
    if not ds:
        return empty(calculus)
    return tensor(*ds)


def multiedge(k: int, calculus: str = Y, colours: str = "ZX", phases=(0, 0)) -> Diagram:
    """Two 0-legged spiders joined by ``k`` parallel edges."""
    b = Builder(calculus)
    u = b.add(spider_kind(colours[0], phases[0]))
    v = b.add(spider_kind(colours[1], phases[1]))
    for _ in range(k):
        b.wire(u, v)
    return b.build()


def bicolor(calculus: str = Y) -> Diagram:
    """Scalar sqrt2."""
    return multiedge(1, calculus)


def inv_sqrt2(calculus: str = Y) -> Diagram:
    """Scalar 1/sqrt2: green and red joined by three edges."""
    return multiedge(3, calculus)


def half(calculus: str = Y) -> Diagram:
    """Scalar 1/2: green and red joined by six edges."""
    return multiedge(6, calculus)


def sqrt2_pow(j: int, calculus: str = Y) -> Diagram:
    """Scalar ``sqrt2**j`` built from multi-edge bicolour pairs."""
    if j >= 0:
        return tensor_all([bicolor(calculus) for _ in range(j)], calculus)
    j = -j
    parts = [half(calculus) for _ in range(j // 2)]
    if j % 2:
        parts.append(inv_sqrt2(calculus))
    return tensor_all(parts, calculus)


def with_scalar(d: Diagram, j: int) -> Diagram:
    """``d`` times ``sqrt2**j``."""
    return tensor(d, sqrt2_pow(j, d.calculus)) if j else d


# --- Y-calculus gadgets ---------------------------------------------------


def branch_state(angle, colour: str = "X", flipped: bool = False) -> Diagram:
    """A dot of ``colour`` followed by a box: ``0 -> 1``."""
    dot = spider(colour, 0, 1)
    return seq(dot, box(angle, flipped))


def loop(angle) -> Diagram:
    """Red state, box, red effect: the scalar ``2 cos(angle/2)``."""
    return seq(branch_state(angle), red(1, 0))


def zero() -> Diagram:
    """A zero scalar that stays zero under colour exchange."""
    return loop(PI)


def minus_one() -> Diagram:
    """Scalar -1: a 2pi loop (value -2) times 1/2."""
    return tensor(loop(Angle.pi(2)), half())


def pi_state(colour: str = "Z") -> Diagram:
    """The pi-phased ``colour`` state as a Y gadget: ``(1,-1)`` for green."""
    if colour == "Z":
        return branch_state(Angle.pi(Fraction(-1, 2)))
    return branch_state(Angle.pi(Fraction(-1, 2)), "Z", flipped=True)


def with_branch(colour: str, n: int, m: int, branch: Diagram) -> Diagram:
    """Spider ``n -> m`` of ``colour`` with an extra leg plugged by a state."""
    s = spider(colour, n + 1, m)
    return compose(s, tensor(identity(n), branch)) if n else compose(s, branch)


def pi_gate(colour: str = "Z") -> Diagram:
    """Z (green) or X (red) Pauli on one wire."""
    return with_branch(colour, 1, 1, pi_state(colour))


def triangle(boxes_flipped: bool = False) -> Diagram:
    """Three green spiders in a cycle of pi/2 boxes, one outer leg each (0 -> 3)."""
    b = Builder(Y)
    g = [b.add(ZSpider()) for _ in range(3)]
    for i in range(3):
        x = b.add(YBox(HALF_PI, boxes_flipped))
        b.wire(g[i], (x, BOTTOM))
        b.wire((x, TOP), g[(i + 1) % 3])
    for i in range(3):
        b.wire(g[i], b.output())
    return b.build()


def box_on_leg(d: Diagram, leg: int, angle, flipped: bool = False) -> Diagram:
    """Put a box (bottom towards ``d``) on output ``leg`` of ``d``."""
    m = len(d.outputs)
    layer = tensor_all([identity(1) if j != leg else box(angle, flipped) for j in range(m)])
    return compose(layer, d)


# --- ZX gadgets -------------------------------------------------------------


def zx_phase_scalar(theta, calculus: str = ZX) -> Diagram:
    """Scalar ``exp(i*theta)``."""
    st = green(0, 1, theta, calculus)
    ef = red(1, 0, PI, calculus)
    return tensor(compose(ef, st), inv_sqrt2(calculus))


def zx_bicolor(a, b, calculus: str = ZX) -> Diagram:
    """Green ``a`` dot joined to red ``b`` dot."""
    return multiedge(1, calculus, "ZX", (as_angle(a), as_angle(b)))


def zx_minus_one(calculus: str = ZX) -> Diagram:
    return zx_phase_scalar(PI, calculus)


def bend_first(d: Diagram) -> Diagram:
    """Turn the first output of a state ``0 -> k`` into an input, giving ``1 -> k-1``."""
    k = len(d.outputs)
    from .diagram import cap

    rest = identity(k - 1, d.calculus)
    return seq(tensor(identity(1, d.calculus), d), tensor(cap(d.calculus), rest))


def plug_last(d: Diagram, effect: Diagram) -> Diagram:
    """Feed the last output of ``d`` into the ``1 -> 0`` diagram ``effect``."""
    k = len(d.outputs)
    return compose(tensor(identity(k - 1, d.calculus), effect), d)


def flip_all_boxes(d: Diagram) -> Diagram:
    """Turn every box upside-down in place, leaving its wiring alone."""
    nodes = {n: (YBox(k.angle, not k.flipped) if isinstance(k, YBox) else k) for n, k in d.nodes.items()}
    return Diagram(nodes, d.edges, d.inputs, d.outputs, d.calculus)
