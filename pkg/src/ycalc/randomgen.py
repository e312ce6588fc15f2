"""Random diagrams for property tests and the verification suites."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .angle import Angle
from .diagram import (
    BOTTOM, TOP, Y, ZX, ZXR, Builder, Diagram, HBox, XSpider, YBox, ZSpider, generator, identity,
    swap,
)
from .translate import Gen, Par, Seq, Term

__all__ = ["random_angle", "random_diagram", "random_y", "random_zx", "random_zxr", "random_zx_term"]


def random_angle(rng: np.random.Generator, step: int | None) -> Angle:
    """A multiple of ``pi/step``, or a free angle when ``step`` is ``None``."""
    if step is None:
        return Angle(free=float(rng.uniform(-2 * np.pi, 2 * np.pi)))
    return Angle.pi(Fraction(int(rng.integers(0, 4 * step)), step))


def random_diagram(
    rng: np.random.Generator,
    calculus: str = Y,
    n_in: int | None = None,
    n_out: int | None = None,
    n_nodes: int | None = None,
    step: int | None = 2,
    max_wires: int = 4,
    hadamard: bool = True,
) -> Diagram:
    """Random open graph: typed nodes with random degree, stubs paired at random.

    Boxes (Y) and Hadamard boxes get exactly two legs; spiders between one and
    four. Phases (ZX) and box angles are multiples of ``pi/step``.
    """
    if n_in is None:
        n_in = int(rng.integers(0, max_wires // 2 + 1))
    if n_out is None:
        n_out = int(rng.integers(0, max_wires - n_in + 1))
    if n_nodes is None:
        n_nodes = int(rng.integers(1, 9))
    b = Builder(calculus)
    stubs: list[tuple[str, int]] = []
    for _ in range(n_in):
        stubs.append((b.input(), 0))
    for _ in range(n_nodes):
        r = rng.random()
        if calculus == Y and r < 0.35:
            x = b.add(YBox(random_angle(rng, step), bool(rng.random() < 0.3)))
            stubs += [(x, BOTTOM), (x, TOP)]
            continue
        if calculus != Y and hadamard and r < 0.2:
            x = b.add(HBox())
            stubs += [(x, 0), (x, 0)]
            continue
        if calculus == Y:
            phase = Angle()
        elif calculus == ZXR:
            phase = Angle.pi(int(rng.integers(0, 2)))
        else:
            phase = random_angle(rng, step) if rng.random() < 0.7 else Angle()
        kind = ZSpider(phase) if rng.random() < 0.5 else XSpider(phase)
        x = b.add(kind)
        stubs += [(x, 0)] * int(rng.integers(1, 5))
    outs = [(b.output(), 0) for _ in range(n_out)]
    stubs += outs
    if len(stubs) % 2:
        # give the odd stub a partner on a fresh phaseless spider
        stubs.append((b.add(ZSpider()), 0))
    order = rng.permutation(len(stubs))
    for i in range(0, len(order), 2):
        u, v = stubs[order[i]], stubs[order[i + 1]]
        b.edges[b.fresh("e")] = (u, v)
    return b.build()


def random_y(rng, step: int | None = 2, **kw) -> Diagram:
    return random_diagram(rng, Y, step=step, **kw)


def random_zx(rng, step: int | None = 4, **kw) -> Diagram:
    kw.setdefault("max_wires", 3)
    return random_diagram(rng, ZX, step=step, **kw)


def random_zxr(rng, **kw) -> Diagram:
    return random_diagram(rng, ZXR, **kw)


def _random_generator(rng: np.random.Generator, step: int | None) -> Diagram:
    r = rng.random()
    if r < 0.15:
        return identity(1, ZX)
    if r < 0.25:
        return swap(ZX)
    if r < 0.4:
        return generator(HBox(), 1, 1, ZX)
    n, m = int(rng.integers(0, 3)), int(rng.integers(0, 3))
    phase = random_angle(rng, step)
    kind = ZSpider(phase) if rng.random() < 0.5 else XSpider(phase)
    return generator(kind, n, m, ZX)


def random_zx_term(rng: np.random.Generator, depth: int = 3, step: int | None = None, max_wires: int = 3) -> Term:
    """Random ZX term built from generators with ``Par`` and ``Seq``."""
    from .translate import term_to_diagram

    def build(dep: int) -> Term:
        if dep == 0 or rng.random() < 0.3:
            return Gen(_random_generator(rng, step))
        if rng.random() < 0.5:
            t = Par(build(dep - 1), build(dep - 1))
            d = term_to_diagram(t)
            if max(len(d.inputs), len(d.outputs)) > max_wires:
                return t.left
            return t
        first = build(dep - 1)
        k = len(term_to_diagram(first).outputs)
        then = _fit(rng, k, step)
        return Seq(first, then)

    return build(depth)


def _fit(rng: np.random.Generator, k: int, step: int | None) -> Term:
    """A generator layer accepting exactly ``k`` wires."""
    if k == 0:
        return Gen(_random_generator_n(rng, 0, step))
    g = _random_generator_n(rng, 1, step)
    rest = k - 1
    return Par(Gen(g), Gen(identity(rest, ZX))) if rest else Gen(g)


def _random_generator_n(rng: np.random.Generator, n: int, step: int | None) -> Diagram:
    if n == 1 and rng.random() < 0.3:
        return generator(HBox(), 1, 1, ZX)
    m = int(rng.integers(0, 3))
    phase = random_angle(rng, step)
    kind = ZSpider(phase) if rng.random() < 0.5 else XSpider(phase)
    return generator(kind, n, m, ZX)
