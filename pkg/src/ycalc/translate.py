"""Translations between the Y, ZX_r and ZX calculi.

``y_to_zxr``/``zxr_to_y`` relate the pi/2 fragment of the Y-calculus to the
real stabiliser ZX-calculus. ``y_to_zx`` embeds every Y-diagram into ZX.
``zx_to_y`` goes the other way at the cost of one control wire, placed last
on both sides, carrying the imaginary unit as the rotation ``J``:

    interpret(zx_to_y(D)) == Re D (x) I + Im D (x) J,   J = [[0, 1], [-1, 0]].
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Union

import numpy as np

from .angle import Angle, as_angle
from .diagram import (
    BOTTOM, TOP, Y, ZX, ZXR, Boundary, Builder, Diagram, DiagramError, HBox, HNode, PiDot,
    XSpider, YBox, ZSpider, cap, compose, empty, expand_hnode, generator, identity, natural_key,
    spider_kind, swap, tensor, validate,
)
from .gadgets import PI, HALF_PI, green, half, red, sqrt2_pow, zx_minus_one, zx_phase_scalar

__all__ = [
    "TranslationError", "y_to_zxr", "zxr_to_y", "y_to_zx", "zx_to_y",
    "Gen", "Par", "Seq", "Term", "term_to_diagram", "zx_to_y_term",
    "re_part", "im_part", "universal_embed", "J",
    "TranslationTableError", "generator_table", "verify_generator_table",
]

TABLE_FILE = "generator_images.json"
J = np.array([[0.0, 1.0], [-1.0, 0.0]])


class TranslationError(ValueError):
    """The input lies outside the domain of the requested translation."""


def _substitute(b: Builder, n: str, repl: Diagram) -> None:
    """Replace node ``n`` by ``repl``, whose boundaries match ``n``'s legs in order.

    A box's legs are ``[bottom, top]``; any other node lists its legs in edge order.
    """
    kind = b.nodes[n]
    legs = b.ends_of(n)
    if isinstance(kind, YBox):
        legs.sort(key=lambda es: b.edges[es[0]][es[1]][1])
    bounds = list(repl.inputs) + list(repl.outputs)
    if len(bounds) != len(legs):
        raise DiagramError(f"replacement for {n} has {len(bounds)} legs, node has {len(legs)}")
    temps = []
    for e, s in legs:
        t = b.fresh("t")
        b.nodes[t] = Boundary("in")
        a, c = b.edges[e]
        b.edges[e] = ((t, 0), c) if s == 0 else (a, (t, 0))
        temps.append(t)
    del b.nodes[n]
    ins, outs, _ = b.embed(repl, rename=True)
    for t, r in zip(temps, ins + outs):
        b.fuse_boundaries(t, r)


def _copy(d: Diagram, calculus: str) -> Builder:
    b = Builder(calculus)
    b.nodes = dict(d.nodes)
    b.edges = dict(d.edges)
    b.inputs = list(d.inputs)
    b.outputs = list(d.outputs)
    return b



# --- generator-image table ---------------------------------------------------


class TranslationTableError(RuntimeError):
    """A generator image in the data file breaks its semantic contract."""


def _load_entries() -> list[dict]:
    text = resources.files("ycalc").joinpath("data", TABLE_FILE).read_text(encoding="utf-8")
    return json.loads(text)["entries"]


def _box_images(entries: list[dict]) -> dict[int, Diagram]:
    from .io import parse

    out = {}
    for e in entries:
        if e["translation"] != "Y2ZXR" or e["image"] is None:
            continue
        src = parse("\n".join(e["generator"]))
        (n,) = src.interior()
        k = src.kind(n)
        if isinstance(k, YBox):
            out[k.angle.multiple(Fraction(1, 2)) % 8] = parse("\n".join(e["image"]))
    missing = set(range(8)) - set(out)
    if missing:
        raise TranslationTableError(f"no table image for boxes k*pi/2 with k in {sorted(missing)}")
    return out


def verify_generator_table(entries: list[dict] | None = None, tol: float = 1e-9) -> list[str]:
    """Check every table entry against its contract; returns the violations.

    Each entry's generator, its transcribed image (when present) and the image
    produced by the translation code must all meet the expected tensor, or for
    ``ZX2Y`` the block law with the control wire last.
    """
    from .io import parse
    from .semantics import interpret

    entries = _load_entries() if entries is None else entries
    problems: list[str] = []
    try:
        images = _box_images(entries)
    except (TranslationTableError, ValueError) as exc:
        return [str(exc)]
    run = {
        "Y2ZXR": lambda d: _y_to_zxr(d, images),
        "ZXR2Y": zxr_to_y,
        "Y2ZX": y_to_zx,
        "ZX2Y": zx_to_y,
    }
    for idx, e in enumerate(entries):
        tag = f"entry {idx} ({e['translation']}: {'; '.join(e['generator'])})"
        try:
            c = e["contract"]
            want = np.array(c["re"], dtype=complex) + 1j * np.array(c["im"], dtype=float)
            src = parse("\n".join(e["generator"]))
            got = run[e["translation"]](src)
            checks = [("generator", interpret(src).array, want)]
            if e["image"] is not None:
                checks.append(("image", interpret(parse("\n".join(e["image"]))).array, want))
            if c["law"] == "block":
                checks.append(("translation", interpret(got).array,
                               np.kron(want.real, np.eye(2)) + np.kron(want.imag, J)))
            else:
                checks.append(("translation", interpret(got).array, want))
        except Exception as exc:  # a malformed entry is a violation, not a crash
            problems.append(f"{tag}: {exc}")
            continue
        for what, have, expect in checks:
            dev = float(np.max(np.abs(np.asarray(have) - expect)))
            if dev > tol:
                problems.append(f"{tag}: {what} deviates by {dev:.3g}")
    return problems


@functools.lru_cache(maxsize=None)
def _verified() -> tuple:
    entries = _load_entries()
    problems = verify_generator_table(entries)
    if problems:
        raise TranslationTableError("generator table failed verification: " + "; ".join(problems))
    return tuple(entries)


def generator_table() -> list[dict]:
    """The verified generator-image table (verification runs once per process)."""
    return list(_verified())


# --- Y (pi/2 fragment) <-> ZX_r ---------------------------------------------


def y_to_zxr(d: Diagram) -> Diagram:
    """Translate a Y-diagram whose boxes are multiples of pi/2 into ZX_r."""
    if d.calculus != Y:
        raise TranslationError("y_to_zxr expects a Y-diagram")
    return _y_to_zxr(d, _box_images(generator_table()))


def _y_to_zxr(d: Diagram, images: dict[int, Diagram]) -> Diagram:
    d = expand_hnode(d, only_hnodes=True)
    b = _copy(d, ZXR)
    for n in sorted(d.nodes, key=natural_key):
        k = d.kind(n)
        if isinstance(k, PiDot):
            b.nodes[n] = spider_kind(k.colour, PI)
        elif isinstance(k, YBox):
            if not k.angle.is_multiple_of(Fraction(1, 2)):
                raise TranslationError(f"box {n} angle {k.angle} is not a multiple of pi/2")
            m = k.angle.multiple(Fraction(1, 2))
            _substitute(b, n, images[(-m if k.flipped else m) % 8])
    return b.build()


def zxr_to_y(d: Diagram, expand: bool = True) -> Diagram:
    """Translate a ZX_r diagram (phases in {0, pi}) into the pi/2 fragment of Y."""
    if d.calculus not in (ZXR, ZX):
        raise TranslationError("zxr_to_y expects a ZX_r diagram")
    b = _copy(d, Y)
    for n in d.interior():
        k = d.kind(n)
        if isinstance(k, (ZSpider, XSpider)) and k.phase:
            ph = as_angle(k.phase)
            if not ph.is_multiple_of(1):
                raise TranslationError(f"phase {ph} at {n} is outside {{0, pi}}")
            if ph.multiple(1) % 2:
                b.nodes[n] = PiDot(k.colour)
            else:
                b.nodes[n] = spider_kind(k.colour)
    out = b.build()
    return expand_hnode(out) if expand else out


# --- Y -> ZX ------------------------------------------------------------------


def _zx_box_chain(angle: Angle, flipped: bool) -> Diagram:
    """Box as Z(-pi/2), X(angle), Z(pi/2) bottom to top, times exp(-i angle/2)."""
    lo, hi = -HALF_PI, HALF_PI
    if flipped:
        lo, hi = hi, lo
    chain = compose(green(1, 1, hi, ZX), compose(red(1, 1, angle, ZX), green(1, 1, lo, ZX)))
    return tensor(chain, zx_phase_scalar(angle * Fraction(-1, 2), ZX))


def y_to_zx(d: Diagram) -> Diagram:
    """Translate any Y-diagram into an equal ZX-diagram."""
    if d.calculus != Y:
        raise TranslationError("y_to_zx expects a Y-diagram")
    d = expand_hnode(d, only_hnodes=True)
    b = _copy(d, ZX)
    for n in sorted(d.nodes, key=natural_key):
        k = d.kind(n)
        if isinstance(k, PiDot):
            b.nodes[n] = spider_kind(k.colour, PI)
        elif isinstance(k, YBox):
            _substitute(b, n, _zx_box_chain(as_angle(k.angle), k.flipped))
    return b.build()


# --- ZX -> Y with a control wire ---------------------------------------------


def _phase_gadget(b: Builder, hub: str, ctl: tuple[str, int], alpha: Angle) -> tuple[str, int]:
    """Controlled rotation R(-2 alpha) on the control wire, controlled by ``hub``.

    The hub's bit is copied into two CX targets around a box ``alpha`` and a
    flipped box ``alpha``; a phaseless green dot supplies the scalar 2.
    """
    r1 = b.add(XSpider())
    r2 = b.add(XSpider())
    up = b.add(YBox(alpha))
    down = b.add(YBox(alpha, True))
    b.edges[b.fresh("e")] = (ctl, (r1, 0))
    b.wire(r1, (up, BOTTOM))
    b.wire((up, TOP), r2)
    b.wire(r2, (down, BOTTOM))
    b.wire(hub, r1)
    b.wire(hub, r2)
    b.add(ZSpider())
    return (down, TOP)


def zx_to_y(d: Diagram, expand: bool = True) -> Diagram:
    """Translate a ZX-diagram ``n -> m`` into a Y-diagram ``n+1 -> m+1``.

    Spiders with phase 0 or pi are real and map directly. Any other phase
    ``alpha`` becomes a phaseless spider driving a controlled rotation on the
    control wire; a red spider reaches its gadget through a Hadamard box.
    """
    if d.calculus not in (ZX, ZXR):
        raise TranslationError("zx_to_y expects a ZX-diagram")
    b = _copy(d, Y)
    cin = b.add(Boundary("in"), b.fresh("ctl_in"))
    ctl: tuple[str, int] = (cin, 0)
    for n in d.interior():
        k = d.kind(n)
        if not isinstance(k, (ZSpider, XSpider)) or not k.phase:
            continue
        ph = as_angle(k.phase)
        if ph.is_multiple_of(1):
            b.nodes[n] = PiDot(k.colour) if ph.multiple(1) % 2 else spider_kind(k.colour)
            continue
        b.nodes[n] = spider_kind(k.colour)
        hub = n
        if k.colour == "X":
            h = b.add(HBox())
            hub = b.add(ZSpider())
            b.wire(n, h)
            b.wire(h, hub)
        ctl = _phase_gadget(b, hub, ctl, ph)
    cout = b.add(Boundary("out"), b.fresh("ctl_out"))
    b.edges[b.fresh("e")] = (ctl, (cout, 0))
    b.inputs.append(cin)
    b.outputs.append(cout)
    out = b.build()
    return expand_hnode(out) if expand else out


# --- term-level translation ---------------------------------------------------


@dataclass(frozen=True)
class Gen:
    """A single generator or wiring diagram."""

    diagram: Diagram


@dataclass(frozen=True)
class Par:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Seq:
    """``first`` then ``then``."""

    first: "Term"
    then: "Term"


Term = Union[Gen, Par, Seq]


def term_to_diagram(t: Term) -> Diagram:
    if isinstance(t, Gen):
        return t.diagram
    if isinstance(t, Par):
        return tensor(term_to_diagram(t.left), term_to_diagram(t.right))
    return compose(term_to_diagram(t.then), term_to_diagram(t.first))


def _move_last(n: int, k: int) -> Diagram:
    """Permutation on ``n + k + 1`` wires moving the last wire to position ``n``."""
    d = identity(n + k + 1, Y)
    for j in range(k):
        pos = n + k - 1 - j
        layer = tensor(identity(pos, Y), swap(Y), identity(n + k - 1 - pos, Y))
        d = compose(layer, d)
    return d


def _move_to_last(n: int, k: int) -> Diagram:
    """Inverse of :func:`_move_last`."""
    from .diagram import flip_vertical

    return flip_vertical(_move_last(n, k))


def _with_identity(d: Diagram, n: int, before: bool) -> Diagram:
    if not n:
        return d
    return tensor(identity(n, Y), d) if before else tensor(d, identity(n, Y))


def zx_to_y_term(t: Term, expand: bool = True) -> Diagram:
    """Structural version of :func:`zx_to_y` that threads the control wire through a term."""
    if isinstance(t, Gen):
        return zx_to_y(t.diagram, expand)
    if isinstance(t, Seq):
        return compose(zx_to_y_term(t.then, expand), zx_to_y_term(t.first, expand))
    a, c = zx_to_y_term(t.left, expand), zx_to_y_term(t.right, expand)
    na, ma = len(a.inputs) - 1, len(a.outputs) - 1
    nc, mc = len(c.inputs) - 1, len(c.outputs) - 1
    # a_ins c_ins ctl -> a_ins ctl c_ins -> a_outs ctl c_ins -> a_outs c_ins ctl -> a_outs c_outs ctl
    step1 = _move_last(na, nc)
    step2 = _with_identity(a, nc, before=False)
    step3 = _move_to_last(ma, nc)
    step4 = _with_identity(c, ma, before=True)
    return compose(step4, compose(step3, compose(step2, step1)))


# --- real and imaginary parts -------------------------------------------------


def _control_plug(d: Diagram, imaginary: bool) -> Diagram:
    n, m = len(d.inputs) - 1, len(d.outputs) - 1
    state = red(0, 1) if not imaginary else compose(generator(YBox(HALF_PI), 1, 1), green(0, 1))
    pre = _with_identity(state, n, before=True)
    post = _with_identity(red(1, 0), m, before=True)
    return tensor(compose(post, compose(d, pre)), half())


def _part(d: Diagram, imaginary: bool, route: str) -> Diagram:
    if route not in ("direct", "via-zx"):
        raise TranslationError(f"unknown route {route!r}")
    out = _control_plug(zx_to_y(d), imaginary)
    return y_to_zx(out) if route == "via-zx" else out


def re_part(d: Diagram, route: str = "direct") -> Diagram:
    """A diagram for the real part of ``d``: Y with ``route='direct'``, ZX with ``'via-zx'``."""
    return _part(d, False, route)


def im_part(d: Diagram, route: str = "direct") -> Diagram:
    """A diagram for the imaginary part of ``d``."""
    return _part(d, True, route)


# --- universality -------------------------------------------------------------


def _positive_scalar(c: float) -> Diagram:
    """ZX scalar ``c >= 0`` from green dots ``(1+e^{it})(1+e^{-it})`` and powers of two."""
    if c == 0:
        return generator(ZSpider(PI), 0, 0, ZX)
    p = math.floor(math.log2(c))
    r = c / 2.0 ** p
    if r >= 2:
        p, r = p + 1, r / 2
    t = math.acos(r / 2 - 1)
    dots = tensor(generator(ZSpider(Angle(free=t)), 0, 0, ZX), generator(ZSpider(Angle(free=-t)), 0, 0, ZX))
    return tensor(dots, sqrt2_pow(2 * p, ZX)) if p else dots


def _phase_state(phi: np.ndarray, k: int) -> Diagram:
    """ZX state on ``k`` wires with amplitudes ``exp(i phi[x])`` via Walsh phase gadgets."""
    size = 1 << k
    xs = np.arange(size)
    signs = np.array([[(-1) ** bin(s & x).count("1") for x in xs] for s in xs], dtype=float)
    coef = signs @ phi / size
    b = Builder(ZX)
    tips: list[tuple[str, int] | None] = [None] * k
    scal = 0
    for s in range(1, size):
        theta = -2.0 * coef[s]
        if abs(theta) < 1e-15:
            continue
        r = b.add(XSpider())
        leaf = b.add(ZSpider(Angle(free=theta)))
        b.wire(leaf, r)
        members = [q for q in range(k) if (s >> (k - 1 - q)) & 1]
        for q in members:
            g = b.add(ZSpider())
            if tips[q] is not None:
                b.edges[b.fresh("e")] = (tips[q], (g, 0))
            b.wire(g, r)
            tips[q] = (g, 0)
        scal += len(members) - 1
    for q in range(k):
        o = b.output()
        if tips[q] is None:
            tips[q] = (b.add(ZSpider()), 0)
        b.edges[b.fresh("e")] = (tips[q], (o, 0))
    d = b.build()
    parts = [d, sqrt2_pow(scal, ZX)] if scal else [d]
    const = float(phi[0])  # the phase at x = 0 survives as a global phase
    if abs(const) > 1e-15:
        parts.append(zx_phase_scalar(Angle(free=const), ZX))
    return tensor(*parts)


def universal_embed(M, route: str = "direct") -> Diagram:
    """A diagram with real semantics ``M`` for any real ``2^m x 2^n`` matrix.

    The amplitudes are written as ``c cos(phi)``; a ZX state with phases
    ``phi`` is scaled by ``c``, inputs are bent round with cups and the real
    part is taken.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise TranslationError("universal_embed needs a matrix")
    rows, cols = M.shape
    m, n = rows.bit_length() - 1, cols.bit_length() - 1
    if rows != 1 << m or cols != 1 << n:
        raise TranslationError(f"shape {M.shape} is not a power of two on both sides")
    psi = M.reshape(-1)
    c = float(np.max(np.abs(psi)))
    phi = np.arccos(np.clip(psi / c, -1.0, 1.0)) if c > 0 else np.zeros_like(psi)
    k = m + n
    state = tensor(_phase_state(phi, k), _positive_scalar(c))
    if n:
        # bend the last n wires into inputs
        layer = tensor(identity(m, ZX), _caps(n))
        state = compose(layer, tensor(state, identity(n, ZX)))
    return re_part(state, route)


def _caps(n: int) -> Diagram:
    """``2n -> 0`` pairing wire ``j`` with wire ``n + j``."""
    b = Builder(ZX)
    ins = [b.input() for _ in range(2 * n)]
    for j in range(n):
        b.wire(ins[j], ins[n + j])
    return b.build()
