"""Nonstandard interpretations used to show that single axioms are independent."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .angle import Angle
from .diagram import Y, Diagram, XSpider, YBox, ZSpider, expand_hnode
from .rewrite import RewriteRule
from .semantics import FragmentError, Tensor, interpret, interpret_model, node_tensor, spider_tensor

__all__ = [
    "Model", "standard_model", "bundle_model", "prime_model", "flip_model",
    "permutation_matrix", "preservation_matrix", "PreservationReport", "Cell",
    "PRESERVED_TOL", "VIOLATED_TOL",
]

PRESERVED_TOL = 1e-9
VIOLATED_TOL = 1e-6


def _rot(a: float) -> np.ndarray:
    c, s = math.cos(a / 2), math.sin(a / 2)
    return np.array([[c, -s], [s, c]])


def permutation_matrix(n: int, k: int) -> np.ndarray:
    """``U`` sending slot ``i`` of the input to slot ``i+k mod n`` of the output."""
    dim = 2**n
    u = np.zeros((dim, dim))
    for x in range(dim):
        bits = [(x >> (n - 1 - i)) & 1 for i in range(n)]
        out = [0] * n
        for i, b in enumerate(bits):
            out[(i + k) % n] = b
        y = int("".join(map(str, out)), 2) if n else 0
        u[y, x] = 1.0
    return u


@dataclass(frozen=True)
class Model:
    """Functorial interpretation: every wire carries ``width`` model wires.

    ``box`` maps an angle to the ``2**w x 2**w`` image of the upright box
    (rows on its top side). Upside-down boxes map to the transpose. Spiders
    act slot-wise, with colours exchanged when ``swap_colours`` is set.
    """

    name: str
    width: int = 1
    doubled: bool = False
    fragment: Fraction | None = None
    box: Callable[[Angle], np.ndarray] = lambda a: _rot(a.value)
    swap_colours: bool = False
    note: str = ""

    def image(self, kind, degree: int) -> np.ndarray:
        w = self.width
        if isinstance(kind, YBox):
            m = self.box(kind.angle)
            if kind.flipped:
                m = m.T
            t = m.reshape((2,) * (2 * w))  # top slots, then bottom slots
            return np.transpose(t, list(range(w, 2 * w)) + list(range(w))).copy()
        if isinstance(kind, (ZSpider, XSpider)):
            colour = kind.colour
            if self.swap_colours:
                colour = "X" if colour == "Z" else "Z"
            base = spider_tensor(colour, kind.phase, degree)
        else:
            base = node_tensor(kind, degree)
        if w == 1:
            return base
        t = base
        for _ in range(w - 1):
            t = np.multiply.outer(t, base)
        # axes are (slot, leg); reorder to (leg, slot)
        perm = [s * degree + leg for leg in range(degree) for s in range(w)]
        return np.transpose(t, perm).copy()

    def evaluate(self, d: Diagram) -> Tensor:
        if d.calculus == Y:
            d = expand_hnode(d)
        return interpret_model(d, self)

    def in_fragment(self, a: Angle) -> bool:
        return self.fragment is None or a.is_multiple_of(self.fragment)


def standard_model() -> Model:
    return Model("standard")


def bundle_model(n: int) -> Model:
    """Width-``n`` model over the pi/(2n) fragment: box ``k*pi/(2n)`` becomes rotations then a cyclic shift."""
    if n < 2:
        raise ValueError("bundle model needs n >= 2")
    frag = Fraction(1, 2 * n)

    def box(a: Angle) -> np.ndarray:
        if a.is_free or not a.is_multiple_of(frag):
            raise FragmentError(f"angle {a} outside the pi/{2 * n} fragment")
        k = a.multiple(frag)
        r = _rot(a.value)
        rn = r
        for _ in range(n - 1):
            rn = np.kron(rn, r)
        return rn @ permutation_matrix(n, k % n)

    return Model(
        f"bundle({n})", width=n, fragment=frag, box=box,
        note="upside-down boxes map to the transpose: inverse shift, negated angle",
    )


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def prime_model(p: int) -> Model:
    """Doubled model where a box of angle ``a`` becomes the box of angle ``e*p*a`` with ``e*p = 1 mod 4``."""
    if p < 3 or not _is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    eps = 1 if p % 4 == 1 else -1

    def box(a: Angle) -> np.ndarray:
        return _rot((a * (eps * p)).value)

    return Model(
        f"prime({p})", doubled=True, fragment=Fraction(1, 2 * p), box=box,
        note=f"box(a) -> box({eps * p}a); squared image of the pi/2 box is standard",
    )


def flip_model() -> Model:
    """Doubled model exchanging the spider colours and leaving boxes alone."""
    return Model("flip", doubled=True, swap_colours=True, note="colours exchanged, boxes unchanged")


# ---------------------------------------------------------------------------
# preservation


@dataclass
class Cell:
    rule: str
    family: str
    verdict: str  # preserved | violated | inconclusive | n/a
    max_deviation: float
    instances: int
    worst_params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "family": self.family,
            "verdict": self.verdict,
            "max_deviation": self.max_deviation,
            "instances": self.instances,
            "worst_params": {k: str(v) for k, v in self.worst_params.items()},
        }


@dataclass
class PreservationReport:
    model: str
    note: str
    cells: list[Cell]

    def violated_families(self) -> list[str]:
        return sorted({c.family for c in self.cells if c.verdict == "violated"})

    @property
    def inconclusive(self) -> list[str]:
        return [c.rule for c in self.cells if c.verdict == "inconclusive"]

    def certifies(self) -> str | None:
        """The unique violated rule family, if every other rule is preserved."""
        fams = self.violated_families()
        if len(fams) == 1 and not self.inconclusive:
            return fams[0]
        return None

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "note": self.note,
            "certifies": self.certifies(),
            "cells": [c.to_json() for c in self.cells],
        }

    def text(self) -> str:
        lines = [f"# model {self.model}: {self.note}"]
        for c in self.cells:
            lines.append(f"{c.rule:28s} {c.verdict:13s} {c.max_deviation:.3e}")
        return "\n".join(lines)


def _model_instances(rule: RewriteRule, model: Model, samples: int, rng: random.Random) -> list[dict]:
    finite = rule.finite_instances()
    if finite is not None:
        return finite
    frag = model.fragment
    insts = []
    keys = list(rule.ints)
    # checkpoint: every angle at the smallest fragment step
    if frag is not None and rule.angles:
        p = {k: rule.ints[k][0] for k in keys}
        p.update({a: Angle.pi(frag) for a in rule.angles})
        insts.append(p)
    while len(insts) < samples:
        if frag is None:
            insts.append(rule.sample(rng))
            continue
        p = {k: rng.choice(list(rule.ints[k])) for k in keys}
        for a in rule.angles:
            p[a] = Angle.pi(frag * rng.randrange(-8 * frag.denominator, 8 * frag.denominator))
        if rule.constraint is None or rule.constraint(p):
            insts.append(p)
    return insts


def preservation_matrix(
    model: Model, rules: Sequence[RewriteRule], samples: int = 25, seed: int = 0
) -> PreservationReport:
    """Evaluate both sides of every rule in ``model`` and classify the gap."""
    cells = []
    for rule in rules:
        rng = random.Random(f"{seed}:{model.name}:{rule.name}")
        worst, worst_p, n = 0.0, {}, 0
        skipped = False
        for p in _model_instances(rule, model, samples, rng):
            lhs, rhs = rule.instance(**p)
            try:
                dev = model.evaluate(lhs).deviation(model.evaluate(rhs))
            except FragmentError:
                skipped = True
                break
            n += 1
            if dev >= worst:
                worst, worst_p = dev, p
        if skipped:
            verdict = "n/a"
        elif worst < PRESERVED_TOL:
            verdict = "preserved"
        elif worst > VIOLATED_TOL:
            verdict = "violated"
        else:
            verdict = "inconclusive"
        cells.append(Cell(rule.name, rule.base_name, verdict, worst, n, worst_p))
    return PreservationReport(model.name, model.note, cells)
