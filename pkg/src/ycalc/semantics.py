"""Dense tensor-network evaluation of diagrams.

Every edge carries one 2-dimensional index (or ``width`` of them under a
model). Node tensors are built per kind and contracted pairwise with a greedy
rank-minimising order. Matrices use rows for outputs and columns for inputs,
with the leftmost wire as the most significant bit.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .angle import Angle
from .diagram import (
    BOTTOM, TOP, ZX, ZXR, Boundary, Diagram, HBox, HNode, PiDot, XSpider, YBox, ZSpider,
    natural_key,
)
from .exact import Exact, INV_SQRT2, exact_cos_sin, exact_phase

__all__ = [
    "Tensor", "ResourceError", "FragmentError", "ContractionPlan",
    "interpret", "interpret_model", "equal_semantics", "re_im_split", "contract_plan",
    "node_tensor", "max_wires", "evaluate_network",
]

FLOAT, EXACT = "float", "exact"
DEFAULT_MAX_WIRES = 12
MAX_RANK = 28


class ResourceError(RuntimeError):
    """Boundary or intermediate tensor exceeds the configured size guard."""


class FragmentError(ValueError):
    """An angle lies outside what the requested backend or model supports."""


def max_wires() -> int:
    try:
        return int(os.environ.get("YCALC_MAX_WIRES", DEFAULT_MAX_WIRES))
    except ValueError:
        return DEFAULT_MAX_WIRES


# ---------------------------------------------------------------------------
# tensors


@dataclass(frozen=True, eq=False)
class Tensor:
    """A linear map as a ``2**(w*m) x 2**(w*n)`` matrix."""

    array: np.ndarray
    n_in: int
    n_out: int
    backend: str = FLOAT
    width: int = 1

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_out, self.n_in

    def to_float(self) -> np.ndarray:
        if self.backend == FLOAT:
            return self.array
        flat = [complex(x) for x in self.array.ravel()]
        arr = np.array(flat, dtype=complex).reshape(self.array.shape)
        if not np.any(arr.imag):
            return arr.real.copy()
        return arr

    @property
    def is_real(self) -> bool:
        if self.backend == EXACT:
            return all(Exact.lift(x).is_real for x in self.array.ravel())
        return not np.iscomplexobj(self.array) or not np.any(self.array.imag)

    def transpose(self) -> Tensor:
        return Tensor(self.array.T.copy(), self.n_out, self.n_in, self.backend, self.width)

    def __matmul__(self, other: Tensor) -> Tensor:
        return Tensor(self.array @ other.array, other.n_in, self.n_out, self.backend, self.width)

    def kron(self, other: Tensor) -> Tensor:
        return Tensor(
            np.kron(self.array, other.array),
            self.n_in + other.n_in,
            self.n_out + other.n_out,
            self.backend,
            self.width,
        )

    def deviation(self, other: Tensor | np.ndarray) -> float:
        b = other.to_float() if isinstance(other, Tensor) else np.asarray(other)
        a = self.to_float()
        if a.shape != b.shape:
            raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
        if a.size == 0:
            return 0.0
        return float(np.max(np.abs(a - b)))

    def exact_equal(self, other: Tensor) -> bool:
        if self.array.shape != other.array.shape:
            return False
        return all(Exact.lift(x) == Exact.lift(y) for x, y in zip(self.array.ravel(), other.array.ravel()))

    def dump_text(self) -> str:
        """Row-major plain-text matrix, one row per line."""
        rows = []
        for row in self.array:
            rows.append(" ".join(_fmt(x) for x in row))
        return "\n".join(rows)

    def to_json(self) -> dict:
        return {
            "shape": [self.n_out, self.n_in],
            "width": self.width,
            "backend": self.backend,
            "rows": [[_fmt(x) for x in row] for row in self.array],
        }

    def __repr__(self) -> str:
        return f"Tensor({self.n_in}->{self.n_out}, {self.backend})\n{self.dump_text()}"


def _fmt(x) -> str:
    if isinstance(x, Exact):
        return str(x).replace(" ", "")
    if isinstance(x, (complex, np.complexfloating)):
        if x.imag == 0:
            return _fmt(x.real)
        return f"{x.real:.12g}{x.imag:+.12g}j"
    v = float(x)
    if v == 0:
        v = 0.0
    return f"{v:.12g}"


# ---------------------------------------------------------------------------
# generator images


def _root2_pow(k: int, backend: str):
    """``2**(-k/2)``."""
    if backend == FLOAT:
        return 2.0 ** (-k / 2)
    if k >= 0:
        return Exact(1, k=k // 2) if k % 2 == 0 else Exact(0, 1, k=(k + 1) // 2)
    k = -k
    return Exact(1 << (k // 2)) if k % 2 == 0 else Exact(0, 1 << (k // 2))


def _phase(a: Angle, backend: str):
    if backend == FLOAT:
        if a.is_multiple_of(1):
            return 1.0 if a.multiple(1) % 2 == 0 else -1.0
        if a.is_multiple_of(Fraction(1, 4)):
            return complex(exact_phase(a.multiple(Fraction(1, 4))))
        return complex(math.cos(a.value), math.sin(a.value))
    if not a.is_multiple_of(Fraction(1, 4)):
        raise FragmentError(f"phase {a} has no exact value in the dyadic sqrt2 ring")
    return exact_phase(a.multiple(Fraction(1, 4)))


def _obj(shape) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(Exact(0))
    return arr


def _new(shape, backend: str, cplx: bool) -> np.ndarray:
    if backend == EXACT:
        return _obj(shape)
    return np.zeros(shape, dtype=complex if cplx else float)


def _bits(k: int) -> np.ndarray:
    return np.array(list(np.ndindex(*(2,) * k)), dtype=int).reshape(-1, k) if k else np.zeros((1, 0), int)


def spider_tensor(colour: str, phase: Angle, k: int, backend: str = FLOAT) -> np.ndarray:
    """Tensor of a spider with ``k`` legs (symmetric in its legs)."""
    ph = _phase(phase, backend)
    cplx = isinstance(ph, complex)
    t = _new((2,) * k, backend, cplx)
    if colour == "Z":
        if k == 0:
            t[()] = 1 + ph
            return t
        one = Exact(1) if backend == EXACT else 1.0
        t[(0,) * k] = one
        t[(1,) * k] = t[(1,) * k] + ph
        return t
    scale = _root2_pow(k, backend)
    for idx in np.ndindex(*(2,) * k):
        par = sum(idx) % 2
        t[idx] = scale * (1 + (ph if par == 0 else -ph))
    return t


def box_tensor(angle: Angle, flipped: bool, backend: str = FLOAT) -> np.ndarray:
    """Axes ``(bottom, top)``; entry ``[b, t]`` is the matrix element ``M[t][b]``."""
    if backend == EXACT:
        if not angle.is_multiple_of(Fraction(1, 2)):
            raise FragmentError(f"box angle {angle} is outside the pi/2 fragment")
        c, s = exact_cos_sin(angle.multiple(Fraction(1, 2)))
        m = _obj((2, 2))
        m[0, 0], m[0, 1], m[1, 0], m[1, 1] = c, -s, s, c
    else:
        if angle.is_multiple_of(Fraction(1, 2)):
            c, s = (float(x) for x in exact_cos_sin(angle.multiple(Fraction(1, 2))))
        else:
            c, s = math.cos(angle.value / 2), math.sin(angle.value / 2)
        m = np.array([[c, -s], [s, c]])
    # m is R[top][bottom]; a flipped box realises its transpose
    return m if flipped else m.T.copy()


def hnode_tensor(k: int, backend: str = FLOAT) -> np.ndarray:
    t = _new((2,) * k, backend, False)
    scale = _root2_pow(k - 1, backend)
    for idx in np.ndindex(*(2,) * k):
        s = sum(idx[i] * idx[j] for i in range(k) for j in range(i + 1, k))
        t[idx] = scale if s % 2 == 0 else -scale
    return t


@lru_cache(maxsize=4096)
def _cached_node(kind, degree: int, backend: str) -> np.ndarray:
    if isinstance(kind, (ZSpider, XSpider)):
        return spider_tensor(kind.colour, kind.phase, degree, backend)
    if isinstance(kind, PiDot):
        return spider_tensor(kind.colour, Angle.pi(1), degree, backend)
    if isinstance(kind, YBox):
        return box_tensor(kind.angle, kind.flipped, backend)
    if isinstance(kind, HBox):
        return hnode_tensor(2, backend)
    if isinstance(kind, HNode):
        return hnode_tensor(kind.arity, backend)
    raise TypeError(f"no tensor for {kind!r}")


def node_tensor(kind, degree: int, backend: str = FLOAT) -> np.ndarray:
    """Standard image of a node; box axes are ``(bottom, top)``."""
    return _cached_node(kind, degree, backend).copy()


# ---------------------------------------------------------------------------
# network construction

ImageFn = Callable[[object, int], np.ndarray]


@dataclass
class _Network:
    tensors: list[np.ndarray]
    labels: list[list[tuple]]
    open_out: list[tuple]
    open_in: list[tuple]
    width: int


def _ordered_legs(d: Diagram, n: str) -> list[tuple[str, int]]:
    legs = d.incident(n)
    if isinstance(d.kind(n), YBox):
        legs = sorted(legs, key=lambda es: d.end(*es)[1])
    return legs


def _build_network(d: Diagram, image: ImageFn, width: int, backend: str, cplx: bool) -> _Network:
    tensors, labels = [], []

    def lab(e: str, tag: str = "") -> list[tuple]:
        return [(e + tag, s) for s in range(width)]

    bmap: dict[str, list[tuple]] = {}
    for e in sorted(d.edges, key=natural_key):
        (a, _pa), (b, _pb) = d.edges[e]
        ka, kb = d.kind(a), d.kind(b)
        if isinstance(ka, Boundary) and isinstance(kb, Boundary):
            la, lb = lab(e, "#a"), lab(e, "#b")
            ident = _identity_bundle(width, backend)
            tensors.append(ident)
            labels.append(la + lb)
            bmap[a], bmap[b] = la, lb
        elif isinstance(ka, Boundary):
            bmap[a] = lab(e)
        elif isinstance(kb, Boundary):
            bmap[b] = lab(e)
    for n in d.interior():
        legs = _ordered_legs(d, n)
        t = image(d.kind(n), len(legs))
        if t.ndim != len(legs) * width:
            raise ValueError(f"image of {d.kind(n)} has rank {t.ndim}, expected {len(legs) * width}")
        ls = [x for e, _s in legs for x in lab(e)]
        t, ls = _self_trace(t, ls)
        tensors.append(t)
        labels.append(ls)
    return _Network(
        tensors,
        labels,
        [x for o in d.outputs for x in bmap[o]],
        [x for i in d.inputs for x in bmap[i]],
        width,
    )


def _identity_bundle(width: int, backend: str) -> np.ndarray:
    eye = np.eye(2 ** width, dtype=float)
    if backend == EXACT:
        eye = np.vectorize(lambda v: Exact(int(v)), otypes=[object])(eye)
    return eye.reshape((2,) * (2 * width))


def _self_trace(t: np.ndarray, ls: list) -> tuple[np.ndarray, list]:
    while True:
        seen: dict = {}
        pair = None
        for i, x in enumerate(ls):
            if x in seen:
                pair = (seen[x], i)
                break
            seen[x] = i
        if pair is None:
            return t, ls
        i, j = pair
        t = np.trace(t, axis1=i, axis2=j)
        if not isinstance(t, np.ndarray):
            t = np.array(t, dtype=object if isinstance(t, Exact) else type(t))
        ls = [x for k, x in enumerate(ls) if k not in (i, j)]


# ---------------------------------------------------------------------------
# contraction planning


@dataclass
class ContractionPlan:
    """Pairwise merge steps over network slots; merged results are appended."""

    steps: list[tuple[int, int]] = field(default_factory=list)
    peak_rank: int = 0
    ranks: list[int] = field(default_factory=list)


def _plan(labels: list[list[tuple]], strategy: str = "greedy") -> ContractionPlan:
    live = {i: set(ls) for i, ls in enumerate(labels)}
    counts = {i: len(ls) for i, ls in enumerate(labels)}
    plan = ContractionPlan(peak_rank=max(counts.values(), default=0))
    nxt = len(labels)
    owner: dict[tuple, set[int]] = {}
    for i, ls in live.items():
        for x in ls:
            owner.setdefault(x, set()).add(i)
    while len(live) > 1:
        best = None
        if strategy == "linear":
            keys = sorted(live)
            a = keys[0]
            nb = sorted({j for x in live[a] for j in owner[x] if j != a})
            b = nb[0] if nb else keys[1]
            best = (0, a, b)
        else:
            for a in sorted(live):
                for x in live[a]:
                    for b in owner[x]:
                        if b <= a:
                            continue
                        r = len(live[a] ^ live[b])
                        cand = (r, a, b)
                        if best is None or cand < best:
                            best = cand
            if best is None:
                keys = sorted(live, key=lambda i: (len(live[i]), i))
                best = (len(live[keys[0]]) + len(live[keys[1]]), min(keys[:2]), max(keys[:2]))
        _r, a, b = best
        new = live[a] ^ live[b]
        for x in live[a] | live[b]:
            owner[x].discard(a)
            owner[x].discard(b)
        for x in new:
            owner[x].add(nxt)
        del live[a], live[b]
        live[nxt] = new
        plan.steps.append((a, b))
        plan.ranks.append(len(new))
        plan.peak_rank = max(plan.peak_rank, len(new))
        nxt += 1
    return plan


def _execute(net: _Network, plan: ContractionPlan, backend: str) -> tuple[np.ndarray, list]:
    ts = dict(enumerate(net.tensors))
    ls = dict(enumerate(net.labels))
    nxt = len(net.tensors)
    for a, b in plan.steps:
        ta, tb, la, lb = ts.pop(a), ts.pop(b), ls.pop(a), ls.pop(b)
        shared = [x for x in la if x in lb]
        if len(set(la) ^ set(lb)) > MAX_RANK:
            raise ResourceError(f"intermediate tensor of rank {len(set(la) ^ set(lb))} exceeds {MAX_RANK}")
        ia = [la.index(x) for x in shared]
        ib = [lb.index(x) for x in shared]
        t = np.tensordot(ta, tb, axes=(ia, ib))
        ts[nxt] = np.asarray(t, dtype=ta.dtype if ta.dtype == object else None)
        ls[nxt] = [x for x in la if x not in shared] + [x for x in lb if x not in shared]
        nxt += 1
    if not ts:
        one = np.array(Exact(1), dtype=object) if backend == EXACT else np.array(1.0)
        return one, []
    (k, t), = ts.items()
    return t, ls[k]


def evaluate_network(
    d: Diagram,
    image: ImageFn,
    width: int = 1,
    backend: str = FLOAT,
    cplx: bool = False,
    plan: ContractionPlan | str | None = None,
) -> Tensor:
    n, m = d.arity
    if (n + m) * width > max_wires():
        raise ResourceError(
            f"{(n + m) * width} boundary wires exceed the limit of {max_wires()} (set YCALC_MAX_WIRES)"
        )
    net = _build_network(d, image, width, backend, cplx)
    if plan is None or isinstance(plan, str):
        plan = _plan(net.labels, plan or "greedy")
    t, ls = _execute(net, plan, backend)
    order = net.open_out + net.open_in
    if sorted(ls, key=repr) != sorted(order, key=repr):
        raise RuntimeError("contraction left unexpected open indices")
    if order:
        t = np.transpose(t, [ls.index(x) for x in order])
    mat = np.asarray(t).reshape(2 ** (m * width), 2 ** (n * width))
    if backend == FLOAT and np.iscomplexobj(mat) and not cplx and not np.any(mat.imag):
        mat = mat.real
    return Tensor(np.array(mat, dtype=object) if backend == EXACT else mat, n, m, backend, width)


def _standard_image(backend: str) -> ImageFn:
    def image(kind, degree: int) -> np.ndarray:
        return node_tensor(kind, degree, backend)

    return image


def interpret(d: Diagram, backend: str = FLOAT, plan: ContractionPlan | str | None = None) -> Tensor:
    """Standard interpretation of ``d``.

    Y-diagrams evaluate to real tensors; ZX diagrams may be complex. The exact
    backend needs box angles in the pi/2 fragment and ZX phases that are
    multiples of pi/4.
    """
    if backend not in (FLOAT, EXACT):
        raise ValueError(f"unknown backend {backend!r}")
    cplx = d.calculus in (ZX, ZXR) and any(
        isinstance(k, (ZSpider, XSpider)) and not k.phase.is_multiple_of(1) for k in d.nodes.values()
    )
    return evaluate_network(d, _standard_image(backend), 1, backend, cplx, plan)


def interpret_model(d: Diagram, model) -> Tensor:
    """Evaluate ``d`` in a nonstandard model (see :mod:`ycalc.models`)."""
    t = evaluate_network(d, model.image, model.width, FLOAT, False)
    if getattr(model, "doubled", False):
        arr = np.kron(t.array, t.array)
        return Tensor(arr, 2 * t.n_in, 2 * t.n_out, FLOAT, t.width)
    return t


def contract_plan(d: Diagram, strategy: str = "greedy") -> ContractionPlan:
    """Elimination order over the network of ``d``; ``strategy`` is ``greedy`` or ``linear``."""
    net = _build_network(d, lambda k, deg: np.zeros((2,) * deg), 1, FLOAT, False)
    return _plan(net.labels, strategy)


def equal_semantics(d1: Diagram, d2: Diagram, tol: float = 1e-9, backend: str = FLOAT) -> bool:
    if d1.arity != d2.arity:
        raise ValueError(f"arity mismatch {d1.arity} vs {d2.arity}")
    t1, t2 = interpret(d1, backend), interpret(d2, backend)
    if backend == EXACT:
        return t1.exact_equal(t2)
    return t1.deviation(t2) <= tol


def re_im_split(t: Tensor) -> tuple[Tensor, Tensor]:
    if t.backend == EXACT:
        re = np.vectorize(lambda x: Exact.lift(x).real, otypes=[object])(t.array)
        im = np.vectorize(lambda x: Exact.lift(x).imag, otypes=[object])(t.array)
    else:
        arr = np.asarray(t.array)
        re, im = arr.real.astype(float), (arr.imag.astype(float) if np.iscomplexobj(arr) else np.zeros(arr.shape))
    return (
        Tensor(re, t.n_in, t.n_out, t.backend, t.width),
        Tensor(im, t.n_in, t.n_out, t.backend, t.width),
    )


def tensor_from_json(doc: dict) -> Tensor:
    rows = np.array([[complex(x) for x in r] for r in doc["rows"]])
    if not np.any(rows.imag):
        rows = rows.real
    n_out, n_in = doc["shape"]
    return Tensor(rows, n_in, n_out, FLOAT, doc.get("width", 1))


def dumps_tensor(t: Tensor) -> str:
    return json.dumps(t.to_json(), indent=1)
