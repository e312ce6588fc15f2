from __future__ import annotations

import itertools
import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from ycalc.angle import Angle
from ycalc.diagram import (
    Y, ZX, ZXR, Boundary, Builder, DiagramError, HBox, HNode, PiDot, XSpider, YBox, ZSpider,
    box, cap, colour_swap, compose, cup, empty, expand_hnode, flip_vertical, generator, graph_state,
    identity, spider, swap, tensor, validate,
)
from ycalc.semantics import interpret
from ycalc.catalog import rule_by_name

R2 = 1 / math.sqrt(2)


def sem(d):
    return interpret(d).array


def rot(a):
    return np.array([[math.cos(a / 2), -math.sin(a / 2)], [math.sin(a / 2), math.cos(a / 2)]])


def test_generator_green_spider_degree():
    d = generator(ZSpider(), 1, 2)
    (n,) = d.interior()
    assert d.degree(n) == 3 and d.arity == (1, 2)


def test_generator_box():
    d = generator(YBox(Angle.pi(1)), 1, 1)
    assert len(d.interior()) == 1 and d.calculus == Y


def test_generator_box_bad_arity():
    with pytest.raises(DiagramError):
        generator(YBox(Angle()), 2, 1)


def test_generator_wiring_has_no_interior():
    for name, (n, m) in {"id": (1, 1), "swap": (2, 2), "cup": (0, 2), "cap": (2, 0), "empty": (0, 0)}.items():
        assert generator(name, n, m).interior() == []


def test_tensor_identities():
    d = tensor(identity(), identity())
    assert d.arity == (2, 2)
    assert np.allclose(sem(d), np.eye(4))


def test_tensor_empty_unit():
    d = box("pi/3")
    t = tensor(empty(), d)
    assert t.inputs == d.inputs and t.outputs == d.outputs
    assert np.allclose(sem(t), sem(d))


def test_tensor_states():
    d = tensor(spider("Z", 0, 1), spider("X", 0, 1))
    want = np.kron([1, 1], [math.sqrt(2), 0]).reshape(4, 1)
    assert np.allclose(sem(d), want)


def test_tensor_calculus_mismatch():
    with pytest.raises(DiagramError):
        tensor(identity(1, Y), identity(1, ZX))


def test_snake_is_identity():
    snake = compose(tensor(identity(), cap()), tensor(cup(), identity()))
    assert snake.arity == (1, 1)
    assert np.allclose(sem(snake), np.eye(2))


def test_compose_with_identity():
    d = spider("Z", 2, 1)
    assert np.allclose(sem(compose(d, identity(2))), sem(d))


def test_compose_arity_mismatch():
    with pytest.raises(DiagramError):
        compose(spider("Z", 2, 1), identity(1))


@given(st.floats(-10, 10), st.floats(-10, 10))
def test_compose_boxes_adds_angles(a, b):
    assert np.allclose(sem(compose(box(a), box(b))), sem(box(a + b)))


def test_flip_state_to_effect():
    d = flip_vertical(spider("Z", 0, 1))
    assert d.arity == (1, 0)


@given(st.floats(-10, 10))
def test_flip_box_is_transpose(a):
    d = box(a)
    f = flip_vertical(d)
    assert np.allclose(sem(f), sem(d).T)
    assert np.allclose(sem(f), sem(box(-a)))


def test_flip_is_involution():
    d, _ = rule_by_name("Y.B1").instance()
    assert flip_vertical(flip_vertical(d)) == d


def test_flip_transposes_general_diagram():
    d, _ = rule_by_name("Y.RS2").instance(alpha=0.4)
    assert np.allclose(sem(flip_vertical(d)), sem(d).T)


def test_colour_swap_state():
    d = colour_swap(spider("Z", 0, 1))
    (n,) = d.interior()
    assert isinstance(d.kind(n), XSpider)


def test_colour_swap_involution():
    d, _ = rule_by_name("Y.RS2").instance(alpha=0.4)
    assert colour_swap(colour_swap(d)) == d


def test_colour_swap_b1_still_sound():
    lhs, rhs = rule_by_name("Y.B1").instance()
    assert np.allclose(sem(colour_swap(lhs)), sem(colour_swap(rhs)))


def test_flip_and_swap_commute_with_tensor():
    a, b = box(0.3), spider("Z", 1, 2)
    assert flip_vertical(tensor(a, b)).arity == tensor(flip_vertical(a), flip_vertical(b)).arity
    assert np.allclose(sem(flip_vertical(tensor(a, b))), sem(tensor(flip_vertical(a), flip_vertical(b))))
    assert np.allclose(sem(colour_swap(tensor(a, b))), sem(tensor(colour_swap(a), colour_swap(b))))


def test_flip_reverses_compose():
    a, b = box(0.3), compose(spider("X", 2, 1), spider("Z", 1, 2))
    lhs = flip_vertical(compose(a, b))
    rhs = compose(flip_vertical(b), flip_vertical(a))
    assert np.allclose(sem(lhs), sem(rhs))


def test_expand_hnode2_is_hadamard():
    d = expand_hnode(generator(HNode(2), 1, 1))
    assert all(not isinstance(d.kind(n), (HNode, HBox, PiDot)) for n in d.nodes)
    assert np.allclose(sem(d), R2 * np.array([[1, 1], [1, -1]]))


def test_expand_hnode3_matches_graph_state_formula():
    d = expand_hnode(generator(HNode(3), 0, 3))
    want = np.array([(-1) ** (x * y + x * z + y * z) for x, y, z in itertools.product((0, 1), repeat=3)]) / 2
    assert np.allclose(sem(d).ravel(), want)


def test_expand_hnode_noop_without_notations():
    d, _ = rule_by_name("Y.B1").instance()
    assert expand_hnode(d) == d


def test_expand_hnode_rejects_zx():
    with pytest.raises(DiagramError):
        expand_hnode(identity(1, ZX))


@pytest.mark.parametrize("colour, want", [("Z", np.diag([1, -1])), ("X", np.array([[0, 1], [1, 0]]))])
def test_expand_pidot(colour, want):
    d = expand_hnode(generator(PiDot(colour), 1, 1))
    assert np.allclose(sem(d), want)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hnode_leg_permutation_invariance(n):
    base = sem(expand_hnode(generator(HNode(n), 0, n))).reshape((2,) * n)
    for perm in itertools.permutations(range(n)):
        assert np.allclose(base.transpose(perm), base)


def test_graph_state_single_vertex():
    assert np.allclose(sem(graph_state(([0], []))).ravel(), [1, 1])


def test_graph_state_edge_brute_force():
    want = np.array([(-1) ** (x * y) for x, y in itertools.product((0, 1), repeat=2)]) * R2
    assert np.allclose(sem(graph_state(([0, 1], [(0, 1)]))).ravel(), want)


def test_graph_state_triangle_vs_hnode():
    g = sem(graph_state(nx.complete_graph(3))).ravel()
    h = sem(generator(HNode(3), 0, 3)).ravel()
    # HNode(n) carries (n-2)(n-1)/2 extra factors sqrt2
    assert np.allclose(h, g * math.sqrt(2))


def test_validate_ok():
    assert validate(spider("Z", 1, 2)) is True


def test_validate_boundary_degree():
    b = Builder(Y)
    i = b.input()
    s = b.add(ZSpider())
    b.wire(i, s)
    b.wire(i, s)
    errs = validate(b.build(check=False))
    assert any(i in e and "degree 2" in e for e in errs)


def test_validate_box_degree():
    b = Builder(Y)
    x = b.add(YBox(Angle()))
    s = b.add(ZSpider())
    for _ in range(3):
        b.wire(x, s)
    errs = validate(b.build(check=False))
    assert any(x in e and "box has degree 3" in e for e in errs)


def test_validate_calculus_phase_rules():
    assert validate(spider("Z", 1, 1, "pi/2", ZX)) is True
    assert validate(spider("Z", 1, 1, "pi", ZXR)) is True
    for calculus, phase in ((ZXR, "pi/2"), (Y, "pi")):
        b = Builder(calculus)
        s = b.add(ZSpider(Angle.parse(phase)))
        b.wire(b.input(), s)
        b.wire(s, b.output())
        assert validate(b.build(check=False)) is not True


@pytest.mark.parametrize("kind, n, m", [
    (ZSpider(), 1, 2), (XSpider(), 2, 1), (YBox(Angle(free=0.7)), 1, 1), (HBox(), 1, 1), (HNode(3), 1, 2),
])
def test_bending_round_trip(kind, n, m):
    """Bend the first input up into an output and back again."""
    g = generator(kind, n, m)
    rest_in = identity(n - 1)
    bent = compose(tensor(identity(1), g), tensor(cup(), rest_in))
    back = compose(tensor(cap(), identity(m)), tensor(identity(1), bent))
    assert np.allclose(sem(back), sem(g))


def test_self_loops_and_parallel_edges_allowed():
    b = Builder(Y)
    s = b.add(ZSpider())
    r = b.add(XSpider())
    b.wire(s, s)
    b.wire(s, r)
    b.wire(s, r)
    assert validate(b.build()) is True


def test_diagram_equality_ignores_edge_direction():
    b = Builder(Y)
    i, o = b.input(), b.output()
    b.wire(o, i, "e")
    c = Builder(Y)
    c.input(i)
    c.output(o)
    c.wire(i, o, "e")
    assert b.build() == c.build()
