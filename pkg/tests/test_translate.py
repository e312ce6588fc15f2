from __future__ import annotations

import copy
import math

import numpy as np
import pytest

from ycalc.angle import Angle
from ycalc.diagram import (
    Y, ZX, ZXR, HBox, PiDot, XSpider, YBox, ZSpider, box, empty, generator, identity, spider, tensor,
)
from ycalc.gadgets import zx_phase_scalar
from ycalc.randomgen import random_y, random_zx, random_zx_term, random_zxr
from ycalc.rules import rule_catalog
from ycalc.semantics import interpret
from ycalc.translate import (
    J, Gen, Par, Seq, TranslationError, generator_table, im_part, re_part, term_to_diagram,
    universal_embed, verify_generator_table, y_to_zx, y_to_zxr, zx_to_y, zx_to_y_term, zxr_to_y,
)

H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)


def rot(a):
    return np.array([[math.cos(a / 2), -math.sin(a / 2)], [math.sin(a / 2), math.cos(a / 2)]])


def block(t):
    return np.kron(t.real, np.eye(2)) + np.kron(t.imag, J)


def sem(d):
    return interpret(d).array


# --- generator table ------------------------------------------------------------


def test_table_verifies():
    assert verify_generator_table() == []
    assert len(generator_table()) >= 20


def test_corrupted_table_detected():
    entries = copy.deepcopy(generator_table())
    entries[1]["contract"]["re"][0][0] = 0.5
    problems = verify_generator_table(entries)
    assert problems and "entry 1" in problems[0]


def test_corrupted_image_detected():
    entries = copy.deepcopy(generator_table())
    entries[1]["image"] = [ln.replace("gspider z0 pi", "gspider z0") for ln in entries[1]["image"]]
    assert verify_generator_table(entries)


# --- Y pi/2 <-> ZX_r -------------------------------------------------------------


def test_y_to_zxr_spider_unchanged():
    d = spider("Z", 1, 2)
    out = y_to_zxr(d)
    assert out.calculus == ZXR
    assert out.nodes == d.nodes and out.edges == d.edges


def test_y_to_zxr_box():
    out = y_to_zxr(box("pi/2"))
    assert np.allclose(sem(out), np.array([[1, -1], [1, 1]]) / math.sqrt(2))


@pytest.mark.parametrize("k", range(8))
@pytest.mark.parametrize("flipped", [False, True])
def test_y_to_zxr_all_boxes_exact(k, flipped):
    d = box(f"{k}pi/2", flipped)
    assert interpret(y_to_zxr(d), "exact").exact_equal(interpret(d, "exact"))


def test_y_to_zxr_fragment_error():
    with pytest.raises(TranslationError):
        y_to_zxr(box("pi/4"))


def test_y_to_zxr_100_node_random():
    rng = np.random.default_rng(11)
    d = random_y(rng, n_in=2, n_out=2, n_nodes=100)
    assert len(d.interior()) >= 100
    assert interpret(y_to_zxr(d)).deviation(interpret(d)) < 1e-9


def test_zxr_to_y_hbox():
    out = zxr_to_y(generator(HBox(), 1, 1, ZXR))
    assert out.calculus == Y
    assert np.allclose(sem(out), H)


def test_zxr_to_y_green_pi():
    out = zxr_to_y(spider("Z", 1, 1, "pi", ZXR))
    assert np.allclose(sem(out), np.diag([1, -1]))
    assert all(not isinstance(out.kind(n), (PiDot, HBox)) for n in out.nodes)


def test_zxr_to_y_rejects_other_phases():
    with pytest.raises(TranslationError):
        zxr_to_y(spider("Z", 1, 1, "pi/2", ZX))


@pytest.mark.parametrize("seed", range(20))
def test_y_zxr_round_trip(seed):
    rng = np.random.default_rng(seed)
    d = random_y(rng, step=2)
    want = interpret(d, "exact")
    assert want.exact_equal(interpret(y_to_zxr(d), "exact"))
    assert want.exact_equal(interpret(zxr_to_y(y_to_zxr(d)), "exact"))


@pytest.mark.parametrize("seed", range(10))
def test_zxr_to_y_random(seed):
    rng = np.random.default_rng(50 + seed)
    d = random_zxr(rng)
    assert interpret(zxr_to_y(d)).deviation(interpret(d)) < 1e-9


@pytest.mark.parametrize("rule", rule_catalog(ZXR), ids=lambda r: r.name)
def test_zxr_rules_preserved_by_zxr_to_y(rule):
    import random

    rng = random.Random(0)
    for _ in range(5):
        lhs, rhs = rule.instance(**rule.sample(rng))
        assert interpret(zxr_to_y(lhs)).deviation(interpret(zxr_to_y(rhs))) < 1e-9


# --- Y -> ZX -----------------------------------------------------------------------


@pytest.mark.parametrize("a", [math.pi / 3, 1.0, 2.5])
def test_y_to_zx_box(a):
    out = y_to_zx(box(Angle(free=a)))
    t = sem(out)
    assert np.allclose(t, rot(a)) and out.calculus == ZX


def test_y_to_zx_spiders_unchanged():
    d = tensor(spider("Z", 1, 2), spider("X", 2, 0))
    out = y_to_zx(d)
    assert out.nodes == d.nodes and out.edges == d.edges


@pytest.mark.parametrize("rule", rule_catalog(Y), ids=lambda r: r.name)
def test_y_rules_transport_to_zx(rule):
    import random

    rng = random.Random(3)
    for _ in range(5):
        lhs, rhs = rule.instance(**rule.sample(rng))
        assert interpret(y_to_zx(lhs)).deviation(interpret(y_to_zx(rhs))) < 1e-9


# --- ZX -> Y -------------------------------------------------------------------------


def test_zx_to_y_hbox_control_untouched():
    out = zx_to_y(generator(HBox(), 1, 1, ZX))
    assert out.arity == (2, 2)
    t = sem(out)
    assert np.allclose(t, np.kron(H, np.eye(2)))
    assert np.allclose(t[0::2, 0::2], H)


def test_zx_to_y_phase_half_pi():
    t = sem(zx_to_y(spider("Z", 1, 1, "pi/2", ZX)))
    assert np.allclose(t, np.kron(np.diag([1, 0]), np.eye(2)) + np.kron(np.diag([0, 1]), J))


def test_zx_to_y_nullary_gives_controlled_scalar():
    d = zx_phase_scalar("pi/4")
    out = zx_to_y(d)
    assert out.arity == (1, 1)
    c = math.cos(math.pi / 4)
    assert np.allclose(sem(out), c * np.eye(2) + c * J)


def test_zx_to_y_tensor_unit():
    d = spider("X", 1, 2, 0.4, ZX)
    a = sem(zx_to_y_term(Par(Gen(empty(ZX)), Gen(d))))
    b = sem(zx_to_y_term(Par(Gen(d), Gen(empty(ZX)))))
    assert np.allclose(a, sem(zx_to_y(d))) and np.allclose(b, sem(zx_to_y(d)))


def test_zx_to_y_gadgets_commute_on_control():
    a = spider("Z", 1, 1, 0.7, ZX)
    b = spider("X", 1, 1, 1.9, ZX)
    ab = sem(zx_to_y_term(Par(Gen(a), Gen(b))))
    ba = sem(zx_to_y_term(Seq(Par(Gen(identity(1, ZX)), Gen(b)), Par(Gen(a), Gen(identity(1, ZX))))))
    assert np.allclose(ab, ba)


@pytest.mark.parametrize("seed", range(25))
def test_zx_to_y_block_law(seed):
    rng = np.random.default_rng(seed)
    d = random_zx(rng, step=None if seed % 2 else 4)
    assert np.max(np.abs(sem(zx_to_y(d)) - block(sem(d)))) < 1e-9


@pytest.mark.parametrize("seed", range(25))
def test_zx_to_y_term_block_law(seed):
    rng = np.random.default_rng(500 + seed)
    t = random_zx_term(rng)
    d = term_to_diagram(t)
    assert np.max(np.abs(sem(zx_to_y_term(t)) - block(sem(d)))) < 1e-9


@pytest.mark.parametrize("rule", rule_catalog(ZX), ids=lambda r: r.name)
def test_zx_rules_transport_to_y(rule):
    import random

    rng = random.Random(4)
    for _ in range(3):
        lhs, rhs = rule.instance(**rule.sample(rng))
        assert interpret(zx_to_y(lhs)).deviation(interpret(zx_to_y(rhs))) < 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_fragment_stability(seed):
    rng = np.random.default_rng(900 + seed)
    for step in (1, 2, 4):
        d = random_zx(rng, step=step)
        phases = {k.phase for k in d.nodes.values() if isinstance(k, (ZSpider, XSpider))}
        out = zx_to_y(d, expand=False)
        for k in out.nodes.values():
            if isinstance(k, YBox):
                assert k.angle.is_multiple_of(Angle.pi(1).fraction / step)
                assert k.angle in phases
        expanded = zx_to_y(d)
        for k in expanded.nodes.values():
            if isinstance(k, YBox):
                assert k.angle.is_multiple_of(Angle.pi(1).fraction / max(step, 2))


# --- Re / Im -----------------------------------------------------------------------


def test_re_part_of_real_diagram():
    d = spider("X", 1, 2, "pi", ZX)
    assert np.allclose(sem(re_part(d)), sem(d).real)


def test_im_part_half_pi():
    assert np.allclose(sem(im_part(spider("Z", 1, 1, "pi/2", ZX))), np.diag([0, 1]))


@pytest.mark.parametrize("route", ["direct", "via-zx"])
def test_re_im_random(route):
    rng = np.random.default_rng(77)
    for _ in range(30):
        d = random_zx(rng, step=None, max_wires=3)
        t = sem(d)
        r, i = re_part(d, route), im_part(d, route)
        assert r.calculus == (Y if route == "direct" else ZX)
        assert np.max(np.abs(sem(r) - t.real)) < 1e-9
        assert np.max(np.abs(sem(i) - t.imag)) < 1e-9


def test_norm_contraction():
    rng = np.random.default_rng(8)
    for _ in range(20):
        d = random_zx(rng, step=None, n_in=1, n_out=1)
        t = sem(d)
        M = rng.normal(size=t.shape)
        lhs = np.linalg.norm(sem(re_part(d)) - M, 2)
        rhs = np.linalg.norm(t - M, 2)
        assert lhs <= rhs + 1e-9


# --- universality ------------------------------------------------------------------


def test_universal_identity():
    assert np.allclose(sem(universal_embed(np.eye(2))), np.eye(2))


def test_universal_rotation():
    M = np.array([[0.0, -1.0], [1.0, 0.0]])
    assert np.allclose(sem(universal_embed(M)), M)


def test_universal_random_4x4():
    rng = np.random.default_rng(2)
    Q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    M = 3.7 * Q
    assert np.max(np.abs(sem(universal_embed(M)) - M)) < 1e-6


def test_universal_bad_shape():
    with pytest.raises(TranslationError):
        universal_embed(np.ones((3, 2)))
