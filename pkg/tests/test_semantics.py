from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ycalc.angle import Angle
from ycalc.diagram import (
    Y, ZX, HBox, ZSpider, box, cap, colour_swap, compose, cup, empty, flip_vertical, generator,
    identity, spider, tensor,
)
from ycalc.exact import Exact, SQRT2
from ycalc.gadgets import multiedge, seq
from ycalc.lemmas import lemma_by_name
from ycalc.models import bundle_model, standard_model
from ycalc.catalog import rule_by_name
from ycalc.randomgen import random_y
from ycalc.semantics import (
    FragmentError, ResourceError, Tensor, contract_plan, equal_semantics, interpret, interpret_model,
    re_im_split,
)

H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)


def test_box_pi():
    assert np.allclose(interpret(box("pi")).array, [[0, -1], [1, 0]])


def test_box_pi_exact_entries():
    t = interpret(box("pi"), "exact")
    assert t.array[0, 1] == Exact(-1) and t.array[1, 0] == Exact(1) and t.array[0, 0] == Exact(0)


def test_green_dot_is_two():
    assert interpret(generator(ZSpider(), 0, 0)).array.tolist() == [[2.0]]


def test_red_state():
    assert np.allclose(interpret(spider("X", 0, 1)).array.ravel(), [math.sqrt(2), 0])


def test_exact_red_state():
    assert interpret(spider("X", 0, 1), "exact").array[0, 0] == SQRT2


def test_snake():
    snake = compose(tensor(identity(), cap()), tensor(cup(), identity()))
    assert np.allclose(interpret(snake).array, np.eye(2))


def test_zx_green_pi():
    assert np.allclose(interpret(spider("Z", 1, 1, "pi", ZX)).array, np.diag([1, -1]))


@given(st.floats(-7, 7))
def test_zx_general_phase(a):
    t = interpret(spider("Z", 1, 1, Angle(free=a), ZX)).array
    assert np.allclose(t, np.diag([1, np.exp(1j * a)]))


def test_x_spider_is_hadamard_conjugate():
    for n, m in [(1, 1), (1, 2), (2, 1), (2, 2), (0, 3)]:
        z = interpret(spider("Z", n, m, "pi/4", ZX)).array
        x = interpret(spider("X", n, m, "pi/4", ZX)).array
        Hn = np.array([[1.0]])
        for _ in range(n):
            Hn = np.kron(Hn, H)
        Hm = np.array([[1.0]])
        for _ in range(m):
            Hm = np.kron(Hm, H)
        assert np.allclose(x, Hm @ z @ Hn)


def test_empty_diagram():
    assert interpret(empty()).array.tolist() == [[1.0]]


def test_resource_guard(monkeypatch):
    monkeypatch.setenv("YCALC_MAX_WIRES", "2")
    with pytest.raises(ResourceError):
        interpret(identity(2))


def test_exact_rejects_off_fragment_box():
    with pytest.raises(FragmentError):
        interpret(box("pi/4"), "exact")


def test_interpret_model_standard_is_identity_assignment():
    d, _ = rule_by_name("Y.RS2").instance(alpha=0.3)
    assert np.allclose(interpret_model(d, standard_model()).array, interpret(d).array)


def test_interpret_model_functorial():
    m = bundle_model(3)
    a, b = box("pi/2"), box("pi/2")
    whole = interpret_model(compose(a, b), m).array
    parts = interpret_model(a, m).array @ interpret_model(b, m).array
    assert np.allclose(whole, parts)


def test_interpret_model_separates_rs2():
    lhs, rhs = rule_by_name("Y.RS2").instance(alpha="pi/6")
    m = bundle_model(3)
    assert interpret_model(lhs, m).deviation(interpret_model(rhs, m)) > 1e-6


def test_equal_semantics():
    d, _ = rule_by_name("Y.B1").instance()
    assert equal_semantics(d, d)
    lhs, rhs = lemma_by_name("Y.L:hopf").instance()
    assert equal_semantics(lhs, rhs)
    assert not equal_semantics(box("pi/2"), box("-pi/2"))
    assert not equal_semantics(box("pi/2"), box("-pi/2"), backend="exact")


def test_equal_semantics_arity_mismatch():
    with pytest.raises(ValueError):
        equal_semantics(identity(1), identity(2))


def test_re_im_split():
    t = interpret(spider("Z", 1, 1, "pi/2", ZX))
    re, im = re_im_split(t)
    assert np.allclose(re.array, np.diag([1, 0])) and np.allclose(im.array, np.diag([0, 1]))
    J = np.array([[0, 1], [-1, 0]])
    recombined = np.kron(re.array, np.eye(2)) + np.kron(im.array, J)
    assert recombined.shape == (4, 4) and recombined[3, 2] == -1


def test_re_im_split_real():
    t = interpret(box(0.4))
    re, im = re_im_split(t)
    assert np.allclose(re.array, t.array) and not im.array.any()


def test_plan_single_generator():
    plan = contract_plan(box(0.2))
    assert plan.peak_rank <= 2


def test_plan_chain_peak_rank():
    d = seq(*[box(0.1 * i) for i in range(10)])
    for strategy in ("greedy", "linear"):
        assert contract_plan(d, strategy).peak_rank <= 3


def test_plans_agree():
    rng = np.random.default_rng(3)
    for _ in range(10):
        d = random_y(rng, step=None)
        a = interpret(d, plan="greedy").array
        b = interpret(d, plan="linear").array
        assert np.max(np.abs(a - b)) < 1e-12


@pytest.mark.parametrize("seed", range(10))
def test_functoriality(seed):
    rng = np.random.default_rng(seed)
    a = random_y(rng, step=None, n_in=1, n_out=2)
    b = random_y(rng, step=None, n_in=2, n_out=1)
    assert np.allclose(interpret(compose(b, a)).array, interpret(b).array @ interpret(a).array, atol=1e-12)
    assert np.allclose(interpret(tensor(a, b)).array, np.kron(interpret(a).array, interpret(b).array), atol=1e-12)
    ea = random_y(rng, step=2, n_in=1, n_out=1)
    eb = random_y(rng, step=2, n_in=1, n_out=1)
    assert interpret(compose(eb, ea), "exact").exact_equal(interpret(eb, "exact") @ interpret(ea, "exact"))


@pytest.mark.parametrize("seed", range(10))
def test_transpose_and_exact_float_agreement(seed):
    rng = np.random.default_rng(100 + seed)
    d = random_y(rng, step=2)
    f = interpret(d).array
    assert np.allclose(interpret(flip_vertical(d)).array, f.T)
    assert np.max(np.abs(interpret(d, "exact").to_float() - f)) < 1e-12


def test_colour_duality_phaseless():
    d = compose(spider("Z", 3, 1), tensor(spider("X", 1, 2), identity()))
    n, m = len(d.inputs), len(d.outputs)
    Hn = _hpow(n)
    Hm = _hpow(m)
    assert np.allclose(interpret(colour_swap(d)).array, Hm @ interpret(d).array @ Hn)


def test_colour_duality_box():
    # a box conjugated by H is its upside-down image
    for a in (0.3, 1.7, -2.2):
        assert np.allclose(interpret(colour_swap(box(a))).array, H @ interpret(box(a)).array @ H)


def _hpow(k):
    out = np.array([[1.0]])
    for _ in range(k):
        out = np.kron(out, H)
    return out


@given(st.floats(-20, 20))
def test_periodicity(a):
    assert interpret(box(a)).deviation(interpret(box(a + 4 * math.pi))) < 1e-12


def test_tensor_export_formats():
    t = interpret(box("pi/2"), "exact")
    text = t.dump_text()
    assert len(text.splitlines()) == 2 and "√2" in text
    doc = t.to_json()
    assert doc["shape"] == [1, 1] and len(doc["rows"]) == 2


def test_multiedge_scalars():
    assert interpret(multiedge(1)).array[0, 0] == pytest.approx(math.sqrt(2))
    assert interpret(multiedge(3)).array[0, 0] == pytest.approx(1 / math.sqrt(2))
    assert interpret(multiedge(6)).array[0, 0] == pytest.approx(0.5)
