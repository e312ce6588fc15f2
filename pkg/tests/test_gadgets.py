from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from ycalc.diagram import Y, ZX
from ycalc.gadgets import (
    bicolor, half, inv_sqrt2, loop, minus_one, pi_gate, pi_state, sqrt2_pow, triangle, zero,
    zx_bicolor, zx_minus_one, zx_phase_scalar,
)
from ycalc.semantics import interpret


def val(d, backend="float"):
    t = interpret(d, backend)
    return t.to_float() if backend == "exact" else t.array


@pytest.mark.parametrize(
    "d,want",
    [(bicolor(), math.sqrt(2)), (inv_sqrt2(), 1 / math.sqrt(2)), (half(), 0.5),
     (zero(), 0.0), (minus_one(), -1.0)],
)
def test_scalars(d, want):
    assert d.arity == (0, 0)
    assert np.allclose(val(d), want)
    assert np.allclose(val(d, "exact"), want)


@pytest.mark.parametrize("j", range(-5, 6))
def test_sqrt2_pow(j):
    assert np.allclose(val(sqrt2_pow(j)), math.sqrt(2) ** j)


@pytest.mark.parametrize("a", [0.0, 0.4, 2.0, math.pi])
def test_loop(a):
    assert np.allclose(val(loop(a)), 2 * math.cos(a / 2))


def test_pi_states_and_gates():
    assert np.allclose(val(pi_state("Z")).ravel(), [1, -1])
    assert np.allclose(val(pi_state("X")).ravel(), [0, math.sqrt(2)])
    assert np.allclose(val(pi_gate("Z")), np.diag([1, -1]))
    assert np.allclose(val(pi_gate("X")), [[0, 1], [1, 0]])


def test_triangle():
    t = val(triangle()).ravel()
    assert t.shape == (8,) and np.isrealobj(t)
    # |000> and |111> see the three boxes with all-equal ends
    c = math.cos(math.pi / 4)
    assert np.isclose(t[0], c**3) and np.isclose(t[7], c**3)


@pytest.mark.parametrize("theta", [0.3, "pi/2", "pi", -1.1])
def test_zx_phase_scalar(theta):
    from ycalc.angle import as_angle

    assert np.allclose(val(zx_phase_scalar(theta)), cmath.exp(1j * as_angle(theta).value))


def test_zx_minus_one_and_bicolor():
    assert np.allclose(val(zx_minus_one()), -1)
    a, b = 0.5, 1.3
    want = (1 + cmath.exp(1j * a) + cmath.exp(1j * b) - cmath.exp(1j * (a + b))) / math.sqrt(2)
    assert np.allclose(val(zx_bicolor(a, b)), want)
    assert zx_bicolor(a, b).calculus == ZX and bicolor().calculus == Y
