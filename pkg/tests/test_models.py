from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from ycalc.angle import Angle
from ycalc.catalog import rule_catalog
from ycalc.diagram import Y, box, compose, identity, spider, tensor
from ycalc.models import (
    PRESERVED_TOL, VIOLATED_TOL, bundle_model, flip_model, permutation_matrix, preservation_matrix,
    prime_model, standard_model,
)
from ycalc.randomgen import random_y
from ycalc.semantics import interpret

RULES = rule_catalog(Y)


def rot(a):
    return np.array([[math.cos(a / 2), -math.sin(a / 2)], [math.sin(a / 2), math.cos(a / 2)]])


def by_name(name):
    return next(r for r in RULES if r.name == name)


# --- permutation algebra ----------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_permutation_group_law(n):
    for p in range(n):
        for q in range(n):
            assert np.array_equal(
                permutation_matrix(n, p) @ permutation_matrix(n, q), permutation_matrix(n, (p + q) % n)
            )
    assert np.array_equal(permutation_matrix(n, 0), np.eye(2**n))


def test_permutation_moves_slot():
    # |100> : slot 0 set, shifted by one lands in slot 1 -> |010>
    u = permutation_matrix(3, 1)
    assert u[0b010, 0b100] == 1


@pytest.mark.parametrize("n", [2, 3])
def test_rotations_commute_with_shift(n):
    r = rot(0.37)
    rn = r
    for _ in range(n - 1):
        rn = np.kron(rn, r)
    for k in range(n):
        u = permutation_matrix(n, k)
        assert np.allclose(rn @ u, u @ rn)


# --- generator images ---------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_bundle_box_zero_is_identity(n):
    t = bundle_model(n).evaluate(box(0))
    assert np.allclose(t.array, np.eye(2**n))


@pytest.mark.parametrize("k1,k2", [(1, 1), (1, 2), (2, 3)])
def test_bundle_boxes_compose(k1, k2):
    m = bundle_model(3)
    a, b = Angle.pi(Fraction(k1, 6)), Angle.pi(Fraction(k2, 6))
    both = m.evaluate(compose(box(b), box(a))).array
    assert np.allclose(both, m.evaluate(box(b)).array @ m.evaluate(box(a)).array)
    assert np.allclose(both, m.evaluate(box(a + b)).array)


def test_bundle_rejects_out_of_fragment():
    from ycalc.semantics import FragmentError

    with pytest.raises(FragmentError):
        bundle_model(3).evaluate(box("pi/4"))


def test_bundle_needs_two():
    with pytest.raises(ValueError):
        bundle_model(1)


@pytest.mark.parametrize("p", [1, 2, 4, 9])
def test_prime_model_rejects(p):
    with pytest.raises(ValueError):
        prime_model(p)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_prime_model_half_pi_checkpoint(p):
    t = prime_model(p).evaluate(box("pi/2")).array
    r = rot(math.pi / 2)
    assert np.allclose(t, np.kron(r, r))


def test_standard_model_matches_interpret():
    rng = np.random.default_rng(1)
    for _ in range(10):
        d = random_y(rng, step=None)
        assert standard_model().evaluate(d).deviation(interpret(d)) < 1e-9


# --- functoriality ----------------------------------------------------------------------


MODELS = [bundle_model(2), bundle_model(3), prime_model(3), flip_model()]


def _model_step(m):
    frag = m.fragment
    return None if frag is None else frag.denominator


@pytest.mark.parametrize("m", MODELS, ids=lambda m: m.name)
def test_functoriality(m):
    rng = np.random.default_rng(5)
    step = _model_step(m)
    for _ in range(100):
        a = random_y(rng, step=step, n_in=1, n_out=1, n_nodes=4, max_wires=2)
        b = random_y(rng, step=step, n_in=1, n_out=1, n_nodes=4, max_wires=2)
        ta, tb = m.evaluate(a).array, m.evaluate(b).array
        assert np.max(np.abs(m.evaluate(compose(b, a)).array - tb @ ta)) < 1e-9
        if not m.doubled:
            assert np.max(np.abs(m.evaluate(tensor(a, b)).array - np.kron(ta, tb))) < 1e-9


@pytest.mark.parametrize("m", MODELS, ids=lambda m: m.name)
def test_identity_and_swap_images(m):
    w = m.width * (2 if m.doubled else 1)
    assert np.allclose(m.evaluate(identity(1)).array, np.eye(2**w))
    assert np.allclose(m.evaluate(identity(2)).array, np.eye(4**w))


# --- preservation and certificates ----------------------------------------------------


@pytest.fixture(scope="module")
def reports():
    return {
        "bundle(3)": preservation_matrix(bundle_model(3), RULES, samples=10),
        "prime(3)": preservation_matrix(prime_model(3), RULES, samples=10),
        "flip": preservation_matrix(flip_model(), RULES, samples=10),
    }


@pytest.mark.parametrize(
    "model,family", [("bundle(3)", "Y.RS2"), ("prime(3)", "Y.RSUP_3"), ("flip", "Y.RH")]
)
def test_certificates(reports, model, family):
    rep = reports[model]
    assert rep.certifies() == family
    assert not rep.inconclusive
    for c in rep.cells:
        if c.verdict == "violated":
            assert c.max_deviation > VIOLATED_TOL
        elif c.verdict == "preserved":
            assert c.max_deviation < PRESERVED_TOL


def test_bundle_na_cells(reports):
    na = {c.family for c in reports["bundle(3)"].cells if c.verdict == "n/a"}
    assert na <= {"Y.RSUP_5", "Y.RSUP_7"}


def test_prime_preserves_other_superpositions(reports):
    cells = {c.family: c.verdict for c in reports["prime(3)"].cells}
    for fam in ("Y.RSUP_2", "Y.RSUP_5", "Y.RS2", "Y.RH"):
        if fam in cells:
            assert cells[fam] == "preserved"


def test_flip_preserves_spider_rules(reports):
    for c in reports["flip"].cells:
        if c.family.startswith(("Y.S", "Y.B")):
            assert c.verdict == "preserved"


def test_rs2_gap_at_checkpoint():
    m = bundle_model(3)
    lhs, rhs = by_name("Y.RS2").instance(alpha=Angle.pi(Fraction(1, 6)))
    assert m.evaluate(lhs).deviation(m.evaluate(rhs)) > VIOLATED_TOL


def test_report_outputs(reports):
    rep = reports["flip"]
    doc = rep.to_json()
    assert doc["certifies"] == "Y.RH" and len(doc["cells"]) == len(rep.cells)
    assert rep.text().startswith("# model flip")
