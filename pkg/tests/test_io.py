from __future__ import annotations

import json
import math

import numpy as np
import pytest

from ycalc.angle import Angle
from ycalc.diagram import Y, ZX, YBox
from ycalc.io import ParseError, dumps, from_json, load, parse, parse_doc, save, to_json
from ycalc.randomgen import random_y, random_zx, random_zxr
from ycalc.semantics import interpret


def test_example_statement_line():
    d = parse("ybox a 1pi/2; wire in0 a; wire a out0")
    assert d.calculus == Y and d.arity == (1, 1)
    assert d.nodes["a"] == YBox(Angle.pi("1/2"))
    t = interpret(d).array
    c = math.cos(math.pi / 4)
    assert np.allclose(t, [[c, -c], [c, c]])


def test_comments_and_headers():
    text = """
    # a flipped box between explicit boundaries
    calculus Y
    meta name flipped
    arity 1 1
    fragment pi/2
    input i
    output o
    yboxflip b pi/2
    wire i b:t
    wire b:b o
    """
    doc = parse_doc(text)
    assert doc.meta == {"name": "flipped"}
    assert doc.diagram.nodes["b"].flipped


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("ybox a pi\nwire in0 a\nwire a nowhere", 3, 1),
        ("gspider a\nfoo b", 2, 1),
        ("ybox a pi;  bogus z", 1, 13),
        ("ybox a pi/x", 1, 1),
        ("calculus W", 1, 1),
    ],
)
def test_parse_errors_located(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_unbalanced_boundary():
    with pytest.raises(ParseError):
        parse("input i\noutput o\ngspider g\nwire i g")


def test_arity_header_mismatch():
    with pytest.raises(ParseError):
        parse("arity 2 1\nybox a pi; wire in0 a; wire a out0")


def test_fragment_header_mismatch():
    parse("fragment pi/4\nybox a pi/2; wire in0 a; wire a out0")
    with pytest.raises(ParseError):
        parse("fragment pi/2\nybox a pi/4; wire in0 a; wire a out0")


def test_zx_calculus_kinds():
    d = parse("calculus ZX\nhbox h\ngspider g pi/3\nwire in0 h\nwire h g\nwire g out0")
    assert d.calculus == ZX


def _random(seed):
    rng = np.random.default_rng(seed)
    pick = seed % 3
    if pick == 0:
        return random_y(rng, step=None if seed % 2 else 4)
    if pick == 1:
        return random_zx(rng, step=None if seed % 2 else 4)
    return random_zxr(rng)


@pytest.mark.parametrize("seed", range(100))
def test_text_round_trip(seed):
    d = _random(seed)
    meta = {"name": f"r{seed}", "source": "random generator"}
    doc = parse_doc(dumps(d, meta))
    assert doc.diagram == d
    assert doc.meta == meta
    assert dumps(doc.diagram, doc.meta) == dumps(d, meta)


@pytest.mark.parametrize("seed", range(100))
def test_json_round_trip(seed):
    d = _random(seed)
    doc = from_json(json.loads(json.dumps(to_json(d, {"k": "v"}))))
    assert doc.diagram == d and doc.meta == {"k": "v"}


def test_free_angle_round_trip_is_exact():
    d = parse("ybox a 0.1234567890123456789; wire in0 a; wire a out0")
    again = parse(dumps(d))
    assert again.nodes["a"].angle.free == d.nodes["a"].angle.free


def test_load_save(tmp_path):
    d = random_y(np.random.default_rng(3))
    for name in ("d.ycalc", "d.json"):
        p = tmp_path / name
        save(str(p), d, {"name": "x"})
        doc = load(str(p))
        assert doc.diagram == d and doc.meta["name"] == "x"
    assert json.loads((tmp_path / "d.json").read_text())
