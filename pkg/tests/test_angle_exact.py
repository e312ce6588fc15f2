from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ycalc.angle import Angle, as_angle, fragment
from ycalc.exact import Exact, INV_SQRT2, SQRT2, I, exact_cos_sin, exact_phase


@pytest.mark.parametrize(
    "text, frac",
    [("3pi/2", Fraction(3, 2)), ("-pi/4", Fraction(-1, 4)), ("pi", 1), ("0", 0), ("2pi", 2), ("1pi/2", Fraction(1, 2))],
)
def test_parse_rational(text, frac):
    a = Angle.parse(text)
    assert not a.is_free
    assert a.fraction == frac


def test_parse_decimal_is_free():
    a = Angle.parse("0.25")
    assert a.is_free and a.value == 0.25


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Angle.parse("pie")


def test_lowest_terms_and_positive_denominator():
    a = Angle(2, -4)
    assert (a.numerator, a.denominator) == (-1, 2)


def test_free_angle_drops_rational_part():
    a = Angle(3, 4, free=1.5)
    assert (a.numerator, a.denominator, a.free) == (0, 1, 1.5)


def test_fragment():
    assert fragment(Angle.pi(Fraction(3, 4))) == 4
    assert fragment(Angle.pi(1)) == 1
    assert fragment(Angle(free=0.1)) == "free"


def test_as_angle_conventions():
    assert as_angle(1) == Angle.pi(1)
    assert as_angle(0.5) == Angle(free=0.5)
    assert as_angle("pi/2") == Angle.pi(Fraction(1, 2))


@given(st.fractions(), st.fractions())
def test_arithmetic_matches_floats(p, q):
    a, b = Angle.pi(p), Angle.pi(q)
    assert math.isclose((a + b).value, a.value + b.value, abs_tol=1e-9)
    assert math.isclose((a - b).value, a.value - b.value, abs_tol=1e-9)
    assert (-a).value == -a.value


@given(st.fractions(min_value=-20, max_value=20))
def test_reduce_mod_4pi(p):
    r = Angle.pi(p).reduce(4)
    assert 0 <= r.fraction < 4
    assert (r.fraction - p) % 4 == 0


def test_str_round_trip():
    for f in (Fraction(0), Fraction(1), Fraction(-3, 2), Fraction(7, 4)):
        a = Angle.pi(f)
        assert Angle.parse(str(a)) == a


def test_exact_ring_basics():
    assert SQRT2 * SQRT2 == Exact(2)
    assert SQRT2 * INV_SQRT2 == Exact(1)
    assert I * I == Exact(-1)
    assert complex(INV_SQRT2) == pytest.approx(1 / math.sqrt(2))
    assert hash(Exact(2) * INV_SQRT2) == hash(SQRT2)


@pytest.mark.parametrize("n", range(16))
def test_exact_trig_tables(n):
    c, s = exact_cos_sin(n)
    assert float(c) == pytest.approx(math.cos(n * math.pi / 4), abs=1e-14)
    assert float(s) == pytest.approx(math.sin(n * math.pi / 4), abs=1e-14)
    assert complex(exact_phase(n)) == pytest.approx(cmath.exp(1j * n * math.pi / 4), abs=1e-14)


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5), st.integers(0, 4))
def test_exact_matches_complex(a, b, c, d, k):
    x = Exact(a, b, c, d, k)
    y = Exact(b, a, d, c, 1)
    assert complex(x * y) == pytest.approx(complex(x) * complex(y), abs=1e-9)
    assert complex(x + y) == pytest.approx(complex(x) + complex(y), abs=1e-9)
    assert complex(x - y) == pytest.approx(complex(x) - complex(y), abs=1e-9)
