"""Angles as exact rational multiples of pi, with a free-real fallback."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["Angle", "fragment", "as_angle"]

_PI_RE = re.compile(
    r"^\s*(?P<sign>[+-])?\s*(?P<num>\d+)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+))?\s*$"
)
_FRAC_RE = re.compile(r"^\s*(?P<num>[+-]?\d+)\s*(?:/\s*(?P<den>\d+))?\s*$")


@dataclass(frozen=True)
class Angle:
    """An angle ``(numerator/denominator)*pi`` or a free real number of radians.

    Exactly one representation is active: when ``free`` is not ``None`` the
    rational part is ignored and kept at ``0/1``.
    """

    numerator: int = 0
    denominator: int = 1
    free: float | None = None

    def __post_init__(self) -> None:
        if self.free is not None:
            object.__setattr__(self, "free", float(self.free))
            object.__setattr__(self, "numerator", 0)
            object.__setattr__(self, "denominator", 1)
            return
        if self.denominator <= 0:
            if self.denominator == 0:
                raise ValueError("angle denominator must be positive")
            object.__setattr__(self, "numerator", -self.numerator)
            object.__setattr__(self, "denominator", -self.denominator)
        g = math.gcd(self.numerator, self.denominator)
        if g > 1:
            object.__setattr__(self, "numerator", self.numerator // g)
            object.__setattr__(self, "denominator", self.denominator // g)

    # construction -----------------------------------------------------
    @classmethod
    def pi(cls, frac: Fraction | int | str = 1) -> Angle:
        f = Fraction(frac)
        return cls(f.numerator, f.denominator)

    @classmethod
    def radians(cls, x: float) -> Angle:
        return cls(free=x)

    @classmethod
    def parse(cls, text: str) -> Angle:
        """Parse ``"3pi/2"``, ``"-pi/4"``, ``"pi"``, ``"0"`` or a decimal in radians."""
        s = text.strip().replace("π", "pi")
        m = _PI_RE.match(s)
        if m:
            num = int(m.group("num") or 1)
            den = int(m.group("den") or 1)
            if m.group("sign") == "-":
                num = -num
            return cls(num, den)
        m = _FRAC_RE.match(s)
        if m and (m.group("den") is None and m.group("num").lstrip("+-") == "0"):
            return cls(0, 1)
        try:
            return cls(free=float(s))
        except ValueError:
            raise ValueError(f"cannot parse angle {text!r}") from None

    # queries ------------------------------------------------------------
    @property
    def is_free(self) -> bool:
        return self.free is not None

    @property
    def fraction(self) -> Fraction:
        """The multiple of pi; raises for free angles."""
        if self.free is not None:
            raise ValueError("free angle has no exact fraction")
        return Fraction(self.numerator, self.denominator)

    @property
    def value(self) -> float:
        if self.free is not None:
            return self.free
        return self.numerator * math.pi / self.denominator

    def is_multiple_of(self, frac: Fraction | int) -> bool:
        """True when the angle is an integer multiple of ``frac*pi``."""
        if self.free is not None:
            return False
        q = self.fraction / Fraction(frac)
        return q.denominator == 1

    def multiple(self, frac: Fraction | int) -> int:
        """The integer ``k`` with ``self == k*frac*pi``."""
        if not self.is_multiple_of(frac):
            raise ValueError(f"{self} is not a multiple of {Fraction(frac)}*pi")
        return int(self.fraction / Fraction(frac))

    def reduce(self, period: int = 4) -> Angle:
        """Representative in ``[0, period*pi)``."""
        if self.free is not None:
            return Angle(free=math.fmod(self.free, period * math.pi) % (period * math.pi))
        return Angle.pi(self.fraction % period)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other: Angle) -> Angle:
        other = as_angle(other)
        if not isinstance(other, Angle):
            return NotImplemented
        if self.free is None and other.free is None:
            return Angle.pi(self.fraction + other.fraction)
        return Angle(free=self.value + other.value)

    def __sub__(self, other: Angle) -> Angle:
        other = as_angle(other)
        if not isinstance(other, Angle):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> Angle:
        if self.free is not None:
            return Angle(free=-self.free)
        return Angle(-self.numerator, self.denominator)

    def __mul__(self, k: int | Fraction) -> Angle:
        if self.free is not None:
            return Angle(free=self.free * float(k))
        return Angle.pi(self.fraction * Fraction(k))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        if self.free is not None:
            return repr(self.free)
        n, d = self.numerator, self.denominator
        if n == 0:
            return "0"
        head = "-" if n < 0 else ""
        a = abs(n)
        body = "pi" if a == 1 else f"{a}pi"
        return head + body + ("" if d == 1 else f"/{d}")

    def __repr__(self) -> str:
        return f"Angle({self})"


def as_angle(x: Angle | str | int | float | Fraction) -> Angle:
    """Coerce ``x``; ints and Fractions are read as multiples of pi, floats as radians."""
    if isinstance(x, Angle) or hasattr(x, "evaluate"):
        return x  # angles and pattern metavariables pass through
    if isinstance(x, str):
        return Angle.parse(x)
    if isinstance(x, (int, Fraction)):
        return Angle.pi(x)
    return Angle(free=float(x))


def fragment(a: Angle) -> int | str:
    """Smallest ``b`` such that ``a`` is a multiple of ``pi/b``, or ``"free"``."""
    if a.free is not None:
        return "free"
    return a.denominator
