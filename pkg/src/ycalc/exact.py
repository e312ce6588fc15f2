"""Exact scalars of the form ``(a + b*sqrt2 + (c + d*sqrt2)*i) / 2**k``.

Real elements have ``c == d == 0``. The ring is closed under ``+``, ``-`` and
``*`` and contains every entry of the pi/2-fragment generator matrices.
"""

from __future__ import annotations

import cmath
import math
from functools import total_ordering
from typing import Union

__all__ = ["Exact", "SQRT2", "INV_SQRT2", "I", "exact_cos_sin", "exact_phase"]

_Num = Union["Exact", int]


@total_ordering
class Exact:
    __slots__ = ("a", "b", "c", "d", "k")

    def __init__(self, a: int = 0, b: int = 0, c: int = 0, d: int = 0, k: int = 0) -> None:
        while k > 0 and not (a & 1 or b & 1 or c & 1 or d & 1):
            a, b, c, d, k = a >> 1, b >> 1, c >> 1, d >> 1, k - 1
        while k < 0:
            a, b, c, d, k = a << 1, b << 1, c << 1, d << 1, k + 1
        if a == b == c == d == 0:
            k = 0
        self.a, self.b, self.c, self.d, self.k = a, b, c, d, k

    @staticmethod
    def lift(x: _Num) -> Exact:
        if isinstance(x, Exact):
            return x
        if isinstance(x, (int,)) or (hasattr(x, "__index__")):
            return Exact(int(x))
        raise TypeError(f"cannot lift {type(x).__name__} to an exact scalar")

    @property
    def is_real(self) -> bool:
        return self.c == 0 and self.d == 0

    @property
    def real(self) -> Exact:
        return Exact(self.a, self.b, 0, 0, self.k)

    @property
    def imag(self) -> Exact:
        return Exact(self.c, self.d, 0, 0, self.k)

    def conjugate(self) -> Exact:
        return Exact(self.a, self.b, -self.c, -self.d, self.k)

    def _align(self, o: Exact) -> tuple[tuple[int, ...], tuple[int, ...], int]:
        k = max(self.k, o.k)
        s, t = k - self.k, k - o.k
        return (
            (self.a << s, self.b << s, self.c << s, self.d << s),
            (o.a << t, o.b << t, o.c << t, o.d << t),
            k,
        )

    def __add__(self, other: _Num) -> Exact:
        try:
            o = Exact.lift(other)
        except TypeError:
            return NotImplemented
        x, y, k = self._align(o)
        return Exact(x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3], k)

    __radd__ = __add__

    def __neg__(self) -> Exact:
        return Exact(-self.a, -self.b, -self.c, -self.d, self.k)

    def __sub__(self, other: _Num) -> Exact:
        try:
            return self + (-Exact.lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other: _Num) -> Exact:
        return (-self) + other

    def __mul__(self, other: _Num) -> Exact:
        try:
            o = Exact.lift(other)
        except TypeError:
            return NotImplemented
        # (p + q i)(r + s i) with p, q, r, s in Z[sqrt2]
        def zmul(x0: int, x1: int, y0: int, y1: int) -> tuple[int, int]:
            return x0 * y0 + 2 * x1 * y1, x0 * y1 + x1 * y0

        pr = zmul(self.a, self.b, o.a, o.b)
        qs = zmul(self.c, self.d, o.c, o.d)
        ps = zmul(self.a, self.b, o.c, o.d)
        qr = zmul(self.c, self.d, o.a, o.b)
        return Exact(pr[0] - qs[0], pr[1] - qs[1], ps[0] + qr[0], ps[1] + qr[1], self.k + o.k)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Exact)):
            o = Exact.lift(other)
            return (self.a, self.b, self.c, self.d, self.k) == (o.a, o.b, o.c, o.d, o.k)
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __lt__(self, other: _Num) -> bool:
        if not self.is_real:
            raise TypeError("complex exact scalars are unordered")
        return float(self) < float(other)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d, self.k))

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def __float__(self) -> float:
        if not self.is_real:
            raise TypeError("complex exact scalar has no float value")
        return (self.a + self.b * math.sqrt(2)) / 2**self.k

    def __complex__(self) -> complex:
        r2 = math.sqrt(2)
        return complex(self.a + self.b * r2, self.c + self.d * r2) / 2**self.k

    def __abs__(self) -> float:
        return abs(complex(self))

    def __str__(self) -> str:
        def part(x: int, y: int) -> str:
            if y == 0:
                return str(x)
            if x == 0:
                return f"{y}√2"
            return f"{x}{'+' if y > 0 else '-'}{abs(y)}√2"

        body = part(self.a, self.b)
        if not self.is_real:
            im = part(self.c, self.d)
            body = f"{body}+({im})i" if body != "0" else f"({im})i"
        if self.k == 0:
            return body
        return f"{body} / 2^{self.k}"

    def __repr__(self) -> str:
        return f"Exact({self})"


SQRT2 = Exact(0, 1)
INV_SQRT2 = Exact(0, 1, k=1)
I = Exact(0, 0, 1)


def exact_cos_sin(quarter_turns_of_half: int) -> tuple[Exact, Exact]:
    """``(cos(n*pi/4), sin(n*pi/4))`` as exact scalars."""
    n = quarter_turns_of_half % 8
    h = INV_SQRT2
    table = [
        (Exact(1), Exact(0)),
        (h, h),
        (Exact(0), Exact(1)),
        (-h, h),
        (Exact(-1), Exact(0)),
        (-h, -h),
        (Exact(0), Exact(-1)),
        (h, -h),
    ]
    return table[n]


def exact_phase(n: int) -> Exact:
    """``exp(i*n*pi/4)``."""
    c, s = exact_cos_sin(n)
    return c + s * I


def to_complex(x: object) -> complex:
    return complex(x)  # type: ignore[arg-type]


def close(x: Exact, z: complex, tol: float = 1e-12) -> bool:
    return cmath.isclose(complex(x), z, abs_tol=tol)
