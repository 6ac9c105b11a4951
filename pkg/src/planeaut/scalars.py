"""Exact scalars: rationals (``fractions.Fraction``) and elements of Q(sqrt(D)).

Every coefficient in the library is either a ``Fraction`` or a ``QuadExt``.
Arithmetic on a ``QuadExt`` whose irrational part vanishes collapses back to a
``Fraction``, so callers can test ``isinstance(x, Fraction)`` to know whether a
value is rational.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Union

from .errors import IncompatibleField

Scalar = Union[Fraction, "QuadExt"]


def Q(value, den: int = 1) -> Fraction:
    """Shorthand constructor used throughout the tests and corpus."""
    return Fraction(value, den)


@lru_cache(maxsize=4096)
def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, D)`` with ``n == k*k*D`` and ``D`` squarefree (sign kept in D)."""
    if n == 0:
        return 0, 0
    from sympy import factorint

    k, d = 1, (1 if n > 0 else -1)
    for p, e in factorint(abs(n)).items():
        k *= p ** (e // 2)
        if e % 2:
            d *= p
    return k, d


def sqrt_rational(q: Fraction) -> Scalar:
    """Exact square root of a rational, in Q when possible, otherwise in Q(sqrt(D))."""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    n = q.numerator * q.denominator
    k, d = squarefree_split(n)
    if d == 1:
        return Fraction(k, q.denominator)
    return QuadExt(Fraction(0), Fraction(k, q.denominator), d)


def quad(a, b, d: int) -> Scalar:
    """Build ``a + b*sqrt(d)``; collapses to ``Fraction`` when ``b == 0``."""
    b = Fraction(b)
    if b == 0:
        return Fraction(a)
    return QuadExt(Fraction(a), b, d)


class QuadExt:
    """``a + b*sqrt(D)`` with rational ``a, b`` and squarefree ``D != 0, 1``; ``b != 0``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Fraction, b: Fraction, d: int):
        if d in (0, 1):
            raise ValueError("discriminant must be squarefree and different from 0, 1")
        self.a = a
        self.b = b
        self.d = d

    def _coerce(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise IncompatibleField(f"Q(sqrt({self.d})) vs Q(sqrt({other.d}))")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(self.a + o[0], self.b + o[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(self.a - o[0], self.b - o[1], self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return quad(o[0] - self.a, o[1] - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, e = o
        return quad(self.a * c + self.b * e * self.d, self.a * e + self.b * c, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.d)

    def inverse(self) -> QuadExt:
        n = self.norm()
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return QuadExt(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 by construction
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.d})"

    def __str__(self):
        root = f"sqrt({self.d})"
        irr = root if self.b == 1 else f"-{root}" if self.b == -1 else f"{self.b}*{root}"
        if not self.a:
            return irr
        return f"{self.a} - {irr[1:]}" if irr.startswith("-") else f"{self.a} + {irr}"


def field_of(*values) -> int | None:
    """Discriminant of the common field of ``values`` (``None`` for Q)."""
    d = None
    for v in values:
        if isinstance(v, QuadExt):
            if d is not None and d != v.d:
                raise IncompatibleField(f"Q(sqrt({d})) vs Q(sqrt({v.d}))")
            d = v.d
    return d


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def scalar_key(x) -> tuple:
    """Deterministic sort key for scalars (no ordering of C is implied)."""
    if isinstance(x, QuadExt):
        return (1, x.d, x.a, x.b)
    return (0, 0, Fraction(x), Fraction(0))


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def scalar_json(x):
    """JSON form: ``"num/den"`` for rationals, ``[a, b, D]`` for quadratic values."""
    if isinstance(x, QuadExt):
        return [fraction_str(x.a), fraction_str(x.b), x.d]
    return fraction_str(x)


def scalar_from_json(v) -> Scalar:
    if isinstance(v, list):
        a, b, d = v
        return quad(Fraction(a), Fraction(b), int(d))
    return Fraction(v)
