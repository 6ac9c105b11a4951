"""Sparse bivariate and dense univariate polynomials with exact coefficients.

``BiPoly`` only needs ``+``, ``-``, ``*`` and truthiness from its coefficients,
so the same class carries rational, quadratic and Laurent-in-t coefficients.
``UniPoly`` assumes field coefficients for division, gcd and roots.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Callable, Iterable, Iterator, Mapping

from .errors import BadInput, ZeroPolynomial
from .scalars import QuadExt, field_of, is_rational, sqrt_rational


@total_ordering
class _NegInf:
    """Degree of the zero polynomial; below every integer, absorbing under ``+``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf-degree")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        return self

    __rmul__ = __mul__

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


def _coerce(c):
    return Fraction(c) if isinstance(c, int) else c


class MonomialOrder:
    """Lexicographic order on exponent pairs ``(i, j)`` of ``X^i Y^j`` with X dominant."""

    @staticmethod
    def key(exp: tuple[int, int]) -> tuple[int, int]:
        return exp

    @staticmethod
    def lt(e1: tuple[int, int], e2: tuple[int, int]) -> bool:
        return e1[0] < e2[0] or (e1[0] == e2[0] and e1[1] < e2[1])


# ---------------------------------------------------------------------------
# univariate


class UniPoly:
    """Dense univariate polynomial, coefficients lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "T"):
        cs = [_coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "T") -> UniPoly:
        p = cls([1], var)
        for r in roots:
            p = p * cls([-r, 1], var)
        return p

    @classmethod
    def monomial(cls, n: int, c=1, var: str = "T") -> UniPoly:
        return cls([0] * n + [c], var)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _lift(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self.coeff(k) + o.coeff(k) for k in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UniPoly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, QuadExt)):
            return self == UniPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a scalar or any ring element (e.g. a BiPoly)."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0)
        if isinstance(x, BiPoly) and not isinstance(acc, BiPoly):
            return BiPoly.const(acc)
        return acc

    def compose(self, other: UniPoly) -> UniPoly:
        acc = UniPoly([], self.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        inv = 1 / other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            c = c * inv
            quot[k - dq] = c
            for i, b in enumerate(other.coeffs):
                rem[k - dq + i] = rem[k - dq + i] - c * b
        return UniPoly(quot, self.var), UniPoly(rem[:dq], self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: UniPoly) -> UniPoly:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        inv = 1 / self.lc
        return UniPoly([c * inv for c in self.coeffs], self.var)

    def with_var(self, var: str) -> UniPoly:
        return UniPoly(self.coeffs, var)

    def is_rational(self) -> bool:
        return all(is_rational(c) for c in self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, {self.var!r})"

    def __str__(self):
        from .grammar import format_unipoly

        return format_unipoly(self)


def upoly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd over the common coefficient field (zero only if both inputs are zero)."""
    field_of(*p.coeffs, *q.coeffs)
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


def is_squarefree(p: UniPoly) -> bool:
    if p.is_zero():
        raise ZeroPolynomial("squarefreeness of the zero polynomial")
    return upoly_gcd(p, p.derivative()).degree == 0


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    return p.exact_div(upoly_gcd(p, p.derivative())).monic()


def quadratic_roots(p: UniPoly):
    """Both roots of a monic rational quadratic, in Q or a conjugate pair in Q(sqrt(D))."""
    if p.degree != 2 or p.lc != 1 or not p.is_rational():
        raise BadInput("quadratic_roots expects a monic rational polynomial of degree 2")
    c0, c1 = p.coeff(0), p.coeff(1)
    s = sqrt_rational(c1 * c1 - 4 * c0)
    return (-c1 + s) / 2, (-c1 - s) / 2


# ---------------------------------------------------------------------------
# bivariate


class BiPoly:
    """Sparse polynomial ``sum c_ij X^i Y^j`` stored as ``{(i, j): c}`` without zeros."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[e] = _coerce(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> BiPoly:
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> BiPoly:
        return cls({(i, j): c})

    @classmethod
    def X(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def Y(cls) -> BiPoly:
        return cls({(0, 1): 1})

    @classmethod
    def from_unipoly(cls, p: UniPoly, var: str = "Y") -> BiPoly:
        if var == "Y":
            return cls({(0, k): c for k, c in enumerate(p.coeffs)})
        return cls({(k, 0): c for k, c in enumerate(p.coeffs)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        if not self.terms:
            return NEG_INF
        return max(i + j for i, j in self.terms)

    def degree_in(self, var: str):
        if not self.terms:
            return NEG_INF
        k = 0 if var == "X" else 1
        return max(e[k] for e in self.terms)

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), Fraction(0))

    def constant_term(self):
        return self.terms.get((0, 0), Fraction(0))

    def is_constant(self) -> bool:
        return all(e == (0, 0) for e in self.terms)

    def homogeneous(self, k: int) -> BiPoly:
        return BiPoly._raw({e: c for e, c in self.terms.items() if e[0] + e[1] == k})

    def leading_form(self) -> BiPoly:
        return self.homogeneous(self.degree) if self.terms else self

    def sorted_terms(self) -> list[tuple[tuple[int, int], object]]:
        """Terms in decreasing monomial order."""
        return sorted(self.terms.items(), key=lambda kv: MonomialOrder.key(kv[0]), reverse=True)

    def coefficients(self) -> Iterator:
        return iter(self.terms.values())

    def map_coeffs(self, fn: Callable) -> BiPoly:
        return BiPoly({e: fn(c) for e, c in self.terms.items()})

    def y_coefficients(self) -> dict[int, UniPoly]:
        """View as a polynomial in Y: ``{j: coefficient in Q[X]}``."""
        rows: dict[int, dict[int, object]] = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(j, {})[i] = c
        out = {}
        for j, row in rows.items():
            n = max(row) + 1
            out[j] = UniPoly([row.get(i, 0) for i in range(n)], "X")
        return out

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other) -> BiPoly:
        if isinstance(other, BiPoly):
            return other
        return BiPoly.const(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> BiPoly:
        if not c:
            return BiPoly._raw({})
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if w:
                out[e] = w
        return BiPoly._raw(out)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return self.scale(_coerce(other))
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out: dict = {}
        get = out.get
        for (i1, j1), c1 in small.items():
            for (i2, j2), c2 in big.items():
                e = (i1 + i2, j1 + j2)
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return BiPoly._raw({e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(_coerce(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, QuadExt)):
            return self.terms == BiPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus and substitution ----------------------------------------

    def diff_x(self) -> BiPoly:
        return BiPoly({(i - 1, j): c * i for (i, j), c in self.terms.items() if i})

    def diff_y(self) -> BiPoly:
        return BiPoly({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def compose(self, u, v) -> BiPoly:
        """Substitute ``X -> u``, ``Y -> v`` (``u, v`` BiPoly)."""
        return bipoly_compose(self, u, v)

    def evaluate(self, x, y):
        """Value at a point; Horner in X over cached powers of ``y``."""
        if not self.terms:
            return Fraction(0)
        by_i: dict[int, list] = {}
        for (i, j), c in self.terms.items():
            by_i.setdefault(i, []).append((j, c))
        maxj = max(j for (_, j) in self.terms)
        ypow = [Fraction(1)]
        for _ in range(maxj):
            ypow.append(ypow[-1] * y)
        acc = Fraction(0)
        for i in range(max(by_i), -1, -1):
            acc = acc * x
            for j, c in by_i.get(i, ()):
                acc = acc + c * ypow[j]
        return acc

    def __call__(self, x, y):
        if isinstance(x, BiPoly) or isinstance(y, BiPoly):
            return bipoly_compose(self, self._lift(x), self._lift(y))
        return self.evaluate(x, y)

    def __repr__(self):
        return f"BiPoly({dict(self.sorted_terms())!r})"

    def __str__(self):
        from .grammar import format_poly

        return format_poly(self)


def _all_rational(*polys: BiPoly) -> bool:
    return all(type(c) is Fraction for q in polys for c in q.terms.values())


def _int_scaled(q: BiPoly) -> tuple[dict, int]:
    """``q = Q / den`` with integer coefficients in ``Q``."""
    den = 1
    for c in q.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return {e: c.numerator * (den // c.denominator) for e, c in q.terms.items()}, den


def _int_mul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            e = (i1 + i2, j1 + j2)
            out[e] = get(e, 0) + c1 * c2
    return out


def _int_add_scaled(acc: dict, q: dict, s: int) -> None:
    for e, c in q.items():
        acc[e] = acc.get(e, 0) + c * s


def _compose_rational(p: BiPoly, u: BiPoly, v: BiPoly) -> BiPoly:
    """``p(u, v)`` over the integers after clearing denominators."""
    U, du = _int_scaled(u)
    V, dv = _int_scaled(v)
    P, dp = _int_scaled(p)
    n = max(i for i, _ in P)
    m = max(j for _, j in P)
    rows: dict[int, list] = {}
    for (i, j), c in P.items():
        rows.setdefault(i, []).append((j, c))
    vpow = [{(0, 0): 1}]
    for _ in range(m):
        vpow.append(_int_mul(vpow[-1], V))
    acc: dict = {}
    for i in range(n, -1, -1):
        if acc:
            acc = _int_mul(acc, U)
        row: dict = {}
        for j, c in rows.get(i, ()):
            _int_add_scaled(row, vpow[j], c * dv ** (m - j))
        _int_add_scaled(acc, row, du ** (n - i))
    den = dp * du**n * dv**m
    return BiPoly._raw({e: Fraction(c, den) for e, c in acc.items() if c})


def bipoly_compose(p: BiPoly, u: BiPoly, v: BiPoly) -> BiPoly:
    """Return ``p(u, v)``.

    Horner in ``u`` over the Y-rows of ``p``; powers of ``v`` are cached.
    Rational inputs take an integer fast path.
    """
    if not p.terms:
        return BiPoly._raw({})
    if u.terms and v.terms and _all_rational(p, u, v):
        return _compose_rational(p, u, v)
    rows: dict[int, list] = {}
    for (i, j), c in p.terms.items():
        rows.setdefault(i, []).append((j, c))
    maxj = max(j for (_, j) in p.terms)
    vpow = [BiPoly.const(1)]
    for _ in range(maxj):
        vpow.append(vpow[-1] * v)
    acc = BiPoly._raw({})
    for i in range(max(rows), -1, -1):
        if acc.terms:
            acc = acc * u
        for j, c in rows.get(i, ()):
            acc = acc + vpow[j].scale(c)
    return acc


def _bareiss_det(m: list[list[UniPoly]]) -> UniPoly:
    n = len(m)
    if n == 0:
        return UniPoly([1], "X")
    a = [row[:] for row in m]
    sign = 1
    prev = UniPoly([1], "X")
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return UniPoly([], "X")
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def resultant_y(p: BiPoly, q: BiPoly) -> UniPoly:
    """Resultant with respect to Y (Sylvester determinant via Bareiss), a polynomial in X."""
    if p.is_zero() or q.is_zero():
        return UniPoly([], "X")
    pc, qc = p.y_coefficients(), q.y_coefficients()
    m, n = max(pc), max(qc)
    zero = UniPoly([], "X")
    a = [pc.get(j, zero) for j in range(m, -1, -1)]
    b = [qc.get(j, zero) for j in range(n, -1, -1)]
    size = m + n
    rows = []
    for r in range(n):
        rows.append([zero] * r + a + [zero] * (size - r - len(a)))
    for r in range(m):
        rows.append([zero] * r + b + [zero] * (size - r - len(b)))
    return _bareiss_det(rows).with_var("X")
