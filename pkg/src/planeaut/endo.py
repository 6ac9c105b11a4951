"""Plane endomorphisms ``f = (f1, f2)`` and the two factor shapes used by the decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadInput
from .polys import BiPoly, UniPoly
from .scalars import Scalar


@dataclass(frozen=True)
class Point:
    x: Scalar
    y: Scalar


@dataclass(frozen=True)
class PlaneEndo:
    f1: BiPoly
    f2: BiPoly

    @classmethod
    def identity(cls) -> PlaneEndo:
        return cls(BiPoly.X(), BiPoly.Y())

    @classmethod
    def swap(cls) -> PlaneEndo:
        return cls(BiPoly.Y(), BiPoly.X())

    @classmethod
    def parse(cls, text: str) -> PlaneEndo:
        from .grammar import parse_endo

        return parse_endo(text)

    @property
    def degree(self):
        return max(self.f1.degree, self.f2.degree)

    def is_identity(self) -> bool:
        return self == PlaneEndo.identity()

    def compose(self, g: PlaneEndo) -> PlaneEndo:
        """``self ∘ g``."""
        return PlaneEndo(self.f1.compose(g.f1, g.f2), self.f2.compose(g.f1, g.f2))

    def __matmul__(self, g: PlaneEndo) -> PlaneEndo:
        return self.compose(g)

    def __add__(self, g: PlaneEndo) -> PlaneEndo:
        return PlaneEndo(self.f1 + g.f1, self.f2 + g.f2)

    def __sub__(self, g: PlaneEndo) -> PlaneEndo:
        return PlaneEndo(self.f1 - g.f1, self.f2 - g.f2)

    def scale(self, c) -> PlaneEndo:
        return PlaneEndo(self.f1.scale(c), self.f2.scale(c))

    def is_zero(self) -> bool:
        return self.f1.is_zero() and self.f2.is_zero()

    def power(self, n: int) -> PlaneEndo:
        result = PlaneEndo.identity()
        for _ in range(n):
            result = self.compose(result)
        return result

    def __call__(self, p: Point) -> Point:
        return Point(self.f1.evaluate(p.x, p.y), self.f2.evaluate(p.x, p.y))

    def map_coeffs(self, fn) -> PlaneEndo:
        return PlaneEndo(self.f1.map_coeffs(fn), self.f2.map_coeffs(fn))

    def coefficients(self):
        yield from self.f1.coefficients()
        yield from self.f2.coefficients()

    def linear_part(self) -> PlaneEndo:
        return PlaneEndo(self.f1.homogeneous(1), self.f2.homogeneous(1))

    def __str__(self):
        from .grammar import format_endo

        return format_endo(self)


def jacobian_det(f: PlaneEndo) -> BiPoly:
    return f.f1.diff_x() * f.f2.diff_y() - f.f1.diff_y() * f.f2.diff_x()


def jacobian_matrix(f: PlaneEndo) -> list[list[BiPoly]]:
    return [[f.f1.diff_x(), f.f1.diff_y()], [f.f2.diff_x(), f.f2.diff_y()]]


def derivative_at(f: PlaneEndo, p: Point) -> list[list[Scalar]]:
    return [[d.evaluate(p.x, p.y) for d in row] for row in jacobian_matrix(f)]


# ---------------------------------------------------------------------------
# factor shapes


def _det2(m) -> Scalar:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


@dataclass(frozen=True)
class AffineMap:
    """``(m00 X + m01 Y + t0, m10 X + m11 Y + t1)``."""

    matrix: tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
    translation: tuple[Scalar, Scalar] = (Fraction(0), Fraction(0))

    def __post_init__(self):
        m = tuple(tuple(Fraction(c) if isinstance(c, int) else c for c in row) for row in self.matrix)
        t = tuple(Fraction(c) if isinstance(c, int) else c for c in self.translation)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "translation", t)
        if not _det2(m):
            raise BadInput("affine map with singular linear part")

    @classmethod
    def identity(cls) -> AffineMap:
        return cls(((1, 0), (0, 1)))

    @classmethod
    def swap(cls) -> AffineMap:
        return cls(((0, 1), (1, 0)))

    @classmethod
    def translation_by(cls, x, y) -> AffineMap:
        return cls(((1, 0), (0, 1)), (x, y))

    @classmethod
    def from_endo(cls, f: PlaneEndo) -> AffineMap:
        if f.degree > 1:
            raise BadInput("not an affine map")
        m = ((f.f1.coeff(1, 0), f.f1.coeff(0, 1)), (f.f2.coeff(1, 0), f.f2.coeff(0, 1)))
        return cls(m, (f.f1.constant_term(), f.f2.constant_term()))

    @property
    def degree(self) -> int:
        return 1

    @property
    def det(self) -> Scalar:
        return _det2(self.matrix)

    def is_triangular(self) -> bool:
        return not self.matrix[1][0]

    def is_identity(self) -> bool:
        return self == AffineMap.identity()

    def to_endo(self) -> PlaneEndo:
        (a, b), (c, d) = self.matrix
        t0, t1 = self.translation
        return PlaneEndo(
            BiPoly({(1, 0): a, (0, 1): b, (0, 0): t0}),
            BiPoly({(1, 0): c, (0, 1): d, (0, 0): t1}),
        )

    def to_triangular(self) -> TriangularMap:
        (a, e), (_, b) = self.matrix
        t0, t1 = self.translation
        return TriangularMap(a, UniPoly([t0, e], "Y"), b, t1)

    def compose(self, other: AffineMap) -> AffineMap:
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        u, v = other.translation
        t0, t1 = self.translation
        return AffineMap(
            ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h)),
            (a * u + b * v + t0, c * u + d * v + t1),
        )

    def inverse(self) -> AffineMap:
        (a, b), (c, d) = self.matrix
        det = self.det
        inv = ((d / det, -b / det), (-c / det, a / det))
        t0, t1 = self.translation
        return AffineMap(inv, (-(inv[0][0] * t0 + inv[0][1] * t1), -(inv[1][0] * t0 + inv[1][1] * t1)))


@dataclass(frozen=True)
class TriangularMap:
    """``(a X + p(Y), b Y + c)`` with ``a, b`` nonzero."""

    a: Scalar
    p: UniPoly
    b: Scalar
    c: Scalar = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if isinstance(v, int):
                object.__setattr__(self, name, Fraction(v))
        if self.p.var != "Y":
            object.__setattr__(self, "p", self.p.with_var("Y"))
        if not self.a or not self.b:
            raise BadInput("triangular map with a zero diagonal coefficient")

    @classmethod
    def from_endo(cls, f: PlaneEndo) -> TriangularMap | None:
        """Read ``f`` as an upper triangular map, or return ``None``."""
        if any(i or j > 1 for i, j in f.f2.terms):
            return None
        if any(i > 1 or (i == 1 and j) for i, j in f.f1.terms):
            return None
        a, b = f.f1.coeff(1, 0), f.f2.coeff(0, 1)
        if not a or not b:
            return None
        p = UniPoly([f.f1.coeff(0, j) for j in range(max(f.f1.degree_in("Y"), 0) + 1)], "Y")
        return cls(a, p, b, f.f2.constant_term())

    @classmethod
    def diagonal(cls, a, b) -> TriangularMap:
        return cls(a, UniPoly([], "Y"), b, Fraction(0))

    @property
    def degree(self) -> int:
        return max(1, self.p.degree) if self.p else 1

    @property
    def jacobian(self) -> Scalar:
        return self.a * self.b

    def is_affine(self) -> bool:
        return self.degree == 1

    def to_endo(self) -> PlaneEndo:
        return PlaneEndo(BiPoly.monomial(1, 0, self.a) + BiPoly.from_unipoly(self.p, "Y"), BiPoly({(0, 1): self.b, (0, 0): self.c}))

    def to_affine(self) -> AffineMap:
        return AffineMap(((self.a, self.p.coeff(1)), (0, self.b)), (self.p.coeff(0), self.c))

    def compose(self, other: TriangularMap) -> TriangularMap:
        shift = UniPoly([other.c, other.b], "Y")
        return TriangularMap(
            self.a * other.a,
            other.p * self.a + self.p.compose(shift),
            self.b * other.b,
            self.b * other.c + self.c,
        )

    def inverse(self) -> TriangularMap:
        ia, ib = 1 / self.a, 1 / self.b
        back = UniPoly([-self.c * ib, ib], "Y")
        return TriangularMap(ia, self.p.compose(back) * (-ia), ib, -self.c * ib)

    def power(self, n: int) -> TriangularMap:
        result = TriangularMap.diagonal(1, 1)
        base = self
        while n:
            if n & 1:
                result = result.compose(base)
            base = base.compose(base)
            n >>= 1
        return result


def compose(f: PlaneEndo, g: PlaneEndo) -> PlaneEndo:
    return f.compose(g)
