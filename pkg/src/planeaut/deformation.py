"""Conjugation families ``t ↦ φ_t ∘ f ∘ φ_t⁻¹`` over Laurent coefficients and their limits at ``t = 0``.

The closure witness exhibits a semisimple automorphism in the closure of a
conjugacy class:

* locally finite ``f = φ ∘ (aX + p(Y), bY + c) ∘ φ⁻¹``: conjugating the
  triangular part by ``(t^(d+1) X, t Y)``, ``d = max(1, deg p)``, multiplies
  every coefficient of ``p`` and ``c`` by a positive power of ``t``, so the
  limit is ``(aX, bY)``;
* otherwise a fixed point of the cyclically reduced conjugate is moved to the
  origin and ``(t⁻¹X, t⁻¹Y)`` scales the degree-``k`` part by ``t^(k-1)``,
  leaving the linear part in the limit.  A linear part that is a nontrivial
  Jordan block is sent to its diagonal by the weights ``(t⁻²X, t⁻³Y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .classify import is_lf, is_semisimple, pseudo_eigenvalues, triangularize
from .decomposition import Automorphism, cyclic_reduce
from .endo import AffineMap, PlaneEndo, Point
from .errors import NegativeOrder, NonInvertibleFamily, NotAnAutomorphism, UnsupportedExtension
from .polys import BiPoly, UniPoly, quadratic_roots, upoly_gcd
from .scalars import QuadExt, Scalar, is_rational


class LaurentScalar:
    """Finite Laurent polynomial ``sum c_e t^e``; ``by_exponent`` maps ``e`` to ``c_e`` (no zeros)."""

    __slots__ = ("by_exponent",)

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        self.by_exponent = {
            e: Fraction(c) if isinstance(c, int) else c for e, c in (coeffs or {}).items() if c
        }

    @classmethod
    def t_power(cls, e: int, c: Scalar = 1) -> LaurentScalar:
        return cls({e: c})

    @staticmethod
    def _lift(other):
        if isinstance(other, LaurentScalar):
            return other
        if isinstance(other, (int, Fraction, QuadExt)):
            return LaurentScalar({0: other})
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.by_exponent)
        for e, c in o.by_exponent.items():
            out[e] = out[e] + c if e in out else c
        return LaurentScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({e: -c for e, c in self.by_exponent.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.by_exponent.items():
            for e2, c2 in o.by_exponent.items():
                e = e1 + e2
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return LaurentScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(o.by_exponent) != 1:
            raise NonInvertibleFamily("division by a Laurent polynomial with several terms")
        (e, c), = o.by_exponent.items()
        return LaurentScalar({k - e: v / c for k, v in self.by_exponent.items()})

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return LaurentScalar({0: 1}) / self ** (-n)
        result = LaurentScalar({0: 1})
        for _ in range(n):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.by_exponent)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.by_exponent == o.by_exponent

    def __hash__(self):
        if set(self.by_exponent) <= {0}:
            return hash(self.by_exponent.get(0, Fraction(0)))
        return hash(frozenset(self.by_exponent.items()))

    @property
    def order(self) -> int:
        """Lowest exponent present (the zero value has no order)."""
        if not self.by_exponent:
            raise ValueError("order of zero")
        return min(self.by_exponent)

    @property
    def constant(self) -> Scalar:
        return self.by_exponent.get(0, Fraction(0))

    def evaluate(self, t0: Scalar) -> Scalar:
        return sum((c * Fraction(t0) ** e if is_rational(t0) else c * t0**e for e, c in self.by_exponent.items()), Fraction(0))

    def __repr__(self):
        return f"LaurentScalar({self.by_exponent!r})"

    def __str__(self):
        from .grammar import format_poly

        return format_poly(BiPoly({(0, 0): self}))


def _laurent_poly(p: BiPoly) -> BiPoly:
    return BiPoly({e: LaurentScalar._lift(c) for e, c in p.terms.items()})


def _specialize_poly(p: BiPoly, t0) -> BiPoly:
    return BiPoly({e: (c.evaluate(t0) if isinstance(c, LaurentScalar) else c) for e, c in p.terms.items()})


@dataclass(frozen=True)
class FamilyEndo:
    """A pair of polynomials with coefficients in ``K[t, t⁻¹]``.

    ``inverse_family`` is carried along for families built from stock pieces;
    families without it are inverted only when they have the shape
    ``(t^i g1, t^j g2)`` with ``(g1, g2)`` a fixed automorphism.
    """

    f1: BiPoly
    f2: BiPoly
    inverse_family: FamilyEndo | None = field(default=None, compare=False, repr=False)

    @classmethod
    def parse(cls, text: str) -> FamilyEndo:
        from .grammar import parse_family

        return parse_family(text)

    @classmethod
    def constant(cls, f: PlaneEndo | Automorphism) -> FamilyEndo:
        if isinstance(f, Automorphism):
            inv = f.inverse().endo
            return cls(_laurent_poly(f.endo.f1), _laurent_poly(f.endo.f2), cls(_laurent_poly(inv.f1), _laurent_poly(inv.f2)))
        return cls(_laurent_poly(f.f1), _laurent_poly(f.f2))

    @classmethod
    def scaling(cls, i: int, j: int) -> FamilyEndo:
        """``(t^i X, t^j Y)``."""
        inv = cls(BiPoly.monomial(1, 0, LaurentScalar.t_power(-i)), BiPoly.monomial(0, 1, LaurentScalar.t_power(-j)))
        return cls(BiPoly.monomial(1, 0, LaurentScalar.t_power(i)), BiPoly.monomial(0, 1, LaurentScalar.t_power(j)), inv)

    @classmethod
    def identity(cls) -> FamilyEndo:
        return cls.scaling(0, 0)

    def compose(self, other: FamilyEndo | PlaneEndo) -> FamilyEndo:
        """``self ∘ other``; the inverse is tracked when both sides know theirs."""
        if isinstance(other, PlaneEndo):
            other = FamilyEndo.constant(other)
        inv = None
        if self.inverse_family is not None and other.inverse_family is not None:
            a, b = other.inverse_family, self.inverse_family
            inv = FamilyEndo(a.f1.compose(b.f1, b.f2), a.f2.compose(b.f1, b.f2))
        return FamilyEndo(self.f1.compose(other.f1, other.f2), self.f2.compose(other.f1, other.f2), inv)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> FamilyEndo:
        if self.inverse_family is not None:
            return FamilyEndo(self.inverse_family.f1, self.inverse_family.f2, self)
        return _recognize_inverse(self)

    def specialize(self, t0) -> PlaneEndo:
        if not t0:
            raise ValueError("specialization at t = 0 is a limit, use limit_at_zero")
        return PlaneEndo(_specialize_poly(self.f1, t0), _specialize_poly(self.f2, t0))

    def limit(self) -> PlaneEndo:
        return limit_at_zero(self)

    def __str__(self):
        from .grammar import format_endo

        return format_endo(self)


def _single_exponent(p: BiPoly) -> int | None:
    exps = {e for c in p.terms.values() for e in LaurentScalar._lift(c).by_exponent}
    return exps.pop() if len(exps) == 1 else (0 if not exps else None)


def _recognize_inverse(fam: FamilyEndo) -> FamilyEndo:
    e1, e2 = _single_exponent(fam.f1), _single_exponent(fam.f2)
    if e1 is None or e2 is None:
        raise NonInvertibleFamily("family is not of the form (t^i g1, t^j g2)")
    g = PlaneEndo(
        BiPoly({m: LaurentScalar._lift(c).by_exponent[e1] for m, c in fam.f1.terms.items()}),
        BiPoly({m: LaurentScalar._lift(c).by_exponent[e2] for m, c in fam.f2.terms.items()}),
    )
    try:
        aut = Automorphism.from_endo(g)
    except NotAnAutomorphism as exc:
        raise NonInvertibleFamily("t-free part is not an automorphism") from exc
    inner = FamilyEndo.constant(aut.inverse())
    inv = inner.compose(FamilyEndo.scaling(-e1, -e2))
    return FamilyEndo(inv.f1, inv.f2, fam)


def family_conjugate(phi_t: FamilyEndo, f: PlaneEndo | Automorphism) -> FamilyEndo:
    """``t ↦ φ_t ∘ f ∘ φ_t⁻¹``."""
    endo = f.endo if isinstance(f, Automorphism) else f
    inv = phi_t.inverse()
    return phi_t.compose(FamilyEndo.constant(endo)).compose(FamilyEndo(inv.f1, inv.f2))


def scaling_conjugate(g: PlaneEndo, i: int, j: int) -> FamilyEndo:
    """``(t^i X, t^j Y) ∘ g ∘ (t^-i X, t^-j Y)`` computed termwise."""

    def part(p: BiPoly, e: int) -> BiPoly:
        return BiPoly({(a, b): LaurentScalar.t_power(e - i * a - j * b, c) for (a, b), c in p.terms.items()})

    return FamilyEndo(part(g.f1, i), part(g.f2, j))


def limit_at_zero(fam: FamilyEndo) -> PlaneEndo:
    """Coefficientwise constant term; ``NegativeOrder`` if some coefficient has a pole at ``t = 0``."""
    comps = []
    for p in (fam.f1, fam.f2):
        out = {}
        for m, c in p.sorted_terms():
            c = LaurentScalar._lift(c)
            if c.order < 0:
                raise NegativeOrder(m, c.order)
            out[m] = c.constant
        comps.append(BiPoly(out))
    return PlaneEndo(*comps)


# ---------------------------------------------------------------------------
# fixed points of cyclically reduced elements


def _factor_rational(p: UniPoly) -> list[UniPoly]:
    """Irreducible factors over Q, by degree then coefficients."""
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs))
    _, facs = sympy.factor_list(expr, x)
    out = []
    for fac, _mult in facs:
        coeffs = sympy.Poly(fac, x).all_coeffs()[::-1]
        out.append(UniPoly([Fraction(int(c.p), int(c.q)) for c in coeffs], "X").monic())
    return sorted(out, key=lambda u: (u.degree, [tuple((c.numerator, c.denominator)) for c in u.coeffs]))


def _roots_of_factor(u: UniPoly) -> list[Scalar]:
    if u.degree == 1:
        return [-u.coeff(0)]
    if u.degree == 2:
        return list(quadratic_roots(u))
    return []


def _y_poly(p: BiPoly, x0) -> UniPoly:
    coeffs: dict[int, Scalar] = {}
    for (i, j), c in p.terms.items():
        coeffs[j] = coeffs.get(j, Fraction(0)) + c * x0**i
    n = max(coeffs, default=0)
    return UniPoly([coeffs.get(j, Fraction(0)) for j in range(n + 1)], "Y")


def fixed_points_small(g: PlaneEndo) -> list[Point]:
    """Fixed points of ``g`` whose coordinates lie in Q or a single quadratic field; rational ones first."""
    from .polys import resultant_y

    u, v = g.f1 - BiPoly.X(), g.f2 - BiPoly.Y()
    r = resultant_y(u, v)
    if r.is_zero() or r.degree < 1:
        return []
    found: list[Point] = []
    for fac in _factor_rational(r):
        for x0 in _roots_of_factor(fac):
            h = upoly_gcd(_y_poly(u, x0), _y_poly(v, x0))
            ys: list[Scalar] = []
            if h.degree == 1:
                ys = [-h.coeff(0)]
            elif h.degree == 2 and is_rational(x0) and h.is_rational():
                ys = list(quadratic_roots(h))
            for y0 in ys:
                pt = Point(x0, y0)
                if g(pt) == pt:
                    found.append(pt)
    found.sort(key=lambda p: (not (is_rational(p.x) and is_rational(p.y)), _height(p)))
    return found


def _height(p: Point) -> Fraction:
    if is_rational(p.x) and is_rational(p.y):
        return abs(p.x) + abs(p.y)
    return Fraction(0)


# ---------------------------------------------------------------------------
# witness


@dataclass(frozen=True)
class DegenerationWitness:
    """``family = conjugator ∘ f ∘ conjugator⁻¹`` with an existing semisimple limit at ``t = 0``.

    ``same_invariants`` holds ``(trace, jacobian)`` of the source (trace is
    ``None`` when the source is not locally finite) and of the limit.
    """

    family: FamilyEndo
    conjugator: FamilyEndo
    limit: PlaneEndo
    same_invariants: dict
    limit_semisimple: bool
    limit_in_class: bool


def _linear_invariants(lin: PlaneEndo) -> tuple[Scalar, Scalar]:
    m00, m01 = lin.f1.coeff(1, 0), lin.f1.coeff(0, 1)
    m10, m11 = lin.f2.coeff(1, 0), lin.f2.coeff(0, 1)
    return m00 + m11, m00 * m11 - m01 * m10


def _jordan_basis(lin: AffineMap) -> AffineMap | None:
    """Change of basis making a non-scalar linear map with a double eigenvalue upper triangular."""
    (m00, m01), (m10, m11) = lin.matrix
    tr, det = m00 + m11, m00 * m11 - m01 * m10
    if tr * tr - 4 * det != 0 or (m01 == 0 and m10 == 0):
        return None
    if m10 == 0:
        return AffineMap.identity()
    lam = tr / 2
    return AffineMap(((lam - m11, 1), (m10, 0)))


def closure_witness(f: Automorphism) -> DegenerationWitness:
    """Family of conjugates of ``f`` whose limit at ``t = 0`` is semisimple."""
    from .normalform import conjugacy_test_semisimple

    if is_lf(f):
        phi, t = triangularize(f)
        w = t.degree + 1
        family = scaling_conjugate(t.to_endo(), w, 1)
        base = phi.inverse()
        conj = FamilyEndo.scaling(w, 1).compose(FamilyEndo.constant(base))
        pe = pseudo_eigenvalues(f)
        source = (pe.trace, pe.jac)
    else:
        phi, reduced = cyclic_reduce(f)
        g = reduced.composite
        points = fixed_points_small(g)
        if not points:
            raise UnsupportedExtension("no fixed point in Q or a quadratic field")
        xi = points[0]
        shift = AffineMap.translation_by(xi.x, xi.y)
        centred = shift.inverse().to_endo().compose(g).compose(shift.to_endo())
        lin = AffineMap.from_endo(centred.linear_part())
        basis = _jordan_basis(lin)
        weights = (-1, -1)
        if basis is not None:
            centred = basis.inverse().to_endo().compose(centred).compose(basis.to_endo())
            weights = (-2, -3)
        else:
            basis = AffineMap.identity()
        family = scaling_conjugate(centred, *weights)
        base = Automorphism.from_factors([basis.inverse(), shift.inverse()]).compose(phi.inverse())
        conj = FamilyEndo.scaling(*weights).compose(FamilyEndo.constant(base))
        source = (None, f.jacobian)
    limit = limit_at_zero(family)
    limit_aut = Automorphism.from_endo(limit)
    lim_inv = _linear_invariants(limit.linear_part())
    semisimple = is_semisimple(limit_aut)
    in_class = False
    if source[0] is not None and is_semisimple(f):
        in_class = conjugacy_test_semisimple(f, limit_aut) is not None
    return DegenerationWitness(
        family=family,
        conjugator=conj,
        limit=limit,
        same_invariants={"source": source, "limit": lim_inv},
        limit_semisimple=semisimple,
        limit_in_class=in_class,
    )
