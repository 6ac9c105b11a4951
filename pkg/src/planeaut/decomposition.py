"""Tame (Jung--van der Kulk) factorization into affine and triangular factors.

A ``FactorWord`` lists factors in composition order: ``[F1, ..., Fn]`` stands
for ``F1 ∘ ... ∘ Fn``.  Words are kept alternating: affine factors strictly
outside the triangular group, triangular factors of degree at least 2.  A
factor lying in both groups is folded into a neighbouring triangular factor,
so it can only survive in a word of length one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import prod
from typing import Union

from .endo import AffineMap, PlaneEndo, TriangularMap, jacobian_det
from .errors import NotAnAutomorphism
from .polys import BiPoly, UniPoly

Factor = Union[AffineMap, TriangularMap]


def _is_affine(f: Factor) -> bool:
    return isinstance(f, AffineMap)


def _compose_same(f: Factor, g: Factor) -> Factor:
    return f.compose(g)


def factor_to_endo(f: Factor) -> PlaneEndo:
    return f.to_endo()


def _canonical(f: Factor) -> Factor:
    if isinstance(f, TriangularMap) and f.is_affine():
        return f.to_affine()
    return f


def normalize(factors: list[Factor]) -> list[Factor]:
    """Merge neighbours from the same group and fold overlap factors into triangular ones."""
    word = [_canonical(f) for f in factors]
    changed = True
    while changed:
        changed = False
        out: list[Factor] = []
        for f in word:
            if out and _is_affine(out[-1]) == _is_affine(f):
                out[-1] = _canonical(_compose_same(out[-1], f))
                changed = True
            else:
                out.append(f)
        word = [f for f in out if not (_is_affine(f) and f.is_identity())]
        if changed or len(word) != len(out):
            changed = True
            continue  # merge to a fixed point before folding
        if len(word) > 1:
            for k, f in enumerate(word):
                if _is_affine(f) and f.is_triangular():
                    t = f.to_triangular()
                    if k + 1 < len(word):
                        word[k + 1] = t.compose(word[k + 1])
                    else:
                        word[k - 1] = word[k - 1].compose(t)
                    del word[k]
                    word = [_canonical(g) for g in word]
                    changed = True
                    break
    if len(word) > 1:
        word = _bruhat_pass(word)
    return word


def _bruhat_pass(word: list[Factor]) -> list[Factor]:
    """Push the triangular parts of each affine factor into its triangular neighbours.

    An affine map ``A`` outside the triangular group factors as ``b1 ∘ τ ∘ b2``
    with ``b1, b2`` triangular.  Interior factors become exactly ``τ``; the
    first keeps ``(X + rY, Y) ∘ τ`` and the last keeps ``τ ∘ (X + sY, Y)``.
    """
    swap = AffineMap.swap()
    word = list(word)
    n = len(word)
    for k, f in enumerate(word):
        if not _is_affine(f):
            continue
        (m00, _), (m10, m11) = f.matrix
        if k == 0:
            left = AffineMap(((1, m00 / m10), (0, 1)))
            keep = left.compose(swap)
            b2 = keep.inverse().compose(f)
            word[k + 1] = b2.to_triangular().compose(word[k + 1])
        else:
            right = AffineMap(((1, m11 / m10), (0, 1)))
            b1 = f.compose(right.inverse()).compose(swap)
            word[k - 1] = word[k - 1].compose(b1.to_triangular())
            if k == n - 1:
                keep = swap.compose(right)
            else:
                keep = swap
                word[k + 1] = right.to_triangular().compose(word[k + 1])
        word[k] = keep
    return word


@dataclass(frozen=True)
class FactorWord:
    factors: tuple[Factor, ...]

    @classmethod
    def build(cls, factors) -> FactorWord:
        return cls(tuple(normalize(list(factors))))

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    @cached_property
    def composite(self) -> PlaneEndo:
        result = PlaneEndo.identity()
        for f in reversed(self.factors):
            result = f.to_endo().compose(result)
        return result

    @property
    def triangular_degrees(self) -> list[int]:
        return [f.degree for f in self.factors if isinstance(f, TriangularMap)]

    @property
    def degree(self) -> int:
        return prod(self.triangular_degrees)

    def inverse(self) -> FactorWord:
        return FactorWord(tuple(f.inverse() for f in reversed(self.factors)))

    def kinds(self) -> str:
        return "".join("A" if _is_affine(f) else "T" for f in self.factors)


@dataclass(frozen=True)
class Automorphism:
    endo: PlaneEndo
    word: FactorWord = field(compare=False)

    @classmethod
    def from_endo(cls, f: PlaneEndo) -> Automorphism:
        return cls(f, jvdk_decompose(f))

    @classmethod
    def parse(cls, text: str) -> Automorphism:
        return cls.from_endo(PlaneEndo.parse(text))

    @classmethod
    def from_factors(cls, factors) -> Automorphism:
        w = FactorWord.build(factors)
        return cls(w.composite, w)

    @classmethod
    def identity(cls) -> Automorphism:
        return cls.from_factors([AffineMap.identity()])

    @property
    def degree(self) -> int:
        return self.endo.degree

    @property
    def jacobian(self):
        return jacobian_det(self.endo).constant_term()

    def compose(self, other: Automorphism) -> Automorphism:
        return Automorphism.from_factors(list(self.word) + list(other.word))

    def __matmul__(self, other: Automorphism) -> Automorphism:
        return self.compose(other)

    def conjugate(self, g: Automorphism) -> Automorphism:
        """``self ∘ g ∘ self⁻¹``."""
        return Automorphism.from_factors(list(self.word) + list(g.word) + list(self.word.inverse()))

    def inverse(self) -> Automorphism:
        return invert(self)

    def __str__(self):
        return str(self.endo)


# ---------------------------------------------------------------------------


def _proportional(p: BiPoly, q: BiPoly):
    """Return ``c`` with ``p == c*q`` or ``None``."""
    if not q.terms or set(p.terms) != set(q.terms):
        return None
    e = next(iter(q.terms))
    c = p.terms[e] / q.terms[e]
    if all(p.terms[m] == c * v for m, v in q.terms.items()):
        return c
    return None


def _elementary(c, k: int) -> TriangularMap:
    """``(X + c*Y^k, Y)``."""
    return TriangularMap(1, UniPoly.monomial(k, c, "Y"), 1, 0)


def jvdk_decompose(f: PlaneEndo) -> FactorWord:
    """Alternating factor word composing to ``f``; raises ``NotAnAutomorphism`` otherwise.

    Degree reduction: with ``d1 = deg f1 >= d2 = deg f2`` the leading form of
    ``f1`` must be ``c * lf(f2)^(d1/d2)``; left-composing with
    ``(X - c*Y^k, Y)`` lowers ``deg f1``.  The mirrored move handles
    ``d2 > d1``.  The loop stops at an affine map.
    """
    jac = jacobian_det(f)
    if not jac.is_constant() or jac.is_zero():
        raise NotAnAutomorphism(f"Jacobian determinant {jac} is not a nonzero constant")
    swap = AffineMap.swap()
    left: list[Factor] = []
    g1, g2 = f.f1, f.f2
    while max(g1.degree, g2.degree) > 1:
        d1, d2 = g1.degree, g2.degree
        first = d1 >= d2
        hi, lo = (g1, g2) if first else (g2, g1)
        dh, dl = (d1, d2) if first else (d2, d1)
        if dl < 1 or dh % dl:
            raise NotAnAutomorphism(f"component degrees {d1}, {d2} admit no reduction")
        k = dh // dl
        c = _proportional(hi.leading_form(), lo.leading_form() ** k)
        if c is None:
            raise NotAnAutomorphism("leading forms are not proportional to a power")
        reduced = hi - lo ** k * c
        if first:
            g1 = reduced
            left.append(_elementary(c, k))
        else:
            g2 = reduced
            left.extend([swap, _elementary(c, k), swap])
    g = PlaneEndo(g1, g2)
    try:
        base = AffineMap.from_endo(g)
    except Exception as exc:
        raise NotAnAutomorphism("reduction ended in a singular affine map") from exc
    word = FactorWord.build(left + [base])
    if word.degree != f.degree:
        raise AssertionError(f"word degree {word.degree} != map degree {f.degree}; word not reduced")
    return word


def invert(f: Automorphism) -> Automorphism:
    w = f.word.inverse()
    return Automorphism(w.composite, w)


@dataclass(frozen=True)
class CyclicReduction:
    conjugator: Automorphism
    reduced: FactorWord

    def __iter__(self):
        return iter((self.conjugator, self.reduced))


def cyclic_reduce(f: Automorphism) -> CyclicReduction:
    """Peel matching end factors: ``f = φ ∘ composite(reduced) ∘ φ⁻¹``."""
    word = list(f.word)
    peeled: list[Factor] = []
    while len(word) >= 2 and _is_affine(word[0]) == _is_affine(word[-1]):
        first = word[0]
        peeled.append(first)
        word = normalize(word[1:-1] + [_compose_same(word[-1], first)])
    reduced = FactorWord(tuple(word))
    conj = Automorphism.from_factors(peeled) if peeled else Automorphism.identity()
    return CyclicReduction(conj, reduced)


def dynamical_degree(f: Automorphism):
    from fractions import Fraction

    _, reduced = cyclic_reduce(f)
    if len(reduced) <= 1:
        return Fraction(1)
    return Fraction(reduced.degree)


def automorphism(text_or_endo) -> Automorphism:
    """Convenience: parse text or wrap an endomorphism, certifying invertibility."""
    if isinstance(text_or_endo, Automorphism):
        return text_or_endo
    if isinstance(text_or_endo, str):
        return Automorphism.parse(text_or_endo)
    return Automorphism.from_endo(text_or_endo)
