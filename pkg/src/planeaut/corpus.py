"""Deterministic random automorphisms for the property and acceptance suites.

Two kinds of samples are produced from one seeded ``random.Random``:

* ``lf``: ``φ ∘ t ∘ φ⁻¹`` with ``t`` triangular and ``φ`` a word of at most
  two factors;
* ``reduced``: a cyclically reduced core ``A T`` or ``A T A T`` whose first
  affine translation is adjusted so that a chosen rational point is fixed,
  conjugated by at most one further factor.

Factor coefficients have height at most ``height`` (the adjusted translation
excepted) and the composite degree is capped by ``max_degree`` so that the
pure-Python arithmetic stays fast.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .decomposition import Automorphism, FactorWord
from .endo import AffineMap, Point, TriangularMap
from .polys import UniPoly


@dataclass(frozen=True)
class CorpusProfile:
    max_factors: int = 6
    max_triangular_degree: int = 3
    height: int = 3
    max_degree: int = 9
    lf_fraction: float = 0.5


@dataclass(frozen=True)
class Sample:
    index: int
    kind: str
    automorphism: Automorphism


def random_scalar(rng: random.Random, height: int, nonzero: bool = False) -> Fraction:
    while True:
        num = rng.randint(-height, height)
        den = rng.randint(1, height) if rng.random() < 0.25 else 1
        q = Fraction(num, den)
        if q or not nonzero:
            return q


def random_unit(rng: random.Random, height: int) -> Fraction:
    """Diagonal entry biased towards 1 so that eigenvalue-1 cases are common."""
    if rng.random() < 0.4:
        return Fraction(1)
    return random_scalar(rng, height, nonzero=True)


def random_affine(rng: random.Random, height: int, outside_b: bool = True) -> AffineMap:
    while True:
        m = [[random_scalar(rng, height) for _ in range(2)] for _ in range(2)]
        if outside_b and not m[1][0]:
            continue
        if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
            shift = (random_scalar(rng, height), random_scalar(rng, height))
            return AffineMap(((m[0][0], m[0][1]), (m[1][0], m[1][1])), shift)


def random_triangular(rng: random.Random, height: int, degree: int, translate: bool = True) -> TriangularMap:
    """``(aX + p(Y), bY + c)`` with ``deg p = degree`` exactly when ``degree >= 1``."""
    coeffs = [random_scalar(rng, height) for _ in range(degree)]
    if degree >= 1:
        coeffs.append(random_scalar(rng, height, nonzero=True))
    c = random_scalar(rng, height) if translate else Fraction(0)
    return TriangularMap(random_unit(rng, height), UniPoly(coeffs, "Y"), random_unit(rng, height), c)


def random_word(rng: random.Random, profile: CorpusProfile, length: int, start_affine: bool | None = None):
    if start_affine is None:
        start_affine = rng.random() < 0.5
    out = []
    affine = start_affine
    for _ in range(length):
        if affine:
            out.append(random_affine(rng, profile.height))
        else:
            k = rng.randint(2, profile.max_triangular_degree)
            out.append(random_triangular(rng, profile.height, k))
        affine = not affine
    return out


def _inverse_factors(factors):
    return [f.inverse() for f in reversed(factors)]


def random_lf(rng: random.Random, profile: CorpusProfile) -> Automorphism:
    while True:
        k = rng.randint(0, profile.max_triangular_degree)
        t = random_triangular(rng, profile.height, k)
        phi = random_word(rng, profile, rng.randint(0, 2))
        word = FactorWord.build(phi + [t] + _inverse_factors(phi))
        if len(word) <= profile.max_factors and word.degree <= profile.max_degree:
            return Automorphism.from_factors(word.factors)


def pinned_core(rng: random.Random, profile: CorpusProfile, pairs: int) -> list:
    """Alternating core ``A T ... A T`` with a random small rational fixed point."""
    word = random_word(rng, profile, 2 * pairs, start_affine=True)
    rest = FactorWord(tuple(word[1:])).composite
    xi = Point(random_scalar(rng, 1), random_scalar(rng, 1))
    eta = rest(xi)
    (m00, m01), (m10, m11) = word[0].matrix
    shift = (xi.x - m00 * eta.x - m01 * eta.y, xi.y - m10 * eta.x - m11 * eta.y)
    word[0] = AffineMap(word[0].matrix, shift)
    return word


def random_reduced(rng: random.Random, profile: CorpusProfile) -> Automorphism:
    while True:
        pairs = 1 if rng.random() < 0.6 else 2
        core = pinned_core(rng, profile, pairs)
        phi = random_word(rng, profile, rng.randint(0, 1))
        word = FactorWord.build(phi + core + _inverse_factors(phi))
        if len(word) <= profile.max_factors and word.degree <= profile.max_degree:
            return Automorphism.from_factors(word.factors)


def generate(seed: int, count: int, profile: CorpusProfile | None = None) -> list[Sample]:
    profile = profile or CorpusProfile()
    rng = random.Random(seed)
    out = []
    for n in range(count):
        if rng.random() < profile.lf_fraction:
            out.append(Sample(n, "lf", random_lf(rng, profile)))
        else:
            out.append(Sample(n, "reduced", random_reduced(rng, profile)))
    return out


# ---------------------------------------------------------------------------
# targeted generators


SEMISIMPLE_PAIRS = [(2, 3), (3, 2), (-1, 2), (1, 2), (2, 2), (1, -1), (-1, -1), (3, 5), (Fraction(1, 2), 3)]


def conjugated_diagonal(rng: random.Random, a, b, profile: CorpusProfile | None = None) -> Automorphism:
    """``φ ∘ (aX, bY) ∘ φ⁻¹`` with a random short ``φ``."""
    profile = profile or CorpusProfile()
    while True:
        phi = random_word(rng, profile, rng.randint(0, 2))
        d = TriangularMap.diagonal(Fraction(a), Fraction(b))
        word = FactorWord.build(phi + [d] + _inverse_factors(phi))
        if word.degree <= profile.max_degree:
            return Automorphism.from_factors(word.factors)


def random_s_element(rng: random.Random, height: int = 3, max_degree: int = 3) -> Automorphism:
    """``φ ∘ t ∘ φ⁻¹`` with affine ``φ`` and both diagonal entries of ``t`` different from 1."""
    while True:
        t = random_triangular(rng, height, rng.randint(0, max_degree))
        if t.a == 1 or t.b == 1:
            continue
        phi = random_affine(rng, height, outside_b=rng.random() < 0.5)
        return Automorphism.from_factors([phi, t, phi.inverse()])
