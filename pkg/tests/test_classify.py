from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from conftest import aut
from planeaut.classify import (
    PseudoEigenPair,
    apply_polynomial,
    fixed_locus,
    full_report,
    in_S,
    is_lf,
    is_semisimple,
    is_unipotent,
    iterates,
    lf_by_iterates,
    lf_by_reduction,
    make_pair,
    minimal_polynomial,
    omega_annihilator,
    pseudo_eigenvalues,
    pullback_matrix,
    pullback_spectrum,
    triangularize,
    verify_minimal_polynomial,
)
from planeaut.corpus import CorpusProfile, random_affine, random_triangular, random_word
from planeaut.decomposition import Automorphism, FactorWord
from planeaut.endo import PlaneEndo, Point, TriangularMap
from planeaut.errors import NotLocallyFinite, NotTriangularizable
from planeaut.groebner import quotient_dimension
from planeaut.linalg import KrylovEliminator
from planeaut.polys import BiPoly, UniPoly, is_squarefree
from planeaut.scalars import quad

E = PlaneEndo.parse
T = UniPoly([0, 1])


def lin(r):
    return UniPoly([-r, 1])


def test_is_lf_examples():
    f = aut("(2X+Y^3, 3Y)")
    assert f.endo.compose(f.endo).degree == 3 and is_lf(f)
    h = aut("(Y, X+Y^2)")
    assert h.endo.compose(h.endo).degree == 4 and not is_lf(h)
    assert is_lf(aut("(X, Y)"))


def test_triangularize_examples():
    phi, t = triangularize(aut("(2X, 3Y+X^2)"))
    assert phi.endo == E("(Y, X)")
    assert t.to_endo() == E("(3X+Y^2, 2Y)")
    phi, t = triangularize(aut("(X+Y^3, 2Y+1)"))
    assert phi.endo.is_identity()
    with pytest.raises(NotTriangularizable):
        triangularize(aut("(Y, X+Y^2)"))


def test_triangularize_needs_eigenbasis_for_rotation():
    f = aut("(-Y, X)")
    phi, t = triangularize(f)
    assert {t.a, t.b} == {quad(0, 1, -1), quad(0, -1, -1)}
    assert phi.endo.compose(t.to_endo()).compose(phi.inverse().endo) == f.endo


def test_pseudo_eigenvalue_examples():
    pe = pseudo_eigenvalues(aut("(2X+Y^3, 3Y)"))
    assert pe.as_set() == {2, 3} and pe.trace == 5 and pe.jac == 6
    pe = pseudo_eigenvalues(aut("(X+1, 2Y)"))
    assert pe.as_set() == {1, 2}
    assert fixed_locus(aut("(X+1, 2Y)")).kind == "empty"
    pe = pseudo_eigenvalues(aut("(-Y, X)"))
    assert pe.as_set() == {quad(0, 1, -1), quad(0, -1, -1)} and pe.trace == 0 and pe.jac == 1
    with pytest.raises(NotLocallyFinite):
        pseudo_eigenvalues(aut("(Y, X+Y^2)"))


def test_pair_is_unordered():
    assert make_pair(5, 6) == PseudoEigenPair(5, 6, (Fraction(3), Fraction(2)))


def test_minimal_polynomial_examples():
    assert minimal_polynomial(aut("(X, Y)")) == lin(1)
    assert minimal_polynomial(aut("(2X+Y^3, 3Y)")) == lin(2) * lin(3) * lin(27)
    assert minimal_polynomial(aut("(X+1, 2Y)")) == lin(1) ** 2 * lin(2)
    assert minimal_polynomial(aut("(X+Y^2, Y)")) == lin(1) ** 2
    with pytest.raises(NotLocallyFinite):
        minimal_polynomial(aut("(Y, X+Y^2)"))


def test_semisimple_and_unipotent_examples():
    assert is_semisimple(aut("(2X+Y^3, 3Y)"))
    assert not is_semisimple(aut("(X+1, 2Y)"))
    assert not is_semisimple(aut("(X+Y^2, Y)"))
    assert not is_semisimple(aut("(Y, X+Y^2)"))
    assert is_unipotent(aut("(X+Y^2, Y)"))
    assert is_unipotent(aut("(X, Y)"))
    assert not is_unipotent(aut("(2X, 3Y)"))


def test_fixed_locus_examples():
    loc = fixed_locus(aut("(2X+Y^3, 3Y)"))
    assert loc.kind == "point" and loc.point == Point(0, 0)
    loc = fixed_locus(aut("(X+Y^2, Y)"))
    assert loc.kind == "lines" and loc.count == 1 and loc.equation == BiPoly.Y()
    loc = fixed_locus(aut("(Y, X+Y^2)"), verify_scheme=True)
    assert loc.kind == "scheme" and loc.length == 2
    assert fixed_locus(aut("(X, Y)")).kind == "plane"


def test_fixed_lines_are_fixed_and_transported():
    # conjugate of (X + Y^2 - 1, Y): fixed set is two lines
    phi = aut("(X, Y + X^2)")
    f = phi.conjugate(aut("(X + Y^2 - 1, Y)"))
    loc = fixed_locus(f)
    assert loc.kind == "lines" and loc.count == 2
    h = loc.equation
    # every point of the zero set is fixed: h divides f - id componentwise after substitution along a parametrization
    for s in range(-3, 4):
        x0 = Fraction(s)
        for y0 in (1 + x0 * x0, -1 + x0 * x0):
            p = Point(x0, y0)
            assert h.evaluate(p.x, p.y) == 0
            assert f.endo(p) == p


def test_in_S_examples():
    assert in_S(aut("(2X+Y^3, 3Y)"))
    assert not in_S(aut("(X+1, 2Y)"))
    assert not in_S(aut("(Y, X+Y^2)"))


def test_omega_examples():
    assert omega_annihilator(make_pair(5, 6), 1) == lin(1) * lin(2) * lin(3)
    expected = UniPoly.from_roots([1, 2, 3, 4, 6, 9])
    assert omega_annihilator(make_pair(5, 6), 2) == expected
    assert omega_annihilator(make_pair(2, 1), 4) == lin(1)


def test_omega_rational_for_conjugate_pair():
    p = omega_annihilator(pseudo_eigenvalues(aut("(-Y, X)")), 3)
    assert p.is_rational() and is_squarefree(p)


def test_omega_annihilates_conjugates():
    f = aut("(X, Y + X^2)").conjugate(aut("(2X, 3Y)"))
    p = omega_annihilator(pseudo_eigenvalues(f), 2)
    assert apply_polynomial(p, iterates(f, p.degree)).is_zero()


def test_pullback_examples():
    t = TriangularMap(Fraction(2), UniPoly([0, 0, 0, 1], "Y"), Fraction(3))
    pb = pullback_matrix(t, 3)
    assert pb.basis == [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0)]
    assert pb.diagonal == [1, 3, 9, 27, 2]
    assert pullback_spectrum(TriangularMap.diagonal(2, 3), 1) == [1, 3, 2]
    assert set(pullback_spectrum(TriangularMap.diagonal(1, 1), 4)) == {1}


def test_full_report_examples():
    r = full_report(E("(2X+Y^3, 3Y)"))
    assert r.is_lf and r.is_semisimple and r.conjugacy_class_closed and r.pseudo.as_set() == {2, 3}
    r = full_report(E("(X+Y^2, Y)"))
    assert r.is_lf and r.is_unipotent and not r.is_semisimple and not r.conjugacy_class_closed
    assert r.pseudo.as_set() == {1}
    r = full_report(E("(Y, X+Y^2)"))
    assert not r.is_lf and r.dynamical_degree == 2 and r.fixed_locus.length == 2 and not r.conjugacy_class_closed


# -- oracles and properties ---------------------------------------------------


def coefficient_krylov(f: Automorphism) -> UniPoly:
    """Minimal polynomial from coefficient vectors of explicitly composed iterates."""
    keys = [(k, i, j) for k in range(2) for i in range(f.degree + 1) for j in range(f.degree + 1 - i)]
    elim = KrylovEliminator()
    it = PlaneEndo.identity()
    while True:
        vec = [(it.f1 if k == 0 else it.f2).coeff(i, j) for k, i, j in keys]
        rel = elim.add(vec)
        if rel is not None:
            return UniPoly([-c for c in rel] + [1])
        it = f.endo.compose(it)


def test_orbit_krylov_matches_coefficient_krylov(lf_corpus):
    for s in lf_corpus[:50]:
        f = s.automorphism
        assert minimal_polynomial(f) == coefficient_krylov(f)


def _maximal_proper_divisors(mu: UniPoly):
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(mu.coeffs))
    for fac, _ in sympy.factor_list(expr)[1]:
        q = sympy.quo(expr, fac)
        coeffs = sympy.Poly(q, x).all_coeffs()[::-1]
        yield UniPoly([Fraction(int(c.p), int(c.q)) for c in coeffs]).monic()


def test_minimal_polynomial_annihilates_and_is_minimal(lf_corpus):
    for s in lf_corpus:
        f = s.automorphism
        mu = minimal_polynomial(f)
        its = iterates(f, mu.degree)
        assert apply_polynomial(mu, its).is_zero()
        for d in _maximal_proper_divisors(mu):
            assert not apply_polynomial(d, its[: d.degree + 1]).is_zero()
        assert verify_minimal_polynomial(f, mu)


def test_pseudo_eigenvalues_are_roots_of_mu(lf_corpus):
    for s in lf_corpus:
        f = s.automorphism
        mu = minimal_polynomial(f)
        assert all(mu(r) == 0 for r in pseudo_eigenvalues(f).roots)


def test_lf_criteria_agree(corpus):
    for s in corpus:
        f = s.automorphism
        assert is_lf(f) == lf_by_reduction(f) == lf_by_iterates(f)


def test_conjugation_invariance():
    rng = random.Random(11)
    prof = CorpusProfile(max_degree=9)
    checked = 0
    for _ in range(40):
        t = random_triangular(rng, 3, rng.randint(0, 2))
        f = Automorphism.from_factors([t])
        phi = Automorphism.from_factors(random_word(rng, prof, rng.randint(1, 2)))
        g = phi.conjugate(f)
        if g.degree > 9:
            continue
        checked += 1
        assert pseudo_eigenvalues(g) == pseudo_eigenvalues(f)
        assert g.jacobian == f.jacobian
        assert full_report(g.endo).dynamical_degree == 1
    assert checked >= 20


def test_trace_rule_by_locus_shape(lf_corpus):
    for s in lf_corpus:
        f = s.automorphism
        loc = fixed_locus(f)
        pe = pseudo_eigenvalues(f)
        if loc.kind in ("empty", "lines", "plane"):
            assert pe.trace == 1 + f.jacobian
            assert 1 in pe.as_set()
        else:
            assert 1 not in pe.as_set()


def test_in_S_iff_simple_fixed_point_ideal():
    rng = random.Random(5)
    for _ in range(40):
        t = random_triangular(rng, 3, rng.randint(0, 3))
        a = random_affine(rng, 2)
        f = Automorphism.from_factors([a, t, a.inverse()])
        gens = [f.endo.f1 - BiPoly.X(), f.endo.f2 - BiPoly.Y()]
        assert in_S(f) == (quotient_dimension(gens) == 1)


def _enumerate_spectrum(t: TriangularMap, s: int):
    d = t.degree
    return sorted((t.a**k * t.b**l for k in range(s + 1) for l in range(s + 1) if d * k + l <= s))


def test_pullback_spectrum_matches_enumeration():
    rng = random.Random(3)
    for _ in range(30):
        t = random_triangular(rng, 3, rng.randint(0, 3))
        for s in range(5):
            assert sorted(pullback_spectrum(t, s)) == _enumerate_spectrum(t, s)


def test_report_invariants(corpus):
    for s in corpus[:80]:
        r = full_report(s.automorphism)
        assert r.conjugacy_class_closed == r.is_semisimple
        assert r.in_S == (r.fixed_locus.kind == "point")
        if r.is_unipotent:
            assert r.pseudo.as_set() == {1}
        if not r.is_lf:
            assert r.fixed_locus.kind == "scheme" and r.fixed_locus.length == r.dynamical_degree
