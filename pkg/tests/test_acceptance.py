"""Acceptance criteria 1-10.  Each test prints one ``PASS``/``FAIL`` line."""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from conftest import aut
from planeaut.classify import (
    fixed_locus,
    full_report,
    in_S,
    is_lf,
    is_semisimple,
    iterates,
    apply_polynomial,
    lf_by_iterates,
    lf_by_reduction,
    minimal_polynomial,
    pseudo_eigenvalues,
    pullback_spectrum,
    triangularize,
    verify_minimal_polynomial,
)
from planeaut.corpus import SEMISIMPLE_PAIRS, conjugated_diagonal, generate, random_s_element, random_triangular
from planeaut.decomposition import Automorphism, jvdk_decompose
from planeaut.deformation import closure_witness
from planeaut.endo import PlaneEndo
from planeaut.errors import NotSemisimple
from planeaut.groebner import quotient_dimension
from planeaut.membership import express_fixed_point, hermann_bound
from planeaut.normalform import conjugacy_test_semisimple, diagonalize
from planeaut.polys import BiPoly, UniPoly, is_squarefree

E = PlaneEndo.parse


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        assert ok, detail

    return emit


def lin(r):
    return UniPoly([-r, 1])


def test_criterion_01_lf_equivalence(report):
    start = time.perf_counter()
    is_lf.cache_clear()
    corpus = generate(1, 200)
    agree = sum(is_lf(s.automorphism) == lf_by_reduction(s.automorphism) == lf_by_iterates(s.automorphism, 4) for s in corpus)
    elapsed = time.perf_counter() - start
    report(1, agree == 200 and elapsed < 60, f"three LF tests agree on {agree}/200 corpus elements in {elapsed:.1f} s")


def test_criterion_02_decomposition_round_trip(corpus, report):
    trips = sum(jvdk_decompose(s.automorphism.endo).composite == s.automorphism.endo for s in corpus)
    inverses = 0
    for s in corpus:
        f = s.automorphism
        g = f.inverse()
        inverses += f.endo.compose(g.endo).is_identity() and g.endo.compose(f.endo).is_identity()
    report(2, trips == inverses == 200, f"round trip {trips}/200, inverse {inverses}/200")


def test_criterion_03_triangularization_degree(lf_corpus, report):
    good = 0
    for s in lf_corpus:
        f = s.automorphism
        phi, t = triangularize(f)
        exact = phi.endo.compose(t.to_endo()).compose(phi.inverse().endo) == f.endo
        good += exact and f.degree == max(t.degree, 1) * phi.degree**2
    n = len(lf_corpus)
    report(3, good == n, f"deg f = deg t * (deg phi)^2 on {good}/{n} LF corpus elements")


def test_criterion_04_minimal_polynomial(lf_corpus, report):
    import sympy

    x = sympy.Symbol("x")
    good = 0
    for s in lf_corpus:
        f = s.automorphism
        mu = minimal_polynomial(f)
        its = iterates(f, mu.degree)
        ok = apply_polynomial(mu, its).is_zero() and verify_minimal_polynomial(f, mu)
        expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(mu.coeffs))
        for fac, _ in sympy.factor_list(expr)[1]:
            q = sympy.Poly(sympy.quo(expr, fac), x).all_coeffs()[::-1]
            d = UniPoly([Fraction(int(c.p), int(c.q)) for c in q]).monic()
            ok = ok and not apply_polynomial(d, its[: d.degree + 1]).is_zero()
        good += ok
    examples = (
        minimal_polynomial(aut("(2X+Y^3, 3Y)")) == lin(2) * lin(3) * lin(27)
        and minimal_polynomial(aut("(X+1, 2Y)")) == lin(1) ** 2 * lin(2)
        and minimal_polynomial(aut("(X+Y^2, Y)")) == lin(1) ** 2
    )
    n = len(lf_corpus)
    report(4, good == n and examples, f"mu annihilates and is minimal on {good}/{n}; worked examples {'match' if examples else 'differ'}")


def test_criterion_05_containment_and_truncation(lf_corpus, report):
    good = 0
    for s in lf_corpus:
        mu = minimal_polynomial(s.automorphism)
        good += all(mu(r) == 0 for r in pseudo_eigenvalues(s.automorphism).roots)
    rng = random.Random(5)
    spectra = 0
    for _ in range(50):
        t = random_triangular(rng, 3, rng.randint(0, 3))
        d = t.degree
        spectra += all(
            sorted(pullback_spectrum(t, s))
            == sorted(t.a**k * t.b**l for k in range(s + 1) for l in range(s + 1) if d * k + l <= s)
            for s in range(5)
        )
    n = len(lf_corpus)
    report(5, good == n and spectra == 50, f"pseudo-eigenvalues are roots of mu on {good}/{n}; pullback spectra match on {spectra}/50")


def test_criterion_06_squarefree_iff_diagonalizable(lf_corpus, report):
    good = 0
    for s in lf_corpus:
        f = s.automorphism
        try:
            d = diagonalize(f)
            ok = d.conjugator.degree <= max(f.degree, 1)
            diag = True
        except NotSemisimple:
            ok, diag = True, False
        good += ok and diag == is_squarefree(minimal_polynomial(f))
    n = len(lf_corpus)
    report(6, good == n, f"squarefree mu <=> diagonalizable with deg psi <= deg f on {good}/{n}")


def test_criterion_07_semisimple_conjugacy(report):
    rng = random.Random(7)
    good = positives = 0
    for _ in range(50):
        p, q = rng.choice(SEMISIMPLE_PAIRS), rng.choice(SEMISIMPLE_PAIRS)
        f, g = conjugated_diagonal(rng, *p), conjugated_diagonal(rng, *q)
        psi = conjugacy_test_semisimple(f, g)
        same = sorted(map(Fraction, p)) == sorted(map(Fraction, q))
        ok = (psi is not None) == same
        if psi is not None:
            positives += 1
            ok = ok and psi.endo.compose(g.endo).compose(psi.inverse().endo) == f.endo
        good += ok
    report(7, good == 50, f"verdict matches eigenvalue pairs on {good}/50 ({positives} verified conjugators)")


def _witness_ok(f: Automorphism) -> bool:
    w = closure_witness(f)
    inv = w.conjugator.inverse()
    for t0 in (Fraction(1), Fraction(1, 2)):
        c, ci = w.conjugator.specialize(t0), inv.specialize(t0)
        if w.family.specialize(t0) != c.compose(f.endo).compose(ci):
            return False
    lim = Automorphism.from_endo(w.limit)
    if not (w.limit_semisimple and is_semisimple(lim)):
        return False
    (s_tr, s_jac), (l_tr, l_jac) = w.same_invariants["source"], w.same_invariants["limit"]
    if s_jac != l_jac or lim.jacobian != f.jacobian:
        return False
    if is_lf(f):
        if s_tr != l_tr or pseudo_eigenvalues(lim) != pseudo_eigenvalues(f):
            return False
        if is_semisimple(f):
            in_class = conjugacy_test_semisimple(f, lim) is not None
        else:
            in_class = False  # lim is semisimple, f is not
        return in_class == is_semisimple(f) == w.limit_in_class
    # lim is locally finite and f is not, so they are not conjugate
    return is_lf(lim) and not w.limit_in_class


def test_criterion_08_closure_witnesses(corpus, report):
    good = sum(_witness_ok(s.automorphism) for s in corpus)
    hand = (
        closure_witness(aut("(X+Y, Y)")).limit == E("(X, Y)")
        and closure_witness(aut("(2X+Y^3, 3Y)")).limit == E("(2X, 3Y)")
        and closure_witness(aut("(Y, X+Y^2)")).limit == E("(Y, X)")
    )
    report(8, good == 200 and hand, f"witnesses valid on {good}/200; hand examples {'reproduced' if hand else 'differ'}")


def test_criterion_09_fixed_point_arithmetic(report):
    henon = aut("(Y, X+Y^2)")
    r = full_report(henon)
    qdim = quotient_dimension([henon.endo.f1 - BiPoly.X(), henon.endo.f2 - BiPoly.Y()])
    ok = not r.is_lf and r.dynamical_degree == 2 and r.fixed_locus.length == 2 == qdim
    f = aut("(2X+Y^3, 3Y)")
    loc = fixed_locus(f)
    ok = ok and loc.kind == "point" and (loc.point.x, loc.point.y) == (0, 0) and in_S(f)
    report(9, ok, f"Henon: LF={r.is_lf}, dd={r.dynamical_degree}, scheme length {r.fixed_locus.length}, quotient dim {qdim}; (2X+Y^3, 3Y): {loc.kind} at origin, in_S={in_S(f)}")


def test_criterion_10_membership_bounds(report):
    rng = random.Random(10)
    good, slowest = 0, 0.0
    for _ in range(20):
        f = random_s_element(rng, max_degree=3)
        start = time.perf_counter()
        cx, cy = express_fixed_point(f)
        slowest = max(slowest, time.perf_counter() - start)
        K = hermann_bound(2, f.degree, 2)
        pt = fixed_locus(f).point
        good += (
            f.degree <= 3
            and cx.expand() == BiPoly.X() - pt.x
            and cy.expand() == BiPoly.Y() - pt.y
            and cx.degree <= K
            and cy.degree <= K
        )
    ok = hermann_bound(2, 1, 2) == 17 and good == 20 and slowest < 10
    report(10, ok, f"K_1 = {hermann_bound(2, 1, 2)}; certificates valid on {good}/20 S-elements; slowest {slowest:.2f} s")
