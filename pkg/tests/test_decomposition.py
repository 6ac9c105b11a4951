from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import aut
from planeaut.corpus import CorpusProfile, random_word
from planeaut.decomposition import Automorphism, FactorWord, cyclic_reduce, dynamical_degree, jvdk_decompose
from planeaut.endo import AffineMap, PlaneEndo, TriangularMap
from planeaut.errors import NotAnAutomorphism

E = PlaneEndo.parse


def test_conjugated_diagonal_word():
    word = jvdk_decompose(E("(2X, 3Y+X^2)"))
    assert word.kinds() == "ATA"
    tau = AffineMap.swap()
    assert word.factors[0] == tau and word.factors[2] == tau
    assert word.factors[1].to_endo() == E("(3X+Y^2, 2Y)")


def test_triangular_word():
    word = jvdk_decompose(E("(X+Y^2, Y)"))
    assert word.kinds() == "T"
    assert word.composite == E("(X+Y^2, Y)")


def test_not_an_automorphism():
    with pytest.raises(NotAnAutomorphism):
        jvdk_decompose(E("(X^2, Y)"))
    with pytest.raises(NotAnAutomorphism):
        jvdk_decompose(E("(X + Y^2, Y + X^2)"))
    with pytest.raises(NotAnAutomorphism):
        jvdk_decompose(E("(X + Y, 2X + 2Y)"))


def test_invert_examples():
    assert aut("(Y, X+Y^2)").inverse().endo == E("(Y - X^2, X)")
    assert aut("(2X, 3Y)").inverse().endo == E("(1/2*X, 1/3*Y)")
    assert aut("(X, Y)").inverse().endo.is_identity()


def test_identity_word_is_empty():
    assert len(aut("(X, Y)").word) == 0
    assert len(Automorphism.identity().word) == 0


def test_cyclic_reduce_examples():
    conj, red = cyclic_reduce(aut("(Y, X+Y^2)"))
    assert conj.endo.is_identity()
    assert red.kinds() == "AT"
    assert red.factors[0] == AffineMap.swap()
    assert red.factors[1].to_endo() == E("(X+Y^2, Y)")

    f = aut("(2X, 3Y+X^2)")
    conj, red = cyclic_reduce(f)
    assert conj.endo == E("(Y, X)")
    assert [g.to_endo() for g in red] == [E("(3X+Y^2, 2Y)")]
    assert conj.endo.compose(red.composite).compose(conj.inverse().endo) == f.endo

    t = aut("(X+Y^3, 2Y+1)")
    conj, red = cyclic_reduce(t)
    assert conj.endo.is_identity() and red.composite == t.endo


def test_dynamical_degree_examples():
    assert dynamical_degree(aut("(2X+Y^3, 3Y)")) == 1
    h = aut("(Y, X+Y^2)")
    assert dynamical_degree(h) == 2
    assert dynamical_degree(h.compose(h)) == 4


def test_dynamical_degree_oracle():
    """deg g^n = dd^n for the reduced element, n <= 4."""
    for text in ("(Y, X+Y^2)", "(Y+1, X+Y^3-Y)", "(Y, -X+2*Y^2+1)"):
        f = aut(text)
        dd = dynamical_degree(f)
        g = cyclic_reduce(f).reduced.composite
        it = g
        for n in range(1, 5):
            assert it.degree == dd**n
            if n < 4:
                it = g.compose(it)


def test_word_invariants_hold():
    word = jvdk_decompose(E("(Y + 2*(X+Y^2)^3, X + Y^2)"))
    kinds = word.kinds()
    assert all(a != b for a, b in zip(kinds, kinds[1:]))
    for g in word:
        if isinstance(g, AffineMap):
            assert not g.is_triangular()
        else:
            assert g.degree >= 2
    assert word.degree == 6


def _random_words(n, seed):
    rng = random.Random(seed)
    prof = CorpusProfile()
    return [random_word(rng, prof, rng.randint(1, prof.max_factors)) for _ in range(n)]


def test_round_trip_random_words():
    for factors in _random_words(60, 7):
        comp = FactorWord(tuple(factors)).composite
        word = jvdk_decompose(comp)
        assert word.composite == comp
        assert word.degree == comp.degree


def test_normalize_handles_collapsing_neighbours():
    t = TriangularMap(Fraction(1), jvdk_decompose(E("(X+Y^2, Y)")).factors[0].p, Fraction(1), Fraction(0))
    a = AffineMap(((0, 1), (1, 1)))
    f = Automorphism.from_factors([a, t, t.inverse(), a.inverse(), t])
    assert f.endo == t.to_endo()
    assert f.word.kinds() == "T"


def test_corpus_inverse_and_degree(corpus):
    for s in corpus[:60]:
        f = s.automorphism
        g = f.inverse()
        assert g.degree == f.degree
        assert f.endo.compose(g.endo).is_identity()
        assert g.inverse().endo == f.endo


def test_corpus_conjugation_identity(corpus):
    for s in corpus[:60]:
        f = s.automorphism
        conj, red = cyclic_reduce(f)
        assert conj.endo.compose(red.composite).compose(conj.inverse().endo) == f.endo
        if len(red) >= 2:
            assert red.kinds()[0] != red.kinds()[-1] and red.degree >= 2
        elif len(red) == 1 and isinstance(red.factors[0], TriangularMap):
            assert f.degree == red.factors[0].degree * conj.degree**2
