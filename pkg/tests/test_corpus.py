from __future__ import annotations

import random

from planeaut.classify import in_S
from planeaut.corpus import CorpusProfile, generate, random_s_element


def test_generation_is_deterministic():
    a = [str(s.automorphism) for s in generate(7, 20)]
    b = [str(s.automorphism) for s in generate(7, 20)]
    assert a == b
    assert a != [str(s.automorphism) for s in generate(8, 20)]


def test_profile_limits(corpus):
    prof = CorpusProfile()
    assert len(corpus) == 200
    for s in corpus:
        assert len(s.automorphism.word) <= prof.max_factors
        assert s.automorphism.degree <= prof.max_degree
    assert {s.kind for s in corpus} == {"lf", "reduced"}


def test_s_elements_are_in_S():
    rng = random.Random(4)
    assert all(in_S(random_s_element(rng)) for _ in range(20))
